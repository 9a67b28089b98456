#include <catch_amalgamated.hpp>

#include <random>

#include "octak/rational.hpp"

using namespace octak;

TEST_CASE("make_rat canonicalizes") {
  CHECK(make_rat(2, 4) == make_rat(1, 2));
  CHECK(make_rat(-3, -6) == make_rat(1, 2));
  CHECK(make_rat(0, 7) == Rat(0));
  CHECK(sign(make_rat(-1, 3)) == -1);
  CHECK(sign(make_rat(0)) == 0);
  CHECK(sign(make_rat(5, 2)) == 1);
}

TEST_CASE("parse_rational_at consumes tokens and reports positions") {
  size_t pos = 0;
  CHECK(parse_rational_at("3", pos, 1) == Rat(3));
  CHECK(pos == 1);

  pos = 0;
  CHECK(parse_rational_at("-7/2", pos, 1) == make_rat(-7, 2));
  CHECK(pos == 4);

  pos = 0;
  CHECK(parse_rational_at("+4/6 rest", pos, 1) == make_rat(2, 3));
  CHECK(pos == 4);  // stops before the space

  pos = 2;
  CHECK(parse_rational_at("ab12/5", pos, 1) == make_rat(12, 5));
  CHECK(pos == 6);
}

TEST_CASE("parse_rational_at failures carry 1-based columns") {
  size_t pos = 0;
  CHECK_THROWS_AS(parse_rational_at("", pos, 1), parse_error);

  pos = 0;
  try {
    parse_rational_at("x", pos, 3);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 3);
    CHECK(e.col == 1);
  }

  pos = 0;
  try {
    parse_rational_at("1/", pos, 1);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.col == 3);
  }

  pos = 0;
  CHECK_THROWS_AS(parse_rational_at("1/0", pos, 1), parse_error);
}

TEST_CASE("rat_to_string canonical form roundtrips through the parser") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> nums(-500, 500);
  std::uniform_int_distribution<long> dens(1, 500);
  for (int k = 0; k < 200; ++k) {
    Rat q = make_rat(nums(rng), dens(rng));
    std::string s = rat_to_string(q);
    size_t pos = 0;
    CHECK(parse_rational_at(s, pos, 1) == q);
    CHECK(pos == s.size());
  }
  CHECK(rat_to_string(make_rat(4, 2)) == "2");
  CHECK(rat_to_string(make_rat(-1, 2)) == "-1/2");
}

TEST_CASE("perfect squares and exact square roots") {
  CHECK(is_perfect_square(Int(0)));
  CHECK(is_perfect_square(Int(144)));
  CHECK_FALSE(is_perfect_square(Int(2)));
  CHECK_FALSE(is_perfect_square(Int(-4)));

  CHECK(exact_sqrt(make_rat(9, 4)) == make_rat(3, 2));
  CHECK(exact_sqrt(Rat(0)) == Rat(0));
  CHECK_FALSE(exact_sqrt(make_rat(2)).has_value());
  CHECK_FALSE(exact_sqrt(make_rat(1, 3)).has_value());
  CHECK_FALSE(exact_sqrt(make_rat(-9, 4)).has_value());

  // squares of random rationals always come back exactly
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> nums(0, 300);
  std::uniform_int_distribution<long> dens(1, 300);
  for (int k = 0; k < 100; ++k) {
    Rat r = make_rat(nums(rng), dens(rng));
    CHECK(exact_sqrt(r * r) == r);
  }
}

TEST_CASE("sqrt enclosures bracket the root within the promised width") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> nums(1, 10000);
  std::uniform_int_distribution<long> dens(1, 10000);
  for (unsigned long bits : {8ul, 32ul, 128ul}) {
    for (int k = 0; k < 50; ++k) {
      Rat q = make_rat(nums(rng), dens(rng));
      auto [lo, hi] = sqrt_enclosure(q, bits);
      CHECK(lo * lo <= q);
      CHECK(hi * hi >= q);
      CHECK(hi - lo <= Rat(Int(1), Int(1) << bits));
      CHECK(lo >= 0);
    }
  }
  auto [zl, zh] = sqrt_enclosure(Rat(0), 16);
  CHECK(zl == 0);
  CHECK(zh == 0);
  CHECK_THROWS_AS(sqrt_enclosure(Rat(-1), 16), error);
}

TEST_CASE("sqrt enclosure is exact on perfect squares at the low end") {
  auto [lo, hi] = sqrt_enclosure(make_rat(9, 4), 64);
  CHECK(lo == make_rat(3, 2));
  CHECK(hi - lo == Rat(Int(1), Int(4) << 64));
}

TEST_CASE("magnitude_bits matches floor(log2)+1") {
  CHECK(magnitude_bits(Rat(0)) == 0);
  CHECK(magnitude_bits(Rat(1)) == 1);
  CHECK(magnitude_bits(Rat(2)) == 2);
  CHECK(magnitude_bits(Rat(-8)) == 4);
  CHECK(magnitude_bits(make_rat(1, 2)) == 0);
}
