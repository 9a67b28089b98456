// Acceptance gate: thirteen end-to-end checks over the whole library, printed
// one line per check with wall-clock timing. Exit status is 0 only when every
// check passes; checks with a stated time budget also fail when they run over.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "octak/octak.hpp"

namespace {

using namespace octak;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

// ---------------------------------------------------------------------------
// Shared helpers.

unsigned long factorial(size_t n) {
  unsigned long r = 1;
  for (size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Every monomial matrix with entries +-1: one nonzero per row and column.
std::vector<OMatrix> monomial_sign_matrices(const FieldDescriptor& f, size_t n) {
  std::vector<OMatrix> out;
  out.reserve((1ull << n) * factorial(n));
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  do {
    for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
      OMatrix m = OMatrix::zero(f, n, n);
      for (size_t c = 0; c < n; ++c)
        m.set(perm[c], c, (bits >> c) & 1 ? -fe_one(f) : fe_one(f));
      out.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Rat small_rat(std::mt19937& rng, long scale) {
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(3, 6);
  return make_rat(num(rng), den(rng) * scale);
}

// Random rational matrix whose columns satisfy the unit-octahedron bound.
OMatrix random_omatrix(std::mt19937& rng, const FieldDescriptor& f, size_t rows,
                       size_t cols) {
  std::vector<FieldElement> entries;
  entries.reserve(rows * cols);
  for (size_t k = 0; k < rows * cols; ++k)
    entries.push_back(FieldElement{f, small_rat(rng, static_cast<long>(rows)), Rat(0)});
  return OMatrix(f, rows, cols, std::move(entries));
}

CofibCertificate random_cert(std::mt19937& rng, const FieldDescriptor& f,
                             size_t n_from, size_t n_to) {
  std::vector<size_t> rows(n_to);
  std::iota(rows.begin(), rows.end(), size_t{0});
  std::shuffle(rows.begin(), rows.end(), rng);
  rows.resize(n_from);
  CofibCertificate c{f, n_from, n_to, {}, {}};
  for (size_t i = 0; i < n_from; ++i) {
    c.col_to_row.push_back(rows[i]);
    c.units.push_back(rng() % 2 ? fe_one(f) : -fe_one(f));
  }
  return c;
}

GaussInt gpow(const GaussInt& base, long e) {
  GaussInt r{1, 0};
  for (long i = 0; i < e; ++i) r = r * base;
  return r;
}

FieldElement gauss_over(const FieldDescriptor& gi, const GaussInt& num, const Int& den) {
  return FieldElement{gi, Rat(num.x) / Rat(den), Rat(num.y) / Rat(den)};
}

// ---------------------------------------------------------------------------
// The thirteen checks. Each throws Failure with a diagnostic on violation.

void check_census() {
  const FieldDescriptor q = FieldDescriptor::rationals();
  std::vector<CofibCertificate> cofibs = enumerate_cofibs(q, 1, 2);
  require(cofibs.size() == 4,
          "expected 4 inclusions, got " + std::to_string(cofibs.size()));
  std::set<std::pair<size_t, int>> seen;
  for (const CofibCertificate& c : cofibs) {
    auto res = is_cofibration(cert_to_matrix(c));
    const auto* cert = std::get_if<CofibCertificate>(&res);
    require(cert != nullptr, "an enumerated inclusion failed re-certification");
    require(cert->col_to_row == c.col_to_row && cert->units == c.units,
            "re-certification disagrees with the enumerated certificate");
    require(c.col_to_row.size() == 1, "wrong shape");
    seen.emplace(c.col_to_row[0], c.units[0] == fe_one(q) ? 1 : -1);
  }
  require(seen.size() == 4, "the four inclusions are not pairwise distinct");
}

void check_split_mono_refusal() {
  const FieldDescriptor q = FieldDescriptor::rationals();
  FieldElement half{q, make_rat(1, 2), Rat(0)};
  OMatrix m(q, 2, 1, {half, half});
  require(is_monomorphism(m), "the averaging column must be injective");

  // It is even a split mono: the all-ones row retracts it onto O(1).
  OMatrix r(q, 1, 2, {fe_one(q), fe_one(q)});
  require(r * m == OMatrix::identity(q, 1), "retraction r.m = id failed");

  auto res = is_cofibration(m);
  const auto* ref = std::get_if<CofibRefusal>(&res);
  require(ref != nullptr, "the averaging column must be refused");
  require(ref->kind == CofibRefusal::Kind::NonUnitEntry,
          "refusal kind should be NonUnitEntry, got " + refusal_kind_name(ref->kind));
  require(ref->row == 0 && ref->col == 0, "refusal should point at entry (0,0)");
  require(ref->message.find("1/2") != std::string::npos,
          "refusal message must name the non-unit entry value");
}

void check_splitting_uniqueness() {
  const FieldDescriptor q = FieldDescriptor::rationals();
  long covered = 0;
  for (size_t n = 0; n <= 4; ++n) {
    std::vector<OMatrix> candidates = monomial_sign_matrices(q, n);
    require(candidates.size() == (1ull << n) * factorial(n),
            "candidate generator miscounted");
    for (size_t k = 0; k <= n; ++k) {
      for (const CofibCertificate& c : enumerate_cofibs(q, k, n)) {
        OMatrix iota = cert_to_matrix(c);
        OMatrix incl = OMatrix::zero(q, n, k);
        for (size_t i = 0; i < k; ++i) incl.set(i, i, fe_one(q));
        CokernelData ck = cokernel(c);
        auto straightens = [&](const OMatrix& phi) {
          if (!(phi * iota == incl)) return false;
          for (size_t row = 0; row < ck.rank; ++row)
            for (size_t j = 0; j < n; ++j)
              if (!(phi.at(k + row, j) == ck.projection.at(row, j))) return false;
          return true;
        };
        OMatrix phi = splitting_iso(c);
        require(is_automorphism(phi).has_value(),
                "splitting iso is not an automorphism");
        require(straightens(phi), "splitting iso fails its straightening equations");
        size_t matches = 0;
        for (const OMatrix& cand : candidates)
          if (straightens(cand)) {
            ++matches;
            require(cand == phi, "a second straightening automorphism exists");
          }
        require(matches == 1, "expected exactly one straightening automorphism, got " +
                                  std::to_string(matches));
        ++covered;
      }
    }
  }
  require(covered == 729, "expected to cover 729 inclusions, covered " +
                              std::to_string(covered));
}

void check_cobase_change() {
  const FieldDescriptor q = FieldDescriptor::rationals();
  std::mt19937 rng(20260815u);
  for (int t = 0; t < 1000; ++t) {
    std::uniform_int_distribution<size_t> to(1, 5);
    size_t n_to = to(rng);
    std::uniform_int_distribution<size_t> from(1, n_to);
    size_t n_from = from(rng);
    std::uniform_int_distribution<size_t> mdist(1, 5);
    size_t m = mdist(rng);

    CofibCertificate iota = random_cert(rng, q, n_from, n_to);
    OMatrix f = random_omatrix(rng, q, m, n_from);
    PushoutData out = pushout(iota, f);

    auto res = is_cofibration(cert_to_matrix(out.cofib));
    const auto* cert = std::get_if<CofibCertificate>(&res);
    require(cert != nullptr, "pushed-out inclusion failed certification at trial " +
                                 std::to_string(t));
    require(cokernel(out.cofib).rank == cokernel(iota).rank,
            "cokernel rank changed under cobase change at trial " + std::to_string(t));
    require(out.attach * cert_to_matrix(iota) == cert_to_matrix(out.cofib) * f,
            "pushout square does not commute at trial " + std::to_string(t));
  }
}

void check_abelianization() {
  AbGroupDescriptor expected = ab_sum(ab_cyclic(Int(2)), ab_cyclic(Int(2)));
  for (size_t n = 2; n <= 5; ++n) {
    AbGroupDescriptor got = brute_abelianization(n, 2);
    require(got == expected,
            "abelianization at rank " + std::to_string(n) + " is " + to_string(got));
  }
}

void check_perfect_derived() {
  std::vector<WreathElement> g5 = enumerate_group(2, 5);
  require(g5.size() == 3840, "ambient group order should be 3840, got " +
                                 std::to_string(g5.size()));
  std::vector<WreathElement> h = derived_subgroup(g5);
  require(h.size() == 960, "derived subgroup order should be 960, got " +
                               std::to_string(h.size()));
  std::vector<WreathElement> hh = derived_subgroup(h);
  require(hh == h, "the derived subgroup is not perfect");
}

void check_commutator_table() {
  for (unsigned w : {2u, 4u})
    for (size_t n : {size_t{5}, size_t{6}}) {
      std::vector<CommutatorCaseReport> reports = commutator_table_check(n, w);
      require(reports.size() == 6, "expected six displacement buckets");
      std::set<long> deltas;
      size_t total = 0;
      for (const CommutatorCaseReport& r : reports) {
        require(r.mismatches == 0,
                "closed form mismatch in bucket " + std::to_string(r.delta) +
                    " at n=" + std::to_string(n) + " w=" + std::to_string(w));
        require(r.checked > 0, "empty bucket " + std::to_string(r.delta));
        deltas.insert(r.delta);
        total += r.checked;
      }
      require(deltas == std::set<long>{-2, -1, 0, 1, 2, 3},
              "bucket labels are not the six clamped displacements");
      require(total == (n - 2) * (n - 1) * (w - 1),
              "coverage should be (n-2)(n-1)(w-1), got " + std::to_string(total));
    }
}

void check_trivial_class_group() {
  K0FInfinityResult r = k0_f_infinity();
  require(r.relations.size() == 2, "expected two defining relations");
  const K0Relation& a = r.relations[0];
  require(a.witness.ok, "first relation witness failed: " + a.witness.failure);
  require(a.sub.size() == 3 && a.mid.size() == 5 && a.quot.size() == 3,
          "first relation carriers should have sizes 3, 5, 3");
  const K0Relation& b = r.relations[1];
  require(b.witness.ok, "second relation witness failed: " + b.witness.failure);
  require(b.sub.size() == 5 && b.mid.size() == 9 && b.quot.size() == 3,
          "second relation carriers should have sizes 5, 9, 3");
  require(r.identity_trace.rank_one_count == 2,
          "rank-two free module should peel into exactly two rank-one summands");
  require(r.group.is_trivial(), "class group should vanish, got " + to_string(r.group));
}

void check_projector_image() {
  FaceModule img = module_image(standard_p_pattern());
  require(img.ambient == 2, "image lives in the rank-2 face lattice");
  std::set<Face> expected;
  for (const char* s : {"00", "0+", "0-", "++", "--"}) expected.insert(parse_face(s));
  require(img.faces == expected, "projector image should be the five expected faces");
}

void check_spectral_page() {
  SpectralPage page = ah_e2_page(2, 2, 2);
  const AbGroupDescriptor z = ab_free(1);
  const AbGroupDescriptor z2 = ab_cyclic(Int(2));
  require(page.at(0, 0) == z, "entry (0,0) should be Z");
  require(page.at(1, 0) == z2, "entry (1,0) should be Z/2");
  require(page.at(2, 0) == ab_trivial(), "entry (2,0) should vanish");
  for (size_t qq : {size_t{1}, size_t{2}})
    for (size_t p = 0; p <= 2; ++p)
      require(page.at(p, qq) == z2, "entry (" + std::to_string(p) + "," +
                                        std::to_string(qq) + ") should be Z/2");
}

void check_first_k_groups() {
  AbGroupDescriptor k1q = k_group(FieldDescriptor::rationals(), 1);
  AbGroupDescriptor expected_q = ab_sum(ab_cyclic(Int(2)), ab_cyclic(Int(2)));
  require(k1q == expected_q, "degree-1 group over the rationals is " + to_string(k1q));

  AbGroupDescriptor k1qi = k_group(FieldDescriptor::gaussian(), 1);
  AbGroupDescriptor expected_qi = ab_sum(ab_cyclic(Int(2)), ab_cyclic(Int(4)));
  expected_qi.free_rank = kOmega;
  require(k1qi == expected_qi,
          "degree-1 group over the Gaussian field is " + to_string(k1qi));
}

void check_pythagorean_roundtrip() {
  const FieldDescriptor gi = FieldDescriptor::gaussian();
  const long primes[] = {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97};
  std::vector<GaussInt> pis;
  for (long p : primes) pis.push_back(detail::split_prime_above(Int(p)));

  auto run_case = [&](unsigned u, const std::vector<std::pair<size_t, long>>& exps,
                      const char* label) {
    GaussInt num = gpow(GaussInt{0, 1}, u);
    Int den = 1;
    std::vector<std::pair<GaussInt, long>> expected;
    for (auto [idx, e] : exps) {
      long a = e > 0 ? e : -e;
      GaussInt pi = e > 0 ? pis[idx] : pis[idx].conj();
      num = num * gpow(pi, 2 * a);
      for (long i = 0; i < a; ++i) den *= Int(primes[idx]);
      expected.emplace_back(pis[idx], e);
    }
    FieldElement x = gauss_over(gi, num, den);
    PythagFactorization pf = pythag_factor(x);
    require(pythag_recompose(pf) == x, std::string("round-trip failed for ") + label);
    require(pf.unit == gauss_over(gi, gpow(GaussInt{0, 1}, u), Int(1)),
            std::string("unit part mismatch for ") + label);
    require(pf.exponents == expected,
            std::string("exponent list mismatch for ") + label);
  };

  // The pinned example (3+4i)/5 = (2+i)/(2-i): exponent +1 at the prime over 5.
  run_case(0, {{0, 1}}, "(3+4i)/5");
  {
    FieldElement x{gi, make_rat(3, 5), make_rat(4, 5)};
    PythagFactorization pf = pythag_factor(x);
    require(pf.exponents.size() == 1 && pf.exponents[0].first == GaussInt{2, 1} &&
                pf.exponents[0].second == 1,
            "(3+4i)/5 should factor as the prime 2+i with exponent +1");
  }

  std::mt19937 rng(4096u);
  for (int t = 1; t < 50; ++t) {
    unsigned u = static_cast<unsigned>(rng() % 4);
    size_t npr = 1 + rng() % 3;
    std::vector<size_t> idx(pis.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(npr);
    std::sort(idx.begin(), idx.end());
    std::vector<std::pair<size_t, long>> exps;
    for (size_t i : idx) {
      long mags[] = {-2, -1, 1, 2};
      exps.emplace_back(i, mags[rng() % 4]);
    }
    run_case(u, exps, ("trial " + std::to_string(t)).c_str());
  }
}

void check_staircase_counts() {
  Int headline = 0;
  for (unsigned w : {2u, 4u})
    for (size_t deg = 0; deg <= 3; ++deg) {
      SObjectCensus c = enumerate_s_objects(w, deg, 3);
      require(c.module_count == c.eset_count,
              "module/pointed-set counts differ at w=" + std::to_string(w) +
                  " degree=" + std::to_string(deg) + ": " + c.module_count.get_str() +
                  " vs " + c.eset_count.get_str());
      if (w == 2 && deg == 1)
        require(c.module_count == Int(4), "degree-1 count should be rank_max + 1");
      if (w == 4 && deg == 3) headline = c.module_count;
    }
  require(headline == Int(194684),
          "degree-3 census over the four-element unit group should be 194684, got " +
              headline.get_str());
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* what;
  double budget_s;  // 0 = no stated wall-clock budget
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "rank-1 into rank-2 inclusion census over Q has exactly 4 members", 1.0,
       check_census},
      {2, "averaging column is a split mono yet refused, naming the non-unit entry",
       0.0, check_split_mono_refusal},
      {3, "splitting automorphism is the unique monomial straightening through rank 4",
       30.0, check_splitting_uniqueness},
      {4, "1000 random cobase changes stay certified with the same cokernel rank",
       30.0, check_cobase_change},
      {5, "signed-permutation group abelianizations equal Z/2 + Z/2 for ranks 2..5",
       120.0, check_abelianization},
      {6, "derived subgroup at rank 5 has order 960 and is perfect", 300.0,
       check_perfect_derived},
      {7, "commutator closed forms hold in all six displacement buckets at ranks 5, 6",
       0.0, check_commutator_table},
      {8, "residue class group is trivial, witnessed by both defining relations", 1.0,
       check_trivial_class_group},
      {9, "standard projector image consists of exactly the five expected faces", 0.0,
       check_projector_image},
      {10, "unit-group spectral table matches the hand-computed page entry-by-entry",
       0.0, check_spectral_page},
      {11, "degree-1 groups: Z/2 + Z/2 over Q and Z^w + Z/2 + Z/4 over Q(i)", 0.0,
       check_first_k_groups},
      {12, "norm-one Gaussian factorization round-trips 50 split-prime products", 0.0,
       check_pythagorean_roundtrip},
      {13, "staircase counts over free modules match pointed-set counts to degree 3",
       60.0, check_staircase_counts},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string diagnostic;
    try {
      c.body();
    } catch (const std::exception& e) {
      diagnostic = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool over_budget = c.budget_s > 0 && dt > c.budget_s;
    if (diagnostic.empty() && !over_budget) {
      std::printf("criterion %2d: PASS (%.2f s) — %s\n", c.id, dt, c.what);
    } else {
      ++failed;
      std::printf("criterion %2d: FAIL (%.2f s) — %s", c.id, dt, c.what);
      if (!diagnostic.empty()) std::printf(" [%s]", diagnostic.c_str());
      if (over_budget) std::printf(" [exceeded the %.0f s budget]", c.budget_s);
      std::printf("\n");
    }
    std::fflush(stdout);
  }

  if (failed == 0)
    std::printf("acceptance: all 13 criteria passed\n");
  else
    std::printf("acceptance: %d of 13 criteria FAILED\n", failed);
  return failed == 0 ? 0 : 1;
}
