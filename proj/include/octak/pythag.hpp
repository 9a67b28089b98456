#ifndef OCTAK_PYTHAG_HPP
#define OCTAK_PYTHAG_HPP

//! Factorization of norm-1 Gaussian rationals: every |x| = 1 element of Q(i)
//! is a power of i times a product of (pi/conj(pi))^e over Gaussian primes pi
//! lying above rational primes p = 1 mod 4. Canonical representative per
//! conjugate pair: pi = a + b*i with a > b > 0.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "norm.hpp"
#include "rational.hpp"

namespace octak {

struct GaussInt {
  Int x, y;  // x + y*i

  GaussInt() : x(0), y(0) {}
  GaussInt(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}

  Int norm() const { return x * x + y * y; }
  GaussInt conj() const { return {x, -y}; }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
  bool is_unit() const { return norm() == 1; }

  bool operator==(const GaussInt& o) const { return x == o.x && y == o.y; }
  bool operator<(const GaussInt& o) const {
    Int nl = norm(), nr = o.norm();
    if (nl != nr) return nl < nr;
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

inline GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
}

//! Exact quotient a/b when b | a in Z[i].
inline std::optional<GaussInt> try_divide(const GaussInt& a, const GaussInt& b) {
  Int n = b.norm();
  if (sgn(n) == 0) throw error("division by zero Gaussian integer");
  GaussInt num = a * b.conj();
  if (!mpz_divisible_p(num.x.get_mpz_t(), n.get_mpz_t())) return std::nullopt;
  if (!mpz_divisible_p(num.y.get_mpz_t(), n.get_mpz_t())) return std::nullopt;
  return GaussInt{num.x / n, num.y / n};
}

inline std::string to_string(const GaussInt& g) {
  Int ay = abs(g.y);
  return g.x.get_str() + (sgn(g.y) < 0 ? "-" : "+") + ay.get_str() + "*i";
}

namespace detail {

//! Trial-division factorization; refuses composite cofactors beyond the
//! trial bound rather than returning partial answers.
inline std::map<Int, long> factor_integer(Int n) {
  if (sgn(n) <= 0) throw error("factor_integer expects a positive integer");
  std::map<Int, long> out;
  auto strip = [&](const Int& p) {
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      ++out[p];
      n /= p;
    }
  };
  strip(Int(2));
  for (Int p = 3; p * p <= n && p < 2000000; p += 2) strip(p);
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
      throw error("cannot factor composite cofactor " + n.get_str());
    ++out[n];
  }
  return out;
}

//! Canonical Gaussian prime a + b*i (a > b > 0) above a rational p = 1 mod 4.
inline GaussInt split_prime_above(const Int& p) {
  for (Int b = 1; b * b * 2 < p; ++b) {
    Int a2 = p - b * b;
    if (is_perfect_square(a2)) {
      Int a;
      mpz_sqrt(a.get_mpz_t(), a2.get_mpz_t());
      if (a > b) return {a, b};
    }
  }
  throw error("no two-square decomposition found for " + p.get_str());
}

struct GaussFactorization {
  int unit_power = 0;                    // i^unit_power, 0..3
  std::map<GaussInt, long> exponents;    // canonical primes only
};

//! Factor a nonzero Gaussian integer over canonical primes: 1+i above 2,
//! inert rational primes p = 3 mod 4, and a+bi / a-bi pairs above p = 1 mod 4
//! (both stored with the a > b > 0 representative first).
inline GaussFactorization factor_gauss(GaussInt g) {
  if (g.is_zero()) throw error("cannot factor zero");
  GaussFactorization out;
  auto nf = factor_integer(g.norm());
  for (const auto& [p, e] : nf) {
    if (p == 2) {
      GaussInt pi(1, 1);
      for (long i = 0; i < e; ++i) {
        auto q = try_divide(g, pi);
        if (!q) throw error("internal: ramified division failed");
        g = *q;
        ++out.exponents[pi];
      }
    } else if (mpz_tstbit(p.get_mpz_t(), 1) != 0) {  // p = 3 mod 4, inert
      if (e % 2 != 0) throw error("internal: odd inert exponent");
      GaussInt pi(p, 0);
      for (long i = 0; i < e / 2; ++i) {
        auto q = try_divide(g, pi);
        if (!q) throw error("internal: inert division failed");
        g = *q;
        ++out.exponents[pi];
      }
    } else {  // p = 1 mod 4, split
      GaussInt pi = split_prime_above(p);
      GaussInt pibar = pi.conj();
      long remaining = e;
      while (remaining > 0) {
        if (auto q = try_divide(g, pi)) {
          g = *q;
          ++out.exponents[pi];
          --remaining;
          continue;
        }
        auto q = try_divide(g, pibar);
        if (!q) throw error("internal: split division failed");
        g = *q;
        ++out.exponents[pibar];
        --remaining;
      }
    }
  }
  if (!g.is_unit()) throw error("internal: non-unit residue after factoring");
  if (g == GaussInt(1, 0)) out.unit_power = 0;
  else if (g == GaussInt(0, 1)) out.unit_power = 1;
  else if (g == GaussInt(-1, 0)) out.unit_power = 2;
  else out.unit_power = 3;
  return out;
}

}  // namespace detail

//! x = unit * prod (pi / conj(pi))^e with |unit| = 1 a fourth root of unity.
struct PythagFactorization {
  FieldElement unit;
  std::vector<std::pair<GaussInt, long>> exponents;  // sorted, all e != 0
};

inline FieldElement gauss_to_field(const GaussInt& g, const FieldDescriptor& f) {
  return FieldElement(f, Rat(g.x), Rat(g.y));
}

//! Multiply out a factorization exactly.
inline FieldElement pythag_recompose(const PythagFactorization& p) {
  FieldElement acc = p.unit;
  const FieldDescriptor& f = acc.field;
  for (const auto& [pi, e] : p.exponents) {
    FieldElement ratio = gauss_to_field(pi, f) / gauss_to_field(pi.conj(), f);
    FieldElement power = fe_one(f);
    for (long i = 0; i < (e < 0 ? -e : e); ++i) power = power * ratio;
    if (e < 0) power = inverse(power);
    acc = acc * power;
  }
  return acc;
}

//! Factor a norm-1 Gaussian element. Exponents are recorded on the canonical
//! a > b > 0 representative of each split conjugate pair; ramified and inert
//! primes always cancel for norm-1 inputs.
inline PythagFactorization pythag_factor(const FieldElement& x) {
  if (x.field.kind != FieldKind::Gaussian)
    throw error("pythag_factor expects an element of Q(i)");
  if (!is_unit_norm(x))
    throw not_unit_norm("pythag_factor expects a norm-1 element, got |x| = " +
                        octak::to_string(norm(x)));

  // x = (p + q*i) / m with integral p, q and positive integral m.
  Int m = lcm(x.a.get_den(), x.b.get_den());
  GaussInt num(x.a.get_num() * (m / x.a.get_den()),
               x.b.get_num() * (m / x.b.get_den()));
  auto fn = detail::factor_gauss(num);
  auto fd = detail::factor_gauss(GaussInt(m, 0));

  std::map<GaussInt, long> all = fn.exponents;
  for (const auto& [pi, e] : fd.exponents) all[pi] -= e;

  PythagFactorization out{fe_one(x.field), {}};
  // |x| = 1 forces the valuations at conjugate split primes to be opposite;
  // the canonical exponent is the valuation at the a > b > 0 representative.
  std::map<GaussInt, std::pair<long, long>> net;  // canon -> (v_pi, v_conj)
  for (const auto& [pi, e] : all) {
    if (e == 0) continue;
    if (sgn(pi.y) == 0 || pi.x == pi.y) {
      // inert prime or 1+i: must cancel for a norm-1 element
      throw error("internal: non-cancelling inert/ramified factor " + to_string(pi));
    }
    bool canonical = pi.y > 0 && pi.x > pi.y;
    if (canonical) net[pi].first += e;
    else net[pi.conj()].second += e;
  }
  for (const auto& [pi, v] : net) {
    if (v.second != -v.first)
      throw error("internal: conjugate valuations do not cancel at " + to_string(pi));
    if (v.first != 0) out.exponents.emplace_back(pi, v.first);
  }
  std::sort(out.exponents.begin(), out.exponents.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  // The leftover after dividing by prod (pi/conj(pi))^e is the unit.
  FieldElement residue = x / pythag_recompose(out);
  bool fourth_root = (abs(residue.a) == 1 && sgn(residue.b) == 0) ||
                     (sgn(residue.a) == 0 && abs(residue.b) == 1);
  if (!fourth_root) throw error("internal: residue is not a fourth root of unity");
  out.unit = residue;
  return out;
}

}  // namespace octak

#endif
