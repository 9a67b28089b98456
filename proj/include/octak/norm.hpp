#ifndef OCTAK_NORM_HPP
#define OCTAK_NORM_HPP

//! Archimedean absolute values and exact comparisons of sums of them.
//!
//! For rational and real-quadratic elements the absolute value lives in the
//! real field itself and is stored as q0 + q1*sqrt(d). For Gaussian elements
//! it is sqrt of a rational. Sums of such values are compared exactly:
//! rational/quadratic sums by sign tests, square-root sums by square-class
//! grouping (equality) plus adaptive dyadic interval refinement bounded by a
//! conjugate-product separation bound (strict order). No floating point.

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "rational.hpp"

namespace octak {

enum class Ordering { LT, EQ, GT };

inline std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::LT: return "LT";
    case Ordering::EQ: return "EQ";
    case Ordering::GT: return "GT";
  }
  return "?";
}

//! Default bit cap for interval refinement; override per call or via the
//! OCTAK_MAX_BITS environment variable.
inline unsigned long default_precision_cap() {
  if (const char* env = std::getenv("OCTAK_MAX_BITS")) {
    long v = std::atol(env);
    if (v >= 8) return static_cast<unsigned long>(v);
  }
  return 4096;
}

//! Exact sign of A + B*sqrt(d) (sqrt(d) the positive real root, d > 1 not a
//! square): compare A^2 against B^2*d when the terms compete.
inline int sign_of_quadratic(const Rat& A, const Rat& B, long d) {
  int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rat a2 = A * A, b2d = B * B * Rat(d);
  if (a2 == b2d) throw error("sign_of_quadratic: d is a perfect square");
  bool a_dominates = a2 > b2d;
  return a_dominates ? sa : sb;
}

//! A nonnegative real algebraic value of degree <= 2 over Q.
struct NormValue {
  enum class Kind { Exact, SqrtRational };
  Kind kind = Kind::Exact;
  // Exact: value = q0 + q1*sqrt(d); d = 0 iff q1 = 0 (plain rational).
  Rat q0, q1;
  long d = 0;
  // SqrtRational: value = sqrt(radicand); radicand >= 0, never a perfect square.
  Rat radicand;

  static NormValue exact_rational(Rat q) {
    if (sgn(q) < 0) throw error("norm value must be nonnegative");
    NormValue v;
    v.q0 = std::move(q);
    return v;
  }
  static NormValue exact_quadratic(Rat q0, Rat q1, long d) {
    if (sgn(q1) == 0) return exact_rational(std::move(q0));
    if (sign_of_quadratic(q0, q1, d) < 0) throw error("norm value must be nonnegative");
    NormValue v;
    v.q0 = std::move(q0);
    v.q1 = std::move(q1);
    v.d = d;
    return v;
  }
  static NormValue sqrt_of_rational(Rat q) {
    if (sgn(q) < 0) throw error("radicand must be nonnegative");
    if (auto root = exact_sqrt(q)) return exact_rational(*root);
    NormValue v;
    v.kind = Kind::SqrtRational;
    v.radicand = std::move(q);
    return v;
  }

  bool is_zero() const {
    return kind == Kind::Exact && sgn(q0) == 0 && sgn(q1) == 0;
  }
  bool is_one() const {
    return kind == Kind::Exact && q0 == 1 && sgn(q1) == 0;
  }

  bool operator==(const NormValue& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Exact) return q0 == o.q0 && q1 == o.q1 && d == o.d;
    return radicand == o.radicand;
  }
  bool operator!=(const NormValue& o) const { return !(*this == o); }
};

//! Product of norm values (norms are multiplicative; used by property tests).
inline NormValue operator*(const NormValue& x, const NormValue& y) {
  using K = NormValue::Kind;
  if (x.kind == K::Exact && y.kind == K::Exact) {
    if (x.d != 0 && y.d != 0 && x.d != y.d)
      throw error("norm product across different quadratic fields");
    long d = x.d != 0 ? x.d : y.d;
    if (d == 0) return NormValue::exact_rational(x.q0 * y.q0);
    Rat q0 = x.q0 * y.q0 + x.q1 * y.q1 * Rat(d);
    Rat q1 = x.q0 * y.q1 + x.q1 * y.q0;
    return NormValue::exact_quadratic(std::move(q0), std::move(q1), d);
  }
  if (x.kind == K::SqrtRational && y.kind == K::SqrtRational)
    return NormValue::sqrt_of_rational(x.radicand * y.radicand);
  const NormValue& e = x.kind == K::Exact ? x : y;
  const NormValue& s = x.kind == K::Exact ? y : x;
  if (e.d != 0) throw error("norm product mixes sqrt(d) and sqrt of rational");
  return NormValue::sqrt_of_rational(e.q0 * e.q0 * s.radicand);
}

inline std::string to_string(const NormValue& v) {
  if (v.kind == NormValue::Kind::SqrtRational)
    return "sqrt(" + rat_to_string(v.radicand) + ")";
  if (sgn(v.q1) == 0) return rat_to_string(v.q0);
  Rat q1abs = abs(v.q1);
  return rat_to_string(v.q0) + (sgn(v.q1) < 0 ? "-" : "+") + rat_to_string(q1abs) +
         "*sqrt(" + std::to_string(v.d) + ")";
}

//! Absolute value of a field element under the field's chosen real embedding
//! (Gaussian: the usual complex modulus).
inline NormValue norm(const FieldElement& x) {
  switch (x.field.kind) {
    case FieldKind::Rationals:
      return NormValue::exact_rational(abs(x.a));
    case FieldKind::RealQuadratic: {
      // embedded value = a + (b * embedding_sign) * sqrt(d), sqrt(d) > 0
      Rat B = x.b * Rat(x.field.embedding_sign);
      int s = sign_of_quadratic(x.a, B, x.field.d);
      if (s == 0) return NormValue::exact_rational(Rat(0));
      return NormValue::exact_quadratic(Rat(s) * x.a, Rat(s) * B, x.field.d);
    }
    case FieldKind::Gaussian:
      return NormValue::sqrt_of_rational(x.a * x.a + x.b * x.b);
  }
  throw error("unreachable");
}

namespace detail {

// Multivector in the tower Q[x_1..x_k]/(x_j^2 - Q_j): subset bitmask -> coeff.
using Multivector = std::map<unsigned, Rat>;

inline Multivector mv_mul(const Multivector& f, const Multivector& g,
                          const std::vector<Rat>& radicands) {
  Multivector out;
  for (const auto& [sf, cf] : f) {
    for (const auto& [sg, cg] : g) {
      Rat c = cf * cg;
      unsigned common = sf & sg;
      for (unsigned j = 0; common; ++j, common >>= 1)
        if (common & 1u) c *= radicands[j];
      unsigned s = sf ^ sg;
      auto it = out.find(s);
      if (it == out.end()) out.emplace(s, std::move(c));
      else it->second += c;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

// One term of a grouped radical sum: coef * sqrt(radicand).
struct RadicalTerm {
  Rat coef;      // nonzero
  Rat radicand;  // positive, not a perfect square
};

//! Exact sign of rational + sum(coef_j * sqrt(radicand_j)) where the
//! radicands are pairwise independent (no product a perfect square).
//! Equality is impossible once an irrational term survives; strict order is
//! found by interval refinement, with a conjugate-product separation bound
//! guaranteeing termination for <= 6 classes.
inline int sign_of_grouped_sum(const Rat& rational,
                               const std::vector<RadicalTerm>& terms,
                               unsigned long max_bits) {
  if (terms.empty()) return sgn(rational);

  // Fast path: all contributions pull the same way.
  bool all_pos = sgn(rational) >= 0, all_neg = sgn(rational) <= 0;
  for (const auto& t : terms) {
    all_pos = all_pos && sgn(t.coef) > 0;
    all_neg = all_neg && sgn(t.coef) < 0;
  }
  if (all_pos) return +1;
  if (all_neg) return -1;

  const size_t k = terms.size();

  // Separation bound via the conjugate product N = prod over sign patterns of
  // (rational + sum eps_j coef_j sqrt(Q_j)); N is a nonzero rational, and
  // |value| >= |N| / U^(2^k - 1) with U a crude upper bound on any conjugate.
  std::optional<Rat> separation;
  if (k <= 6) {
    std::vector<Rat> radicands;
    for (const auto& t : terms) radicands.push_back(t.radicand);
    Multivector prod{{0u, Rat(1)}};
    for (unsigned pattern = 0; pattern < (1u << k); ++pattern) {
      Multivector lin{{0u, rational}};
      for (size_t j = 0; j < k; ++j) {
        Rat c = terms[j].coef;
        if (pattern & (1u << j)) c = -c;
        lin[1u << j] = c;
      }
      prod = mv_mul(prod, lin, radicands);
    }
    if (prod.size() != 1 || prod.count(0u) == 0)
      throw error("internal: conjugate product not rational");
    Rat N = prod.at(0u);
    if (sgn(N) == 0)
      throw error("internal: radicand classes not independent");
    Rat U = abs(rational);
    for (const auto& t : terms) U += abs(t.coef) * sqrt_enclosure(t.radicand, 8).second;
    if (U < 1) U = 1;
    Rat denom(1);
    for (unsigned i = 0; i + 1 < (1u << k); ++i) denom *= U;
    separation = abs(N) / denom;
  }

  for (unsigned long bits = 64;; bits *= 2) {
    if (bits > max_bits)
      throw precision_exhausted(
          "sum-of-square-roots comparison undecided at configured precision",
          static_cast<long>(bits / 2));
    Rat lo = rational, hi = rational;
    for (const auto& t : terms) {
      auto [slo, shi] = sqrt_enclosure(t.radicand, bits);
      if (sgn(t.coef) > 0) {
        lo += t.coef * slo;
        hi += t.coef * shi;
      } else {
        lo += t.coef * shi;
        hi += t.coef * slo;
      }
    }
    if (sgn(lo) > 0) return +1;
    if (sgn(hi) < 0) return -1;
    if (separation && hi - lo < *separation)
      throw error("internal: interval narrower than separation bound yet undecided");
  }
}

// Signed exact sum of norm values: rational + quadratic part + sqrt terms.
struct NormSum {
  Rat rational;
  Rat quad_coef;
  long quad_d = 0;
  std::vector<RadicalTerm> sqrts;  // grouped on demand

  void add(const NormValue& v, int sign_factor) {
    Rat s(sign_factor);
    if (v.kind == NormValue::Kind::Exact) {
      rational += s * v.q0;
      if (sgn(v.q1) != 0) {
        if (quad_d != 0 && quad_d != v.d)
          throw error("norm sum mixes different quadratic fields");
        quad_d = v.d;
        quad_coef += s * v.q1;
      }
    } else {
      sqrts.push_back({s, v.radicand});
    }
  }

  //! Group sqrt terms into square-classes: sqrt(q) = (s/R) * sqrt(R) whenever
  //! q*R = s^2 with R the class representative. Exact, factorization-free.
  void group() {
    std::vector<RadicalTerm> classes;
    for (const auto& t : sqrts) {
      bool placed = false;
      for (auto& c : classes) {
        if (auto s = exact_sqrt(t.radicand * c.radicand)) {
          c.coef += t.coef * (*s / c.radicand);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back(t);
    }
    sqrts.clear();
    for (auto& c : classes)
      if (sgn(c.coef) != 0) sqrts.push_back(std::move(c));
  }

  int sign(unsigned long max_bits) {
    group();
    if (!sqrts.empty() && sgn(quad_coef) != 0)
      throw error("norm sum mixes sqrt(d) and sqrt of rational");
    if (sqrts.empty()) {
      if (sgn(quad_coef) == 0) return sgn(rational);
      return sign_of_quadratic(rational, quad_coef, quad_d);
    }
    return sign_of_grouped_sum(rational, sqrts, max_bits);
  }
};

}  // namespace detail

inline Ordering ordering_from_sign(int s) {
  return s < 0 ? Ordering::LT : s > 0 ? Ordering::GT : Ordering::EQ;
}

//! Exact trichotomy for sum(|x_i|) vs a rational bound.
inline Ordering cmp_norm_sum(const std::vector<FieldElement>& xs, const Rat& bound,
                             unsigned long max_bits = default_precision_cap()) {
  detail::NormSum sum;
  for (const auto& x : xs) sum.add(norm(x), +1);
  sum.rational -= bound;
  return ordering_from_sign(sum.sign(max_bits));
}

//! Exact trichotomy for sum(lhs) vs sum(rhs) over norm values.
inline Ordering cmp_norm_values(const std::vector<NormValue>& lhs,
                                const std::vector<NormValue>& rhs,
                                unsigned long max_bits = default_precision_cap()) {
  detail::NormSum sum;
  for (const auto& v : lhs) sum.add(v, +1);
  for (const auto& v : rhs) sum.add(v, -1);
  return ordering_from_sign(sum.sign(max_bits));
}

inline bool is_unit_norm(const FieldElement& x) { return norm(x).is_one(); }

//! A field element of absolute value exactly 1 (the unit sphere group E).
struct EElement {
  FieldElement value;

  explicit EElement(FieldElement v) : value(std::move(v)) {
    if (!is_unit_norm(value))
      throw not_unit_norm("element " + octak::to_string(value) + " is not of norm 1");
  }
  static EElement one(const FieldDescriptor& f) { return EElement(fe_one(f)); }
  static EElement minus_one(const FieldDescriptor& f) {
    return EElement(FieldElement(f, Rat(-1)));
  }
};

}  // namespace octak

#endif
