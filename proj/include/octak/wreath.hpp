#ifndef OCTAK_WREATH_HPP
#define OCTAK_WREATH_HPP

//! Aut(O(n)) as the wreath product (units) wr S_n: an element is a monomial
//! matrix D(eps)P(pi), stored as unit exponents (indexed by row) plus the
//! permutation (column -> row). Brute-force machinery for finite cyclic unit
//! groups mu_w: full enumeration, derived subgroups by commutator closure,
//! abelianization with structure recovery by p-power counting, and the exact
//! closed form for the commutators [tau_i, f_j].

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "abgroup.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "omod.hpp"

namespace octak {

//! g(e_i) = zeta^{units[perm[i]]} e_{perm[i]} with zeta a fixed primitive
//! w-th root of unity; w in {1, 2, 4} keeps units inside the four fields.
struct WreathElement {
  unsigned w = 2;
  std::vector<unsigned> units;  // exponents mod w, indexed by row
  std::vector<size_t> perm;     // column -> row, a bijection

  size_t n() const { return perm.size(); }

  bool operator==(const WreathElement& o) const {
    return w == o.w && units == o.units && perm == o.perm;
  }
  bool operator<(const WreathElement& o) const {
    if (perm != o.perm) return perm < o.perm;
    return units < o.units;
  }
};

inline WreathElement wreath_identity(unsigned w, size_t n) {
  WreathElement g{w, std::vector<unsigned>(n, 0), std::vector<size_t>(n)};
  for (size_t i = 0; i < n; ++i) g.perm[i] = i;
  return g;
}

inline std::vector<size_t> perm_inverse(const std::vector<size_t>& p) {
  std::vector<size_t> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

//! (eps, pi)(eps', pi') = (eps * (eps' relabeled through pi), pi compose pi').
inline WreathElement multiply(const WreathElement& a, const WreathElement& b) {
  if (a.w != b.w || a.n() != b.n())
    throw dimension_mismatch("wreath product across different groups");
  WreathElement out{a.w, std::vector<unsigned>(a.n()), std::vector<size_t>(a.n())};
  std::vector<size_t> ainv = perm_inverse(a.perm);
  for (size_t i = 0; i < a.n(); ++i) out.perm[i] = a.perm[b.perm[i]];
  for (size_t k = 0; k < a.n(); ++k)
    out.units[k] = (a.units[k] + b.units[ainv[k]]) % a.w;
  return out;
}

inline WreathElement invert(const WreathElement& g) {
  WreathElement out{g.w, std::vector<unsigned>(g.n()), perm_inverse(g.perm)};
  for (size_t k = 0; k < g.n(); ++k)
    out.units[k] = (g.w - g.units[g.perm[k]] % g.w) % g.w;
  return out;
}

inline bool perm_parity_odd(std::vector<size_t> p) {
  bool odd = false;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) { seen[j] = true; ++len; }
    if (len % 2 == 0) odd = !odd;
  }
  return odd;
}

//! Image in the abelianization: total unit exponent mod w, permutation parity.
struct AbImage {
  unsigned w = 2;
  unsigned unit_product = 0;  // exponent of zeta
  bool odd = false;

  bool operator==(const AbImage& o) const {
    return w == o.w && unit_product == o.unit_product && odd == o.odd;
  }
};

inline AbImage abelianize(const WreathElement& g) {
  unsigned total = 0;
  for (unsigned u : g.units) total = (total + u) % g.w;
  return AbImage{g.w, total, perm_parity_odd(g.perm)};
}

//! Exponent -> field element: zeta = -1 for w = 2, zeta = i for w = 4.
inline FieldElement unit_value(const FieldDescriptor& f, unsigned w, unsigned e) {
  e %= w;
  if (w == 1 || e == 0) return fe_one(f);
  if (w == 2) return fe_one(f) * FieldElement{f, Rat(-1), Rat(0)};
  if (w == 4) {
    if (f.kind != FieldKind::Gaussian)
      throw dimension_mismatch("fourth roots of unity require the Gaussian field");
    FieldElement i{f, Rat(0), Rat(1)};
    FieldElement v = fe_one(f);
    for (unsigned k = 0; k < e; ++k) v = v * i;
    return v;
  }
  throw dimension_mismatch("supported unit group orders are 1, 2, 4");
}

inline OMatrix to_matrix(const WreathElement& g, const FieldDescriptor& f) {
  OMatrix m = OMatrix::zero(f, g.n(), g.n());
  for (size_t i = 0; i < g.n(); ++i)
    m.set(g.perm[i], i, unit_value(f, g.w, g.units[g.perm[i]]));
  return m;
}

//! Back-conversion from the monomial decomposition of an automorphism.
inline WreathElement from_decomposition(const WreathDecomposition& d,
                                        const FieldDescriptor& f, unsigned w) {
  WreathElement g{w, std::vector<unsigned>(d.perm.size()), d.perm};
  for (size_t k = 0; k < d.units.size(); ++k) {
    unsigned e = 0;
    for (; e < w; ++e)
      if (d.units[k] == unit_value(f, w, e)) break;
    if (e == w) throw dimension_mismatch("unit is not a w-th root of unity");
    g.units[k] = e;
  }
  return g;
}

//! G_n -> G_{n+k}: act as the identity on the appended coordinates.
inline WreathElement stabilize(const WreathElement& g, size_t new_n) {
  if (new_n < g.n()) throw dimension_mismatch("stabilize cannot shrink");
  WreathElement out{g.w, g.units, g.perm};
  for (size_t i = g.n(); i < new_n; ++i) {
    out.units.push_back(0);
    out.perm.push_back(i);
  }
  return out;
}

//! Packed key for dedup sets; limits keep every digit in range.
inline std::uint64_t encode(const WreathElement& g) {
  if (g.n() > 10 || g.w > 4)
    throw budget_exceeded("encoding supports n <= 10, w <= 4");
  std::uint64_t key = 0;
  for (size_t i = 0; i < g.n(); ++i)
    key = key << 6 | std::uint64_t(g.units[i] & 3u) << 4 | std::uint64_t(g.perm[i]);
  return key;
}

inline Int factorial(size_t n) {
  Int f = 1;
  for (size_t k = 2; k <= n; ++k) f *= Int(static_cast<unsigned long>(k));
  return f;
}

inline Int wreath_group_order(unsigned w, size_t n) {
  Int order = factorial(n);
  for (size_t i = 0; i < n; ++i) order *= Int(w);
  return order;
}

//! All w^n * n! elements, permutation-major lexicographic order.
inline std::vector<WreathElement> enumerate_group(unsigned w, size_t n,
                                                  unsigned long budget = 1000000) {
  Int order = wreath_group_order(w, n);
  if (order > Int(static_cast<unsigned long>(budget)))
    throw budget_exceeded("group order " + order.get_str() + " exceeds budget " +
                          std::to_string(budget));
  std::vector<WreathElement> all;
  all.reserve(order.get_ui());
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    WreathElement g{w, std::vector<unsigned>(n, 0), perm};
    for (;;) {
      all.push_back(g);
      size_t i = n;
      while (i > 0 && g.units[i - 1] + 1 == w) g.units[--i] = 0;
      if (i == 0) break;
      ++g.units[i - 1];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return all;
}

//! Subgroup generated by `gens` inside the ambient group, by closure under
//! multiplication. Returns elements sorted by (perm, units).
inline std::vector<WreathElement> generated_subgroup(
    std::vector<WreathElement> gens, unsigned long budget = 1000000) {
  if (gens.empty()) return {};
  std::unordered_set<std::uint64_t> seen;
  std::vector<WreathElement> frontier;
  std::vector<WreathElement> members;
  WreathElement id = wreath_identity(gens[0].w, gens[0].n());
  seen.insert(encode(id));
  members.push_back(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<WreathElement> next;
    for (const auto& g : frontier)
      for (const auto& h : gens) {
        WreathElement gh = multiply(g, h);
        if (seen.insert(encode(gh)).second) {
          members.push_back(gh);
          next.push_back(gh);
          if (members.size() > budget)
            throw budget_exceeded("subgroup closure exceeds budget");
        }
      }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

//! [G, G]: the subgroup generated by all commutators aba^-1b^-1. The set of
//! commutators is conjugation-stable, so plain multiplicative closure of it
//! is already the (normal) derived subgroup.
inline std::vector<WreathElement> derived_subgroup(
    const std::vector<WreathElement>& elements, unsigned long budget = 1000000) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<WreathElement> comms;
  std::vector<WreathElement> inverses;
  inverses.reserve(elements.size());
  for (const auto& a : elements) inverses.push_back(invert(a));
  for (size_t i = 0; i < elements.size(); ++i)
    for (size_t j = 0; j < elements.size(); ++j) {
      WreathElement c = multiply(multiply(elements[i], elements[j]),
                                 multiply(inverses[i], inverses[j]));
      if (seen.insert(encode(c)).second) comms.push_back(c);
    }
  return generated_subgroup(std::move(comms), budget);
}

inline bool is_perfect_group(const std::vector<WreathElement>& elements,
                             unsigned long budget = 1000000) {
  return derived_subgroup(elements, budget).size() == elements.size();
}

//! Structure of a finite abelian group given only by its multiplication:
//! for each prime p, counting solutions of x^{p^k} = e recovers the
//! multiset of cyclic p-power factors.
template <class T>
AbGroupDescriptor classify_finite_abelian(
    const std::vector<T>& elements, const std::function<T(const T&, const T&)>& mul,
    const T& identity) {
  AbGroupDescriptor out;
  Int m(static_cast<unsigned long>(elements.size()));
  if (m == 1) return out;
  auto power = [&](T x, unsigned long e) {
    T acc = identity;
    while (e) {
      if (e & 1) acc = mul(acc, x);
      x = mul(x, x);
      e >>= 1;
    }
    return acc;
  };
  for (const Int& q : prime_power_parts(m)) {
    Int p = 2;
    while (q % p != 0) p = p == 2 ? Int(3) : p + 2;
    unsigned long a = 0;
    for (Int rest = q; rest % p == 0; rest /= p) ++a;
    // counts[k] = #solutions of x^{p^k} = e, a power of p; its p-adic
    // logarithm ladder yields the number of factors of each exponent.
    std::vector<unsigned long> logs{0};
    for (unsigned long k = 1; k <= a; ++k) {
      unsigned long pk = 1;
      for (unsigned long t = 0; t < k; ++t) pk *= p.get_ui();
      unsigned long count = 0;
      for (const T& x : elements)
        if (power(x, pk) == identity) ++count;
      unsigned long lg = 0;
      unsigned long c = count;
      while (c > 1) {
        if (c % p.get_ui() != 0)
          throw error("internal: solution count is not a prime power");
        c /= p.get_ui();
        ++lg;
      }
      logs.push_back(lg);
    }
    std::vector<unsigned long> at_least(a + 1, 0);  // #factors with exponent >= k
    for (unsigned long k = 1; k <= a; ++k) at_least[k] = logs[k] - logs[k - 1];
    for (unsigned long k = 1; k <= a; ++k) {
      unsigned long exactly = at_least[k] - (k + 1 <= a ? at_least[k + 1] : 0);
      Int pk = 1;
      for (unsigned long t = 0; t < k; ++t) pk *= p;
      for (unsigned long c = 0; c < exactly; ++c) out.torsion.push_back(pk);
    }
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

//! G/[G,G] for the full group mu_w wr S_n, computed from scratch: enumerate,
//! close commutators, form the coset quotient, classify by p-power counting.
inline AbGroupDescriptor brute_abelianization(size_t n, unsigned w,
                                              unsigned long budget = 1000000) {
  std::vector<WreathElement> g = enumerate_group(w, n, budget);
  std::vector<WreathElement> d = derived_subgroup(g, budget);
  // Canonical coset representative: the least g*d under the element order.
  std::map<std::uint64_t, WreathElement> reps;
  std::unordered_set<std::uint64_t> assigned;
  std::vector<WreathElement> quotient;
  for (const auto& x : g) {
    if (assigned.count(encode(x))) continue;
    WreathElement least = x;
    std::vector<WreathElement> coset;
    for (const auto& e : d) {
      WreathElement xe = multiply(x, e);
      coset.push_back(xe);
      if (xe < least) least = xe;
    }
    for (const auto& xe : coset) {
      assigned.insert(encode(xe));
      reps[encode(xe)] = least;
    }
    quotient.push_back(least);
  }
  std::function<WreathElement(const WreathElement&, const WreathElement&)> qmul =
      [&reps](const WreathElement& x, const WreathElement& y) {
        return reps.at(encode(multiply(x, y)));
      };
  WreathElement id = reps.at(encode(wreath_identity(w, n)));
  std::sort(quotient.begin(), quotient.end());
  return classify_finite_abelian<WreathElement>(quotient, qmul, id);
}

//! sigma_i = transposition (i, i+1); tau_i = sigma_{i+1} after sigma_i, the
//! 3-cycle i -> i+2, i+1 -> i, i+2 -> i+1; f_j^e = diag unit e at j and e^-1
//! at j+1. All indices 0-based.
inline WreathElement sigma_gen(unsigned w, size_t n, size_t i) {
  WreathElement g = wreath_identity(w, n);
  std::swap(g.perm[i], g.perm[i + 1]);
  return g;
}

inline WreathElement tau_gen(unsigned w, size_t n, size_t i) {
  return multiply(sigma_gen(w, n, i + 1), sigma_gen(w, n, i));
}

inline WreathElement f_gen(unsigned w, size_t n, size_t j, unsigned e) {
  WreathElement g = wreath_identity(w, n);
  g.units[j] = e % w;
  g.units[j + 1] = (w - e % w) % w;
  return g;
}

//! Closed form of [tau_i, f_j^e], split by j - i. A diagonal element is
//! returned as its exponent vector; 1 denotes the identity.
inline std::vector<unsigned> commutator_prediction(unsigned w, size_t n,
                                                   size_t i, size_t j, unsigned e) {
  std::vector<unsigned> u(n, 0);
  auto add = [&](size_t k, long coef) {
    long v = (long(u[k]) + coef * long(e % w)) % long(w);
    u[k] = unsigned((v + long(w)) % long(w));
  };
  long delta = long(j) - long(i);
  if (delta <= -2) return u;                      // untouched slots
  if (delta == -1) { add(i, 1); add(i + 2, -1); } // shifted off the 3-cycle
  else if (delta == 0) { add(i, -2); add(i + 1, 1); add(i + 2, 1); }
  else if (delta == 1) { add(i, 1); add(i + 1, -2); add(i + 2, 1); }
  else if (delta == 2) { add(i + 1, 1); add(i + 2, -1); }
  return u;                                       // delta >= 3: identity
}

struct CommutatorCaseReport {
  long delta;       // j - i, clamped to [-2, 3] for the boundary classes
  size_t checked = 0;
  size_t mismatches = 0;
};

//! Evaluate [tau_i, f_j^e] for every admissible (i, j, e) and compare with
//! the closed form, bucketed by the six j - i classes.
inline std::vector<CommutatorCaseReport> commutator_table_check(size_t n, unsigned w) {
  std::map<long, CommutatorCaseReport> buckets;
  for (long d = -2; d <= 3; ++d) buckets[d] = CommutatorCaseReport{d, 0, 0};
  if (n < 3) return {};
  for (size_t i = 0; i + 2 < n; ++i)
    for (size_t j = 0; j + 1 < n; ++j)
      for (unsigned e = 1; e < w; ++e) {
        WreathElement tau = tau_gen(w, n, i);
        WreathElement f = f_gen(w, n, j, e);
        WreathElement c =
            multiply(multiply(tau, f), multiply(invert(tau), invert(f)));
        WreathElement expect{w, commutator_prediction(w, n, i, j, e),
                             wreath_identity(w, n).perm};
        long d = std::clamp(long(j) - long(i), -2L, 3L);
        ++buckets[d].checked;
        if (!(c == expect)) ++buckets[d].mismatches;
      }
  std::vector<CommutatorCaseReport> out;
  for (auto& [d, r] : buckets) out.push_back(r);
  return out;
}

}  // namespace octak

#endif
