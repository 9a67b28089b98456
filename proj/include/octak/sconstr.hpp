#ifndef OCTAK_SCONSTR_HPP
#define OCTAK_SCONSTR_HPP

//! Small-degree S-construction enumerator over free modules of the valuation
//! monad, and its comparison category of finitely generated pointed E-sets.
//! A degree-n staircase is a chain of cofibrations
//!   0 = A_0 >-> A_1 >-> ... >-> A_n
//! together with, for every i < j, the canonical quotient A_{ij} (free on the
//! rows of A_j not hit by the composite inclusion) and, for every i < j <= k,
//! the induced cofibration A_{ij} >-> A_{ik}. Quotient identifications are
//! always the increasing-row bases, so a staircase carries no extra choices
//! and the object sets are in bijection with chains of pointed E-set
//! injections, which this header enumerates independently.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "omod.hpp"

namespace octak {

// ---------------------------------------------------------------------------
// Roots of unity as concrete field elements
// ---------------------------------------------------------------------------

//! Ascending powers zeta^0..zeta^{w-1} of the standard generator: -1 for
//! w = 2 (any field), the imaginary unit for w = 4 (Gaussian field only).
inline std::vector<FieldElement> roots_of_unity(const FieldDescriptor& f, long w) {
  if (w == 2) return {fe_one(f), -fe_one(f)};
  if (w == 4) {
    if (f.kind != FieldKind::Gaussian)
      throw dimension_mismatch("unit order 4 needs the Gaussian field");
    FieldElement i(f, Rat(0), Rat(1));
    return {fe_one(f), i, -fe_one(f), -i};
  }
  throw error("unit order must be 2 or 4");
}

//! Order of the root-of-unity group carried by a field.
inline long unit_order(const FieldDescriptor& f) {
  return f.kind == FieldKind::Gaussian ? 4 : 2;
}

inline FieldDescriptor field_for_unit_order(long w) {
  if (w == 2) return FieldDescriptor::rationals();
  if (w == 4) return FieldDescriptor::gaussian();
  throw error("unit order must be 2 or 4");
}

//! Exponent k with u = zeta^k, for u a root of unity in the field.
inline long unit_exponent(const FieldElement& u, long w) {
  std::vector<FieldElement> zeta = roots_of_unity(u.field, w);
  for (long k = 0; k < w; ++k)
    if (zeta[k] == u) return k;
  throw error("element " + to_string(u) + " is not a root of unity of order " +
              std::to_string(w));
}

// ---------------------------------------------------------------------------
// Cofibration enumeration
// ---------------------------------------------------------------------------

//! Closed-form count: w^{n_from} * C(n_to, n_from) * n_from!.
inline Int cofib_count(long w, size_t n_from, size_t n_to) {
  if (n_from > n_to) return Int(0);
  Int count = 1;
  for (size_t i = 0; i < n_from; ++i) {
    count *= Int(static_cast<long>(n_to - i));  // falling factorial = C * n_from!
    count *= w;
  }
  return count;
}

//! Every cofibration O(n_from) >-> O(n_to): injective row assignments in
//! lexicographic order, units in ascending-exponent odometer order (last
//! column fastest). Deterministic.
inline std::vector<CofibCertificate> enumerate_cofibs(
    const FieldDescriptor& f, size_t n_from, size_t n_to,
    long budget = 1000000) {
  const long w = unit_order(f);
  Int total = cofib_count(w, n_from, n_to);
  if (total > budget)
    throw budget_exceeded("cofibration census of size " + total.get_str() +
                          " exceeds the budget of " + std::to_string(budget));
  const std::vector<FieldElement> zeta = roots_of_unity(f, w);

  std::vector<CofibCertificate> out;
  std::vector<size_t> rows;
  std::vector<bool> used(n_to, false);
  auto emit_units = [&]() {
    std::vector<long> exps(n_from, 0);
    for (;;) {
      CofibCertificate cert{f, n_from, n_to, rows, {}};
      cert.units.reserve(n_from);
      for (size_t i = 0; i < n_from; ++i)
        cert.units.push_back(zeta[exps[i]]);
      out.push_back(std::move(cert));
      size_t i = n_from;
      while (i-- > 0) {
        if (++exps[i] < w) break;
        exps[i] = 0;
        if (i == 0) return;
      }
      if (n_from == 0) return;
    }
  };
  auto recurse = [&](auto&& self, size_t depth) -> void {
    if (depth == n_from) {
      emit_units();
      return;
    }
    for (size_t r = 0; r < n_to; ++r) {
      if (used[r]) continue;
      used[r] = true;
      rows.push_back(r);
      self(self, depth + 1);
      rows.pop_back();
      used[r] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Pointed E-sets
// ---------------------------------------------------------------------------

//! Finite free pointed E-set: a basepoint plus `gens` free orbits of size w.
struct PointedESet {
  long w = 2;
  size_t gens = 0;
  size_t carrier_size() const { return static_cast<size_t>(w) * gens + 1; }
  bool operator==(const PointedESet&) const = default;
};

//! Basepoint-preserving equivariant injection between free pointed E-sets:
//! generator i lands on zeta^{exponents[i]} times generator gen_to_gen[i].
struct ESetInjection {
  long w = 2;
  size_t gens_from = 0, gens_to = 0;
  std::vector<size_t> gen_to_gen;  // injective
  std::vector<long> exponents;     // each in [0, w)
  bool operator==(const ESetInjection&) const = default;
};

inline ESetInjection compose(const ESetInjection& g, const ESetInjection& f) {
  if (f.w != g.w || f.gens_to != g.gens_from)
    throw dimension_mismatch("pointed E-set injection composition mismatch");
  ESetInjection out{f.w, f.gens_from, g.gens_to, {}, {}};
  for (size_t i = 0; i < f.gens_from; ++i) {
    size_t mid = f.gen_to_gen[i];
    out.gen_to_gen.push_back(g.gen_to_gen[mid]);
    out.exponents.push_back((g.exponents[mid] + f.exponents[i]) % f.w);
  }
  return out;
}

//! Independent census of the E-set side; same deterministic order contract
//! as enumerate_cofibs but built from the combinatorial data alone.
inline std::vector<ESetInjection> enumerate_eset_injections(
    long w, size_t gens_from, size_t gens_to, long budget = 1000000) {
  if (w != 2 && w != 4) throw error("unit order must be 2 or 4");
  Int total = cofib_count(w, gens_from, gens_to);
  if (total > budget)
    throw budget_exceeded("injection census of size " + total.get_str() +
                          " exceeds the budget of " + std::to_string(budget));
  std::vector<ESetInjection> out;
  std::vector<size_t> targets;
  std::vector<bool> used(gens_to, false);
  auto emit_exponents = [&]() {
    std::vector<long> exps(gens_from, 0);
    for (;;) {
      out.push_back(ESetInjection{w, gens_from, gens_to, targets, exps});
      size_t i = gens_from;
      while (i-- > 0) {
        if (++exps[i] < w) break;
        exps[i] = 0;
        if (i == 0) return;
      }
      if (gens_from == 0) return;
    }
  };
  auto recurse = [&](auto&& self, size_t depth) -> void {
    if (depth == gens_from) {
      emit_exponents();
      return;
    }
    for (size_t t = 0; t < gens_to; ++t) {
      if (used[t]) continue;
      used[t] = true;
      targets.push_back(t);
      self(self, depth + 1);
      targets.pop_back();
      used[t] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

//! The comparison functor on morphisms: rank-r module to the free pointed
//! E-set on r generators, cofibration to the injection with the same row
//! assignment and the unit exponents of its entries.
inline ESetInjection to_pointed_eset(const CofibCertificate& c) {
  const long w = unit_order(c.field);
  ESetInjection inj{w, c.n_from, c.n_to, c.col_to_row, {}};
  inj.exponents.reserve(c.n_from);
  for (const FieldElement& u : c.units)
    inj.exponents.push_back(unit_exponent(u, w));
  return inj;
}

//! Explicit inverse of to_pointed_eset.
inline CofibCertificate from_pointed_eset(const ESetInjection& inj,
                                          const FieldDescriptor& f) {
  if (unit_order(f) != inj.w)
    throw dimension_mismatch("field unit order does not match the injection");
  const std::vector<FieldElement> zeta = roots_of_unity(f, inj.w);
  CofibCertificate cert{f, inj.gens_from, inj.gens_to, inj.gen_to_gen, {}};
  cert.units.reserve(inj.gens_from);
  for (long e : inj.exponents) cert.units.push_back(zeta[e]);
  return cert;
}

// ---------------------------------------------------------------------------
// Staircase objects
// ---------------------------------------------------------------------------

//! Validated degree-n staircase. `chain[j]` includes A_{j} into A_{j+1};
//! `quotient_rows(i,j)` is the canonical basis of A_{ij} = A_j / A_i (rows of
//! A_j missed by the composite inclusion, increasing); `induced(i,j,k)` is
//! the cofibration A_{ij} >-> A_{ik} in those bases.
class StaircaseObject {
 public:
  StaircaseObject(FieldDescriptor field, std::vector<CofibCertificate> chain)
      : field_(std::move(field)), chain_(std::move(chain)) {
    ranks_.push_back(0);
    for (size_t j = 0; j < chain_.size(); ++j) {
      const CofibCertificate& c = chain_[j];
      if (c.field != field_)
        throw dimension_mismatch("staircase certificate from the wrong field");
      if (c.n_from != ranks_.back())
        throw dimension_mismatch("staircase chain is not composable");
      ranks_.push_back(c.n_to);
    }
    validate();
  }

  size_t degree() const { return chain_.size(); }
  const std::vector<size_t>& ranks() const { return ranks_; }
  const FieldDescriptor& field() const { return field_; }
  const std::vector<CofibCertificate>& chain() const { return chain_; }

  //! Composite inclusion A_i >-> A_j (i <= j); identity when i = j.
  CofibCertificate composite(size_t i, size_t j) const {
    CofibCertificate acc{field_, ranks_[i], ranks_[i], {}, {}};
    for (size_t r = 0; r < ranks_[i]; ++r) {
      acc.col_to_row.push_back(r);
      acc.units.push_back(fe_one(field_));
    }
    for (size_t k = i; k < j; ++k) acc = compose(chain_[k], acc);
    return acc;
  }

  //! Rows of A_j forming the canonical basis of the quotient A_{ij}.
  std::vector<size_t> quotient_rows(size_t i, size_t j) const {
    return cokernel(composite(i, j)).coker_rows;
  }

  //! The induced cofibration A_{ij} >-> A_{ik} (i < j <= k) in the canonical
  //! quotient bases.
  CofibCertificate induced(size_t i, size_t j, size_t k) const {
    std::vector<size_t> from_rows = quotient_rows(i, j);
    std::vector<size_t> to_rows = quotient_rows(i, k);
    CofibCertificate step = composite(j, k);
    std::map<size_t, size_t> to_pos;
    for (size_t p = 0; p < to_rows.size(); ++p) to_pos[to_rows[p]] = p;
    CofibCertificate out{field_, from_rows.size(), to_rows.size(), {}, {}};
    for (size_t rho : from_rows) {
      auto it = to_pos.find(step.col_to_row[rho]);
      if (it == to_pos.end())
        throw error("internal: induced quotient map leaves the canonical basis");
      out.col_to_row.push_back(it->second);
      out.units.push_back(step.units[rho]);
    }
    return out;
  }

  bool operator==(const StaircaseObject& o) const {
    return field_ == o.field_ && ranks_ == o.ranks_ &&
           chains_equal(chain_, o.chain_);
  }

 private:
  static bool chains_equal(const std::vector<CofibCertificate>& a,
                           const std::vector<CofibCertificate>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].col_to_row != b[i].col_to_row || a[i].units != b[i].units ||
          a[i].n_from != b[i].n_from || a[i].n_to != b[i].n_to)
        return false;
    return true;
  }

  //! Every triple must satisfy the cofibration-sequence condition: the
  //! quotient of A_{ij} >-> A_{ik} is A_{jk} on the nose (row sets agree) and
  //! ranks add up. These are consequences of the chain structure; they are
  //! asserted on every construction.
  void validate() const {
    const size_t n = degree();
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j <= n; ++j) {
        std::vector<size_t> rows_ij = quotient_rows(i, j);
        if (rows_ij.size() != ranks_[j] - ranks_[i])
          throw error("internal: staircase quotient rank mismatch");
        for (size_t k = j; k <= n; ++k) {
          CofibCertificate ind = induced(i, j, k);
          std::vector<size_t> to_rows = quotient_rows(i, k);
          std::vector<size_t> jk_rows = quotient_rows(j, k);
          std::vector<size_t> complement;
          for (size_t p : cokernel(ind).coker_rows)
            complement.push_back(to_rows[p]);
          if (complement != jk_rows)
            throw error("internal: staircase cokernel is not the canonical quotient");
        }
      }
    }
  }

  FieldDescriptor field_;
  std::vector<CofibCertificate> chain_;
  std::vector<size_t> ranks_;
};

//! Waldhausen face map d_i: drop module i. Dropping an inner module composes
//! the two adjacent inclusions; dropping module 0 passes to quotients by A_1.
inline StaircaseObject face(const StaircaseObject& s, size_t i) {
  const size_t n = s.degree();
  if (i > n) throw dimension_mismatch("face index exceeds the degree");
  std::vector<CofibCertificate> chain;
  if (i == 0) {
    for (size_t j = 1; j < n; ++j) chain.push_back(s.induced(1, j, j + 1));
  } else if (i == n) {
    chain.assign(s.chain().begin(), s.chain().end() - 1);
  } else {
    for (size_t j = 0; j < n; ++j) {
      if (j + 1 == i) {
        chain.push_back(compose(s.chain()[j + 1], s.chain()[j]));
        ++j;
      } else {
        chain.push_back(s.chain()[j]);
      }
    }
  }
  return StaircaseObject(s.field(), std::move(chain));
}

//! Waldhausen degeneracy s_i: repeat module i along an identity inclusion.
inline StaircaseObject degeneracy(const StaircaseObject& s, size_t i) {
  const size_t n = s.degree();
  if (i > n) throw dimension_mismatch("degeneracy index exceeds the degree");
  std::vector<CofibCertificate> chain;
  for (size_t j = 0; j <= n; ++j) {
    if (j == i) {
      CofibCertificate id{s.field(), s.ranks()[i], s.ranks()[i], {}, {}};
      for (size_t r = 0; r < s.ranks()[i]; ++r) {
        id.col_to_row.push_back(r);
        id.units.push_back(fe_one(s.field()));
      }
      chain.push_back(std::move(id));
    }
    if (j < n) chain.push_back(s.chain()[j]);
  }
  return StaircaseObject(s.field(), std::move(chain));
}

// ---------------------------------------------------------------------------
// Degree-n object census
// ---------------------------------------------------------------------------

struct SObjectCensus {
  Int module_count = 0;                  // staircases over free modules
  Int eset_count = 0;                    // chains of pointed E-set injections
  std::vector<StaircaseObject> samples;  // materialized when small enough
};

//! Count degree-n staircases with top rank <= rank_max, over free modules and
//! over pointed E-sets, by enumerating each chain step concretely on both
//! sides. Chains themselves are materialized (and validated) only while the
//! running product stays within sample_budget.
inline SObjectCensus enumerate_s_objects(long w, size_t degree, size_t rank_max,
                                         long sample_budget = 2000) {
  const FieldDescriptor f = field_for_unit_order(w);
  SObjectCensus census;

  // Nondecreasing rank sequences 0 <= r_1 <= ... <= r_n <= rank_max.
  std::vector<size_t> ranks(degree, 0);
  auto sweep = [&](auto&& self, size_t pos) -> void {
    if (pos == degree) {
      Int modules = 1, esets = 1;
      size_t prev = 0;
      for (size_t r : ranks) {
        modules *= Int(static_cast<long>(
            enumerate_cofibs(f, prev, r).size()));
        esets *= Int(static_cast<long>(
            enumerate_eset_injections(w, prev, r).size()));
        prev = r;
      }
      census.module_count += modules;
      census.eset_count += esets;

      if (modules <= sample_budget) {
        // Materialize every chain for this rank sequence.
        std::vector<std::vector<CofibCertificate>> chains = {{}};
        prev = 0;
        for (size_t r : ranks) {
          std::vector<CofibCertificate> options = enumerate_cofibs(f, prev, r);
          std::vector<std::vector<CofibCertificate>> next;
          for (const auto& chain : chains)
            for (const auto& step : options) {
              next.push_back(chain);
              next.back().push_back(step);
            }
          chains = std::move(next);
          prev = r;
        }
        for (auto& chain : chains)
          census.samples.emplace_back(f, std::move(chain));
      }
      return;
    }
    for (size_t r = (pos == 0 ? 0 : ranks[pos - 1]); r <= rank_max; ++r) {
      ranks[pos] = r;
      self(self, pos + 1);
    }
  };
  if (degree == 0) {
    census.module_count = 1;  // the zero staircase
    census.eset_count = 1;
    census.samples.emplace_back(f, std::vector<CofibCertificate>{});
  } else {
    sweep(sweep, 0);
  }
  return census;
}

}  // namespace octak

#endif
