#ifndef OCTAK_KTHEORY_HPP
#define OCTAK_KTHEORY_HPP

//! K-group descriptors at an archimedean place: unit-group structure of the
//! valuation monad, cyclic group homology computed from the periodic
//! resolution, the E2 page of the Atiyah-Hirzebruch spectral sequence for the
//! classifying space of the root-of-unity group, and the wedge decomposition
//! assembling K_0, K_1 and the K_2 bound.

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "abgroup.hpp"
#include "errors.hpp"
#include "field.hpp"

namespace octak {

//! The norm-one elements of the field: torsion part mu_w plus a free factor.
struct UnitGroupStructure {
  long torsion_order = 2;  // w = #mu_F
  long free_rank = 0;      // 0, or kOmega for countably many generators
};

//! In a real embedding |x| = 1 forces x = +-1, so the unit group is mu_2.
//! In the Gaussian field the norm-one elements are mu_4 plus one free
//! generator above each rational prime p = 1 mod 4 (see pythag.hpp).
inline UnitGroupStructure unit_group_structure(const FieldDescriptor& f) {
  if (f.kind == FieldKind::Gaussian) return {4, kOmega};
  return {2, 0};
}

// ---------------------------------------------------------------------------
// Cyclic group homology
// ---------------------------------------------------------------------------

//! H_p(Z/w; coefficients), computed from the periodic resolution of the
//! cyclic group rather than a lookup table: after tensoring down, the complex
//! has every term equal to the coefficient module Z/m (m = 0 denotes Z) and
//! boundary maps alternating between 0 (odd p) and multiplication by w
//! (even p >= 2). Each homology group is ker/im of multiplication maps on a
//! cyclic module, hence cyclic; the function derives its order exactly.
inline AbGroupDescriptor cyclic_homology(long w, long m, long p) {
  if (w < 1) throw error("cyclic homology needs a group order w >= 1");
  if (m < 0) throw error("coefficient modulus must be 0 (integers) or positive");
  if (p < 0) throw error("homology degree must be nonnegative");

  // Boundary multiplier entering degree p (d_p: C_p -> C_{p-1}); d_0 = 0.
  auto boundary = [&](long deg) -> long {
    if (deg == 0) return 0;
    return (deg % 2 == 1) ? 0 : w;
  };
  const long a = boundary(p);      // d_p, whose kernel we take
  const long b = boundary(p + 1);  // d_{p+1}, whose image we quotient by

  if (m == 0) {
    // Over Z: ker(*a) is everything iff a = 0, else trivial.
    if (a != 0) return ab_trivial();
    if (b == 0) return ab_free(1);
    return ab_cyclic(Int(b));
  }
  // Over Z/m: ker(*a) = <m/gcd(a,m)>, im(*b) = <gcd(b,m)>; the quotient of
  // nested cyclic subgroups <k> / <g> is cyclic of order g/k.
  const long k = m / std::gcd(a, m);  // gcd(0,m) = m, so k = 1 when a = 0
  const long g = std::gcd(b, m);
  if (g % k != 0)
    throw error("internal: boundary maps do not compose to zero");
  return ab_cyclic(Int(g / k));
}

// ---------------------------------------------------------------------------
// Stable stems and the E2 page
// ---------------------------------------------------------------------------

//! The stable homotopy groups of spheres used as spectral-sequence
//! coefficients. Seeded with the degrees the computations here consume
//! (pi_0 = Z, pi_1 = pi_2 = Z/2); higher stems are external mathematical
//! input and must be supplied explicitly via set().
class StableStemTable {
 public:
  StableStemTable() {
    stems_[0] = ab_free(1);
    stems_[1] = ab_cyclic(Int(2));
    stems_[2] = ab_cyclic(Int(2));
  }

  void set(long q, AbGroupDescriptor g) { stems_[q] = std::move(g); }
  long max_degree() const { return stems_.rbegin()->first; }

  //! Stems in negative degrees vanish.
  AbGroupDescriptor at(long q) const {
    if (q < 0) return ab_trivial();
    auto it = stems_.find(q);
    if (it == stems_.end())
      throw unsupported_stem("stable stem " + std::to_string(q) +
                             " is not in the table; supply it explicitly");
    return it->second;
  }

 private:
  std::map<long, AbGroupDescriptor> stems_;
};

inline const StableStemTable& default_stems() {
  static const StableStemTable table;
  return table;
}

struct SpectralPage {
  size_t pmax = 0;
  size_t qmax = 0;
  std::vector<AbGroupDescriptor> grid;  // row-major by q, then p

  const AbGroupDescriptor& at(size_t p, size_t q) const {
    return grid[q * (pmax + 1) + p];
  }
};

//! E2 page of the homology Atiyah-Hirzebruch spectral sequence for the
//! classifying space of mu_w: E2_{p,q} = H_p(Z/w; pi_q^s). Stems must be
//! cyclic for the homology computation to apply (they are, in the seeded
//! range).
inline SpectralPage ah_e2_page(long w, size_t pmax, size_t qmax,
                               const StableStemTable& stems = default_stems()) {
  SpectralPage page;
  page.pmax = pmax;
  page.qmax = qmax;
  page.grid.reserve((pmax + 1) * (qmax + 1));
  for (size_t q = 0; q <= qmax; ++q) {
    AbGroupDescriptor stem = stems.at(static_cast<long>(q));
    long m;
    if (!stem.exact || !stem.torsion_omega.empty())
      throw error("page assembly requires cyclic stem coefficients");
    if (stem.free_rank == 1 && stem.torsion.empty()) {
      m = 0;
    } else if (stem.free_rank == 0) {
      // Prime-power torsion entries present a cyclic group exactly when they
      // are pairwise coprime; the order is then their product.
      m = 1;
      for (const Int& t : stem.torsion) {
        long tl = static_cast<long>(t.get_si());
        if (std::gcd(m, tl) != 1)
          throw error("page assembly requires cyclic stem coefficients");
        m *= tl;
      }
    } else {
      throw error("page assembly requires cyclic stem coefficients");
    }
    for (size_t p = 0; p <= pmax; ++p)
      page.grid.push_back(cyclic_homology(w, m, static_cast<long>(p)));
  }
  return page;
}

// ---------------------------------------------------------------------------
// K-groups
// ---------------------------------------------------------------------------

namespace detail {

//! Direct sum of `count` copies of a descriptor; count may be kOmega.
inline AbGroupDescriptor ab_power(const AbGroupDescriptor& g, long count) {
  if (count == 0) return ab_trivial();
  AbGroupDescriptor out;
  out.exact = g.exact;
  out.bound_note = g.bound_note;
  if (count == kOmega) {
    if (g.free_rank != 0) out.free_rank = kOmega;
    for (const Int& q : g.torsion)
      if (out.torsion_omega.empty() || out.torsion_omega.back() != q)
        out.torsion_omega.push_back(q);
    std::sort(out.torsion_omega.begin(), out.torsion_omega.end());
    out.torsion_omega.erase(
        std::unique(out.torsion_omega.begin(), out.torsion_omega.end()),
        out.torsion_omega.end());
    return out;
  }
  out.free_rank = (g.free_rank == kOmega) ? kOmega : g.free_rank * count;
  for (long i = 0; i < count; ++i)
    out.torsion.insert(out.torsion.end(), g.torsion.begin(), g.torsion.end());
  std::sort(out.torsion.begin(), out.torsion.end());
  out.torsion_omega = g.torsion_omega;
  return out;
}

}  // namespace detail

//! K_i of the valuation monad via the wedge splitting of its K-theory
//! spectrum: the classifying-space part of mu_w contributes in every degree,
//! and each free unit generator contributes one copy of the stem one degree
//! down. Degree 2 is a bound, not a value: the finite part is only known up
//! to the subquotients visible on the E2 page.
inline AbGroupDescriptor wedge_decompose(long i, long w, long s_rank) {
  if (i < 0 || i > 2)
    throw unsupported_degree("K-groups are assembled only for degrees 0..2");

  AbGroupDescriptor bmu;
  if (i == 0) {
    bmu = ab_free(1);
  } else if (i == 1) {
    bmu = ab_sum(ab_cyclic(Int(2)), ab_cyclic(Int(w)));
  } else {
    bmu.exact = false;
    bmu.bound_note = "plus a finite group filtered by subquotients of Z/2 and Z/" +
                     std::to_string(std::gcd(2L, w));
  }

  AbGroupDescriptor stem = default_stems().at(i - 1);
  return ab_sum(bmu, detail::ab_power(stem, s_rank));
}

inline AbGroupDescriptor k_group(const FieldDescriptor& f, long i) {
  UnitGroupStructure units = unit_group_structure(f);
  return wedge_decompose(i, units.torsion_order, units.free_rank);
}

}  // namespace octak

#endif
