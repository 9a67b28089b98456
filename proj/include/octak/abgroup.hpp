#ifndef OCTAK_ABGROUP_HPP
#define OCTAK_ABGROUP_HPP

//! Finitely (or countably) generated abelian groups up to isomorphism:
//! free rank (possibly countably infinite, written w), prime-power torsion,
//! and an exactness qualifier for results that are only upper bounds.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace octak {

constexpr long kOmega = -1;  // countably infinite rank marker

struct AbGroupDescriptor {
  long free_rank = 0;                 // >= 0, or kOmega
  std::vector<Int> torsion;           // prime powers, sorted ascending
  std::vector<Int> torsion_omega;     // prime powers q with (Z/q)^w summands
  bool exact = true;                  // false: descriptor is only an upper bound
  std::string bound_note;             // why the bound is not known to be exact

  bool is_trivial() const {
    return free_rank == 0 && torsion.empty() && torsion_omega.empty();
  }

  bool operator==(const AbGroupDescriptor& o) const {
    return free_rank == o.free_rank && torsion == o.torsion &&
           torsion_omega == o.torsion_omega && exact == o.exact;
  }
};

inline AbGroupDescriptor ab_trivial() { return {}; }
inline AbGroupDescriptor ab_free(long rank) { return {rank, {}, {}, true, {}}; }

//! Z/n split into prime-power cyclic factors.
inline std::vector<Int> prime_power_parts(Int n) {
  if (n < 0) n = -n;
  if (n <= 1) return {};
  std::vector<Int> parts;
  Int rest = n;
  for (Int p = 2; p * p <= rest; p == 2 ? p = 3 : p += 2) {
    if (rest % p != 0) continue;
    Int q = 1;
    while (rest % p == 0) { q *= p; rest /= p; }
    parts.push_back(q);
  }
  if (rest > 1) parts.push_back(rest);
  std::sort(parts.begin(), parts.end());
  return parts;
}

inline AbGroupDescriptor ab_cyclic(const Int& n) {
  AbGroupDescriptor g;
  g.torsion = prime_power_parts(n);
  return g;
}

//! Direct sum; a bound summand makes the sum a bound.
inline AbGroupDescriptor ab_sum(const AbGroupDescriptor& a, const AbGroupDescriptor& b) {
  AbGroupDescriptor g;
  g.free_rank = (a.free_rank == kOmega || b.free_rank == kOmega)
                    ? kOmega
                    : a.free_rank + b.free_rank;
  g.torsion = a.torsion;
  g.torsion.insert(g.torsion.end(), b.torsion.begin(), b.torsion.end());
  std::sort(g.torsion.begin(), g.torsion.end());
  g.torsion_omega = a.torsion_omega;
  g.torsion_omega.insert(g.torsion_omega.end(), b.torsion_omega.begin(),
                         b.torsion_omega.end());
  std::sort(g.torsion_omega.begin(), g.torsion_omega.end());
  g.exact = a.exact && b.exact;
  g.bound_note = !a.exact ? a.bound_note : b.bound_note;
  return g;
}

//! Cokernel of an integer relation matrix acting on Z^generators: Smith normal
//! form by exact pivoting. rels is rows x generators, row-major.
inline AbGroupDescriptor group_from_presentation(size_t generators,
                                                 std::vector<std::vector<Int>> rels) {
  for (const auto& row : rels)
    if (row.size() != generators)
      throw dimension_mismatch("relation row width does not match generator count");
  size_t rows = rels.size();
  auto at = [&](size_t r, size_t c) -> Int& { return rels[r][c]; };

  size_t t = 0;  // current pivot index
  std::vector<Int> diag;
  while (t < rows && t < generators) {
    // Find the entry of least absolute value in the remaining block.
    size_t pr = rows, pc = generators;
    Int best = 0;
    for (size_t r = t; r < rows; ++r)
      for (size_t c = t; c < generators; ++c) {
        if (at(r, c) == 0) continue;
        Int a = abs(at(r, c));
        if (pr == rows || a < best) { pr = r; pc = c; best = a; }
      }
    if (pr == rows) break;  // block is zero
    std::swap(rels[t], rels[pr]);
    for (size_t r = 0; r < rows; ++r) std::swap(at(r, t), at(r, pc));

    bool reduced = true;
    for (size_t r = t + 1; r < rows; ++r) {
      Int q = at(r, t) / at(t, t);
      if (q != 0)
        for (size_t c = t; c < generators; ++c) at(r, c) -= q * at(t, c);
      if (at(r, t) != 0) reduced = false;
    }
    for (size_t c = t + 1; c < generators; ++c) {
      Int q = at(t, c) / at(t, t);
      if (q != 0)
        for (size_t r = t; r < rows; ++r) at(r, c) -= q * at(r, t);
      if (at(t, c) != 0) reduced = false;
    }
    if (!reduced) continue;  // smaller remainders appeared; pick a new pivot
    diag.push_back(abs(at(t, t)));
    ++t;
  }

  // Normalize divisibility d1 | d2 | ... via gcd/lcm sweeps.
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
      if (diag[i + 1] % diag[i] == 0) continue;
      Int g = gcd(diag[i], diag[i + 1]);
      Int l = diag[i] / g * diag[i + 1];
      diag[i] = g;
      diag[i + 1] = l;
      changed = true;
    }
  }

  AbGroupDescriptor out;
  out.free_rank = static_cast<long>(generators - diag.size());
  for (const Int& d : diag) {
    auto parts = prime_power_parts(d);
    out.torsion.insert(out.torsion.end(), parts.begin(), parts.end());
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

//! Canonical rendering: "0", "Z^2 + Z/2 + Z/4", "Z^w", "(Z/2)^w";
//! bounds carry a "[bound] " prefix.
inline std::string to_string(const AbGroupDescriptor& g) {
  std::vector<std::string> parts;
  if (g.free_rank == kOmega)
    parts.push_back("Z^w");
  else if (g.free_rank == 1)
    parts.push_back("Z");
  else if (g.free_rank > 1)
    parts.push_back("Z^" + std::to_string(g.free_rank));
  for (const Int& q : g.torsion) parts.push_back("Z/" + q.get_str());
  for (const Int& q : g.torsion_omega) parts.push_back("(Z/" + q.get_str() + ")^w");
  std::string body;
  if (parts.empty()) body = "0";
  else
    for (size_t i = 0; i < parts.size(); ++i)
      body += (i ? " + " : "") + parts[i];
  return g.exact ? body : "[bound] " + body;
}

}  // namespace octak

#endif
