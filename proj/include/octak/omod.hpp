#ifndef OCTAK_OMOD_HPP
#define OCTAK_OMOD_HPP

//! Free modules over the archimedean valuation ring: O(n) is the set of
//! vectors in K^n with sum of absolute values <= 1 (the solid n-octahedron).
//! Morphisms O(m) -> O(n) are matrices whose columns lie in O(n). Admissible
//! monomorphisms (cofibrations) have an exact normal form: monomial matrices
//! with norm-1 entries and pairwise distinct rows. Everything here is exact.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "norm.hpp"

namespace octak {

//! True iff the entries form a vector of the solid octahedron (L1 norm <= 1).
inline bool is_module_vector(const std::vector<FieldElement>& entries,
                             unsigned long max_bits = default_precision_cap()) {
  return cmp_norm_sum(entries, Rat(1), max_bits) != Ordering::GT;
}

//! Matrix over K whose columns all lie in the solid octahedron.
class OMatrix {
public:
  OMatrix(FieldDescriptor field, size_t rows, size_t cols,
          std::vector<FieldElement> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw dimension_mismatch("matrix entry count does not match shape");
    for (const auto& e : entries_)
      if (e.field != field_) throw dimension_mismatch("matrix entry from wrong field");
    for (size_t c = 0; c < cols_; ++c) {
      if (!is_module_vector(column(c)))
        throw error("column " + std::to_string(c) +
                    " exceeds the unit octahedron (L1 norm > 1)");
    }
  }

  static OMatrix zero(const FieldDescriptor& f, size_t rows, size_t cols) {
    return OMatrix(f, rows, cols,
                   std::vector<FieldElement>(rows * cols, fe_zero(f)));
  }
  static OMatrix identity(const FieldDescriptor& f, size_t n) {
    OMatrix m = zero(f, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, fe_one(f));
    return m;
  }

  const FieldDescriptor& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  const FieldElement& at(size_t r, size_t c) const { return entries_[r * cols_ + c]; }
  void set(size_t r, size_t c, FieldElement v) { entries_[r * cols_ + c] = std::move(v); }

  std::vector<FieldElement> column(size_t c) const {
    std::vector<FieldElement> out;
    out.reserve(rows_);
    for (size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
    return out;
  }

  bool operator==(const OMatrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           entries_ == o.entries_;
  }
  bool operator!=(const OMatrix& o) const { return !(*this == o); }

private:
  FieldDescriptor field_;
  size_t rows_, cols_;
  std::vector<FieldElement> entries_;  // row-major
};

//! Matrix product; the product of octahedron-column matrices stays within the
//! octahedron (triangle inequality), so revalidation only guards internal bugs.
inline OMatrix operator*(const OMatrix& a, const OMatrix& b) {
  if (a.field() != b.field()) throw dimension_mismatch("matrix product across fields");
  if (a.cols() != b.rows()) throw dimension_mismatch("matrix product shape mismatch");
  std::vector<FieldElement> entries(a.rows() * b.cols(), fe_zero(a.field()));
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a.at(r, k).is_zero()) continue;
      for (size_t c = 0; c < b.cols(); ++c)
        entries[r * b.cols() + c] = entries[r * b.cols() + c] + a.at(r, k) * b.at(k, c);
    }
  return OMatrix(a.field(), a.rows(), b.cols(), std::move(entries));
}

//! Unconstrained matrix over the field K (base change along O -> K).
struct KMatrix {
  FieldDescriptor field;
  size_t rows = 0, cols = 0;
  std::vector<FieldElement> entries;  // row-major

  const FieldElement& at(size_t r, size_t c) const { return entries[r * cols + c]; }
  FieldElement& at(size_t r, size_t c) { return entries[r * cols + c]; }
};

inline KMatrix base_change_K(const OMatrix& m) {
  KMatrix k{m.field(), m.rows(), m.cols(), {}};
  k.entries.reserve(m.rows() * m.cols());
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) k.entries.push_back(m.at(r, c));
  return k;
}

//! Rank over K by exact Gaussian elimination.
inline size_t rank(KMatrix m) {
  size_t rk = 0;
  for (size_t c = 0; c < m.cols && rk < m.rows; ++c) {
    size_t pivot = m.rows;
    for (size_t r = rk; r < m.rows; ++r)
      if (!m.at(r, c).is_zero()) { pivot = r; break; }
    if (pivot == m.rows) continue;
    for (size_t cc = 0; cc < m.cols; ++cc)
      std::swap(m.at(rk, cc), m.at(pivot, cc));
    for (size_t r = rk + 1; r < m.rows; ++r) {
      if (m.at(r, c).is_zero()) continue;
      FieldElement factor = m.at(r, c) / m.at(rk, c);
      for (size_t cc = c; cc < m.cols; ++cc)
        m.at(r, cc) = m.at(r, cc) - factor * m.at(rk, cc);
    }
    ++rk;
  }
  return rk;
}

//! Injectivity of the induced map K^cols -> K^rows.
inline bool is_monomorphism(const OMatrix& m) {
  return rank(base_change_K(m)) == m.cols();
}

//! Normal form of an admissible monomorphism O(n_from) >-> O(n_to):
//! e_i |-> units[i] * e_{col_to_row[i]} with col_to_row injective.
struct CofibCertificate {
  FieldDescriptor field;
  size_t n_from = 0, n_to = 0;
  std::vector<size_t> col_to_row;      // size n_from, injective
  std::vector<FieldElement> units;     // size n_from, all norm 1
};

inline OMatrix cert_to_matrix(const CofibCertificate& c) {
  OMatrix m = OMatrix::zero(c.field, c.n_to, c.n_from);
  for (size_t i = 0; i < c.n_from; ++i) m.set(c.col_to_row[i], i, c.units[i]);
  return m;
}

//! Certificates compose like the underlying monomial matrices.
inline CofibCertificate compose(const CofibCertificate& g, const CofibCertificate& f) {
  if (f.field != g.field || f.n_to != g.n_from)
    throw dimension_mismatch("certificate composition mismatch");
  CofibCertificate out{f.field, f.n_from, g.n_to, {}, {}};
  for (size_t i = 0; i < f.n_from; ++i) {
    size_t mid = f.col_to_row[i];
    out.col_to_row.push_back(g.col_to_row[mid]);
    out.units.push_back(g.units[mid] * f.units[i]);
  }
  return out;
}

struct CofibRefusal {
  enum class Kind { NotMono, NonUnitEntry, SharedRow, MultipleEntries };
  Kind kind;
  size_t row = 0, col = 0;
  std::string message;
};

inline std::string refusal_kind_name(CofibRefusal::Kind k) {
  switch (k) {
    case CofibRefusal::Kind::NotMono: return "NotMono";
    case CofibRefusal::Kind::NonUnitEntry: return "NonUnitEntry";
    case CofibRefusal::Kind::SharedRow: return "SharedRow";
    case CofibRefusal::Kind::MultipleEntries: return "MultipleEntries";
  }
  return "?";
}

using CofibCheckResult = std::variant<CofibCertificate, CofibRefusal>;

//! Decide admissibility by normal form, never by cokernel search. Per-column
//! clause order: zero column, then entry norms, then entry multiplicity; then
//! row-sharing across columns. A multi-entry column of a valid matrix always
//! carries a non-unit entry (column norm <= 1), which that order surfaces.
inline CofibCheckResult is_cofibration(const OMatrix& m) {
  CofibCertificate cert{m.field(), m.cols(), m.rows(), {}, {}};
  std::vector<std::optional<size_t>> row_owner(m.rows());
  for (size_t c = 0; c < m.cols(); ++c) {
    std::vector<size_t> support;
    for (size_t r = 0; r < m.rows(); ++r)
      if (!m.at(r, c).is_zero()) support.push_back(r);
    if (support.empty())
      return CofibRefusal{CofibRefusal::Kind::NotMono, 0, c,
                          "column " + std::to_string(c) + " is zero"};
    for (size_t r : support) {
      if (!is_unit_norm(m.at(r, c)))
        return CofibRefusal{CofibRefusal::Kind::NonUnitEntry, r, c,
                            "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                ") = " + to_string(m.at(r, c)) + " has norm " +
                                to_string(norm(m.at(r, c))) + " != 1"};
    }
    if (support.size() > 1)
      return CofibRefusal{CofibRefusal::Kind::MultipleEntries, support[0], c,
                          "column " + std::to_string(c) + " has " +
                              std::to_string(support.size()) + " nonzero entries"};
    size_t r = support[0];
    if (row_owner[r])
      return CofibRefusal{CofibRefusal::Kind::SharedRow, r, c,
                          "row " + std::to_string(r) + " hit by columns " +
                              std::to_string(*row_owner[r]) + " and " + std::to_string(c)};
    row_owner[r] = c;
    cert.col_to_row.push_back(r);
    cert.units.push_back(m.at(r, c));
  }
  return cert;
}

//! Cokernel of a cofibration: free on the unhit rows, in increasing order.
struct CokernelData {
  size_t rank = 0;
  std::vector<size_t> coker_rows;  // unhit rows of the target, increasing
  OMatrix projection;              // (n_to - n_from) x n_to
};

inline CokernelData cokernel(const CofibCertificate& c) {
  std::vector<bool> hit(c.n_to, false);
  for (size_t r : c.col_to_row) hit[r] = true;
  std::vector<size_t> rowsleft;
  for (size_t r = 0; r < c.n_to; ++r)
    if (!hit[r]) rowsleft.push_back(r);
  OMatrix proj = OMatrix::zero(c.field, rowsleft.size(), c.n_to);
  for (size_t k = 0; k < rowsleft.size(); ++k) proj.set(k, rowsleft[k], fe_one(c.field));
  return CokernelData{rowsleft.size(), rowsleft, std::move(proj)};
}

//! The unique automorphism phi of O(n) with phi . iota = standard inclusion
//! and proj . phi = cokernel projection: e_{J(i)} |-> units[i]^-1 e_i, and the
//! unhit rows are shifted, in increasing order, onto the cokernel coordinates.
inline OMatrix splitting_iso(const CofibCertificate& c) {
  OMatrix phi = OMatrix::zero(c.field, c.n_to, c.n_to);
  for (size_t i = 0; i < c.n_from; ++i)
    phi.set(i, c.col_to_row[i], inverse(c.units[i]));
  CokernelData ck = cokernel(c);
  for (size_t k = 0; k < ck.coker_rows.size(); ++k)
    phi.set(c.n_from + k, ck.coker_rows[k], fe_one(c.field));

  // phi . iota must be the standard inclusion; the lower block must be the
  // cokernel projection. Both hold by construction; verify exactly anyway.
  OMatrix incl = OMatrix::zero(c.field, c.n_to, c.n_from);
  for (size_t i = 0; i < c.n_from; ++i) incl.set(i, i, fe_one(c.field));
  if (phi * cert_to_matrix(c) != incl)
    throw error("internal: splitting iso does not straighten the inclusion");
  for (size_t k = 0; k < ck.rank; ++k)
    for (size_t j = 0; j < c.n_to; ++j)
      if (phi.at(c.n_from + k, j) != ck.projection.at(k, j))
        throw error("internal: splitting iso lower block is not the projection");
  return phi;
}

//! Cobase change of the cofibration iota along f: O(n_from) -> O(m).
//! The pushout is O(m + coker rank); the new cofibration is the standard
//! inclusion and `attach` extends f over the split complement.
struct PushoutData {
  CofibCertificate cofib;  // O(m) >-> O(m + n_to - n_from)
  OMatrix attach;          // (m + n_to - n_from) x n_to
};

inline PushoutData pushout(const CofibCertificate& iota, const OMatrix& f) {
  if (f.field() != iota.field) throw dimension_mismatch("pushout across fields");
  if (f.cols() != iota.n_from)
    throw dimension_mismatch("pushout: map domain does not match cofibration domain");
  size_t m = f.rows();
  CokernelData ck = cokernel(iota);
  size_t total = m + ck.rank;

  CofibCertificate incl{iota.field, m, total, {}, {}};
  for (size_t i = 0; i < m; ++i) {
    incl.col_to_row.push_back(i);
    incl.units.push_back(fe_one(iota.field));
  }

  OMatrix attach = OMatrix::zero(iota.field, total, iota.n_to);
  for (size_t i = 0; i < iota.n_from; ++i) {
    FieldElement scale = inverse(iota.units[i]);
    for (size_t r = 0; r < m; ++r)
      attach.set(r, iota.col_to_row[i], scale * f.at(r, i));
  }
  for (size_t k = 0; k < ck.rank; ++k)
    attach.set(m + k, ck.coker_rows[k], fe_one(iota.field));

  // Exact commuting square: attach . iota = incl . f.
  if (attach * cert_to_matrix(iota) != cert_to_matrix(incl) * f)
    throw error("internal: pushout square does not commute");
  return PushoutData{std::move(incl), std::move(attach)};
}

//! Monomial decomposition of an automorphism of O(n): units indexed by row,
//! perm maps column index to row index.
struct WreathDecomposition {
  std::vector<FieldElement> units;  // by row
  std::vector<size_t> perm;         // column -> row
};

inline std::optional<WreathDecomposition> is_automorphism(const OMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto r = is_cofibration(m);
  if (!std::holds_alternative<CofibCertificate>(r)) return std::nullopt;
  const auto& cert = std::get<CofibCertificate>(r);
  WreathDecomposition d;
  d.perm = cert.col_to_row;
  d.units.assign(m.rows(), fe_one(m.field()));
  for (size_t i = 0; i < cert.n_from; ++i) d.units[cert.col_to_row[i]] = cert.units[i];
  return d;
}

//! A finitely generated projective module presented by an exact idempotent.
struct ProjectiveModule {
  OMatrix idempotent;

  explicit ProjectiveModule(OMatrix a) : idempotent(std::move(a)) {
    if (idempotent.rows() != idempotent.cols())
      throw not_idempotent("projective module presentation must be square");
    if (idempotent * idempotent != idempotent)
      throw not_idempotent("matrix is not idempotent over K");
  }
};

//! Class in K_0(O) = Z: free modules detect rank over K.
inline size_t k0_class(const ProjectiveModule& p) {
  return rank(base_change_K(p.idempotent));
}

}  // namespace octak

#endif
