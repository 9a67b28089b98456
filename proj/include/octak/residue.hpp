#ifndef OCTAK_RESIDUE_HPP
#define OCTAK_RESIDUE_HPP

//! Finite residue modules at the archimedean place. Elements are faces of the
//! n-dimensional octahedron, encoded as sign vectors over {-1,0,+1}; the zero
//! face is the basepoint. Sign-pattern projectors act on faces through exact
//! rational arithmetic: a pattern column lifts to the barycenter of its face
//! and the evaluated vector is classified back to a face. Two classification
//! rules coexist on purpose:
//!
//!  * `project` (the defining quotient O(n) -> faces) keeps the componentwise
//!    sign of any vector in the closed unit L1 ball, including vectors of
//!    norm < 1;
//!  * induced module actions (`apply_projector`, quotient patterns) send a
//!    norm-deficient result to the basepoint. This collapse is what makes
//!    projector images finite pointed modules with the expected cardinality.
//!
//! On top of the face calculus sit short-exact-sequence certification
//! (`verify_ses`) and the class-group reduction engine (`k0_reduce`,
//! `k0_f_infinity`).

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "abgroup.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace octak {

// ---------------------------------------------------------------------------
// Faces
// ---------------------------------------------------------------------------

struct Face {
  std::vector<int> signs;  // each entry in {-1, 0, +1}

  size_t ambient() const { return signs.size(); }
  bool is_zero() const {
    return std::all_of(signs.begin(), signs.end(),
                       [](int s) { return s == 0; });
  }
  auto operator<=>(const Face&) const = default;
};

inline Face face_zero(size_t n) { return Face{std::vector<int>(n, 0)}; }

inline Face negate(const Face& f) {
  Face g = f;
  for (int& s : g.signs) s = -s;
  return g;
}

inline std::vector<size_t> face_support(const Face& f) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < f.signs.size(); ++i)
    if (f.signs[i] != 0) idx.push_back(i);
  return idx;
}

inline std::string face_to_string(const Face& f) {
  std::string out;
  out.reserve(f.signs.size());
  for (int s : f.signs) out += (s > 0 ? '+' : s < 0 ? '-' : '0');
  return out;
}

//! Parse a face literal over the alphabet {+,0,-}. `line` feeds diagnostics.
inline Face parse_face(const std::string& text, int line = 1) {
  Face f;
  f.signs.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '+': f.signs.push_back(1); break;
      case '0': f.signs.push_back(0); break;
      case '-': f.signs.push_back(-1); break;
      default:
        throw parse_error("expected '+', '0' or '-' in face literal", line,
                          static_cast<int>(i) + 1);
    }
  }
  return f;
}

//! All 3^n faces in lexicographic order (first coordinate most significant,
//! digit order -1 < 0 < +1). Refuses n > 12 to keep enumerations small.
inline std::vector<Face> enumerate_faces(size_t n) {
  if (n > 12)
    throw budget_exceeded("face enumeration is capped at ambient dimension 12");
  std::vector<Face> out;
  size_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= 3;
  out.reserve(total);
  Face f{std::vector<int>(n, -1)};
  for (size_t k = 0; k < total; ++k) {
    out.push_back(f);
    // odometer increment on the last coordinate
    for (size_t i = n; i-- > 0;) {
      if (f.signs[i] < 1) {
        ++f.signs[i];
        break;
      }
      f.signs[i] = -1;
    }
  }
  return out;
}

//! Componentwise sign of a vector in the closed unit L1 ball. This is the
//! defining quotient map onto faces: vectors of norm < 1 keep their sign
//! pattern here (only induced module actions collapse them).
inline Face project(const std::vector<Rat>& v) {
  Rat total(0);
  for (const Rat& x : v) total += abs(x);
  if (total > 1)
    throw error("vector lies outside the unit octahedron (L1 norm > 1)");
  Face f;
  f.signs.reserve(v.size());
  for (const Rat& x : v) f.signs.push_back(sign(x));
  return f;
}

//! Canonical point of a face: weight 1/#support on each supported coordinate.
//! The zero face lifts to the origin.
inline std::vector<Rat> barycentric_lift(const Face& f) {
  std::vector<Rat> v(f.signs.size(), Rat(0));
  long supp = 0;
  for (int s : f.signs) supp += (s != 0);
  if (supp == 0) return v;
  for (size_t i = 0; i < f.signs.size(); ++i)
    if (f.signs[i] != 0) v[i] = Rat(f.signs[i], supp);
  return v;
}

// ---------------------------------------------------------------------------
// Sign patterns
// ---------------------------------------------------------------------------

//! Rectangular matrix over {-1,0,+1}. Column j lifts to the barycenter of its
//! column face, so every pattern denotes an exact map of unit octahedra.
struct SignMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<int> entries;  // row-major

  SignMatrix() = default;
  SignMatrix(size_t r, size_t c)
      : rows(r), cols(c), entries(r * c, 0) {}

  int at(size_t r, size_t c) const { return entries[r * cols + c]; }
  void set(size_t r, size_t c, int v) { entries[r * cols + c] = v; }

  Face column_face(size_t c) const {
    Face f;
    f.signs.reserve(rows);
    for (size_t r = 0; r < rows; ++r) f.signs.push_back(at(r, c));
    return f;
  }

  bool operator==(const SignMatrix&) const = default;
};

inline SignMatrix sign_identity(size_t n) {
  SignMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

//! Parse one row per string over {+,0,-}; all rows must have equal length.
inline SignMatrix sign_matrix_from_rows(const std::vector<std::string>& rows) {
  SignMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols)
      throw parse_error("sign matrix rows have unequal lengths",
                        static_cast<int>(r) + 1, 1);
    Face f = parse_face(rows[r], static_cast<int>(r) + 1);
    for (size_t c = 0; c < m.cols; ++c) m.set(r, c, f.signs[c]);
  }
  return m;
}

inline std::vector<std::string> sign_matrix_to_rows(const SignMatrix& m) {
  std::vector<std::string> out;
  out.reserve(m.rows);
  for (size_t r = 0; r < m.rows; ++r) {
    std::string row;
    row.reserve(m.cols);
    for (size_t c = 0; c < m.cols; ++c) {
      int s = m.at(r, c);
      row += (s > 0 ? '+' : s < 0 ? '-' : '0');
    }
    out.push_back(row);
  }
  return out;
}

namespace detail {

//! Support size of each column; zero columns get weight 0 and contribute
//! nothing to evaluations.
inline std::vector<long> column_supports(const SignMatrix& m) {
  std::vector<long> w(m.cols, 0);
  for (size_t c = 0; c < m.cols; ++c)
    for (size_t r = 0; r < m.rows; ++r) w[c] += (m.at(r, c) != 0);
  return w;
}

//! w = M_B * v where M_B has the barycentric column lifts of B.
inline std::vector<Rat> pattern_times(const SignMatrix& b,
                                      const std::vector<Rat>& v) {
  if (v.size() != b.cols)
    throw dimension_mismatch("pattern applied to a vector of wrong length");
  std::vector<long> supp = column_supports(b);
  std::vector<Rat> w(b.rows, Rat(0));
  for (size_t c = 0; c < b.cols; ++c) {
    if (supp[c] == 0 || sign(v[c]) == 0) continue;
    Rat scale = v[c] / supp[c];
    for (size_t r = 0; r < b.rows; ++r)
      if (b.at(r, c) != 0) w[r] += b.at(r, c) * scale;
  }
  return w;
}

//! Module-action classifier: a norm-deficient value is the basepoint.
inline Face collapse_classify(const std::vector<Rat>& w) {
  Rat total(0);
  for (const Rat& x : w) total += abs(x);
  if (total > 1)
    throw error("internal: evaluated vector left the unit octahedron");
  if (total < 1) return face_zero(w.size());
  Face f;
  f.signs.reserve(w.size());
  for (const Rat& x : w) f.signs.push_back(sign(x));
  return f;
}

}  // namespace detail

//! Induced action of a rectangular pattern on a face of its source octahedron.
inline Face map_apply(const SignMatrix& b, const Face& f) {
  if (f.ambient() != b.cols)
    throw dimension_mismatch("face ambient does not match pattern columns");
  return detail::collapse_classify(detail::pattern_times(b, barycentric_lift(f)));
}

//! Endomorphism action of a square pattern.
inline Face apply_projector(const SignMatrix& a, const Face& f) {
  if (a.rows != a.cols)
    throw dimension_mismatch("projector pattern must be square");
  return map_apply(a, f);
}

//! A pattern is an idempotent projector when it fixes each of its column
//! faces. (Function idempotence on all faces follows and is exercised by the
//! test suite.)
inline bool is_idempotent_projector(const SignMatrix& a) {
  if (a.rows != a.cols)
    throw dimension_mismatch("projector pattern must be square");
  for (size_t c = 0; c < a.cols; ++c) {
    Face col = a.column_face(c);
    if (apply_projector(a, col) != col) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Face modules
// ---------------------------------------------------------------------------

//! Finite pointed submodule of the face module of an n-octahedron: contains
//! the zero face and is closed under negation.
struct FaceModule {
  size_t ambient = 0;
  std::set<Face> faces;

  size_t size() const { return faces.size(); }
  bool contains(const Face& f) const { return faces.count(f) != 0; }
  bool operator==(const FaceModule&) const = default;
};

inline FaceModule face_module_all(size_t n) {
  FaceModule m;
  m.ambient = n;
  for (const Face& f : enumerate_faces(n)) m.faces.insert(f);
  return m;
}

//! Image of an idempotent projector pattern: the projective module it
//! presents. Throws `not_idempotent` when the pattern does not fix its own
//! columns.
inline FaceModule module_image(const SignMatrix& a) {
  if (!is_idempotent_projector(a))
    throw not_idempotent("pattern does not fix its column faces");
  FaceModule m;
  m.ambient = a.rows;
  for (const Face& f : enumerate_faces(a.rows))
    m.faces.insert(apply_projector(a, f));
  return m;
}

// ---------------------------------------------------------------------------
// Short exact sequences
// ---------------------------------------------------------------------------

//! Monomorphism data: a pattern from the ambient of the sub to the ambient of
//! the middle module, evaluated with the module-action classifier.
struct MonoSpec {
  SignMatrix pattern;
};

//! Quotient map given as a plain coordinate deletion: the kept coordinates
//! (strictly increasing) survive, the rest are forgotten. Used when the sub
//! splits off as a block of coordinates.
struct CoordinateProjection {
  std::vector<size_t> kept;
};

//! Quotient map given as a pattern, evaluated with the module-action
//! classifier (norm-deficient values collapse to the basepoint).
struct PatternQuotient {
  SignMatrix pattern;
};

using EpiSpec = std::variant<CoordinateProjection, PatternQuotient>;

struct SesReport {
  bool ok = false;
  std::string failure;  // empty iff ok; names the first condition that broke
  size_t classes = 0;   // cokernel classes found by the relation engine
};

namespace detail {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

//! Componentwise sign, no collapse: classifies a combination of carrier
//! representatives as the face it denotes in the defining quotient.
inline Face sign_classify(const std::vector<Rat>& w) {
  Face f;
  f.signs.reserve(w.size());
  for (const Rat& x : w) f.signs.push_back(sign(x));
  return f;
}

}  // namespace detail

//! Certify mono -> mid -> quot as a short exact sequence of pointed face
//! modules. The cokernel relation on `mid` is built from the image of the
//! mono:
//!
//!  * split mode — the image is the full face set on a coordinate block T;
//!    two faces are related iff they agree outside T, and the quotient must
//!    be the coordinate projection onto the complement;
//!  * general mode — the image and every halved two-term combination of
//!    image barycenters are related to the basepoint (the combination is
//!    classified by its sign pattern, which is the face it represents).
//!
//! The epi must then be constant on relation classes, separate distinct
//! classes, and cover the claimed quotient module.
inline SesReport verify_ses(const MonoSpec& mono, const EpiSpec& epi,
                            const FaceModule& sub, const FaceModule& mid,
                            const FaceModule& quot) {
  if (mono.pattern.cols != sub.ambient || mono.pattern.rows != mid.ambient)
    throw dimension_mismatch("mono pattern shape does not match the modules");

  SesReport report;
  auto fail = [&](const std::string& why) {
    report.ok = false;
    report.failure = why;
    return report;
  };

  // Injectivity of the mono on the carrier, and image containment.
  std::set<Face> image;
  for (const Face& f : sub.faces) {
    Face g = map_apply(mono.pattern, f);
    if (!mid.contains(g))
      return fail("monomorphism image leaves the middle module");
    if (!image.insert(g).second)
      return fail("monomorphism is not injective on the carrier");
  }

  // Index the middle carrier.
  std::vector<Face> carrier(mid.faces.begin(), mid.faces.end());
  auto index_of = [&](const Face& f) -> std::optional<size_t> {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), f);
    if (it == carrier.end() || *it != f) return std::nullopt;
    return static_cast<size_t>(it - carrier.begin());
  };
  detail::UnionFind uf(carrier.size());
  const size_t zero_idx = *index_of(face_zero(mid.ambient));

  // Coordinate block spanned by the image.
  std::set<size_t> block;
  for (const Face& g : image)
    for (size_t i : face_support(g)) block.insert(i);
  size_t full_on_block = 0;
  for (const Face& f : mid.faces) {
    bool inside = true;
    for (size_t i : face_support(f)) inside &= (block.count(i) != 0);
    if (inside) ++full_on_block;
  }
  const bool split = (full_on_block == image.size());

  if (split) {
    // Faces agreeing outside the block are identified.
    std::map<std::vector<int>, size_t> rep;
    for (size_t k = 0; k < carrier.size(); ++k) {
      std::vector<int> outside;
      for (size_t i = 0; i < mid.ambient; ++i)
        if (!block.count(i)) outside.push_back(carrier[k].signs[i]);
      auto [it, fresh] = rep.emplace(std::move(outside), k);
      if (!fresh) uf.unite(k, it->second);
    }
  } else {
    for (const Face& g : image) uf.unite(*index_of(g), zero_idx);
    // Halved two-term combinations of image barycenters collapse to the
    // basepoint in the quotient; their sign class must exist in `mid`.
    std::vector<Face> img(image.begin(), image.end());
    for (const Face& a : img) {
      std::vector<Rat> va = barycentric_lift(a);
      for (const Face& b : img) {
        std::vector<Rat> w = barycentric_lift(b);
        for (size_t i = 0; i < w.size(); ++i) w[i] = va[i] / 2 + w[i] / 2;
        Face z = detail::sign_classify(w);
        auto zi = index_of(z);
        if (!zi) return fail("relation combination escapes the middle module");
        uf.unite(*zi, zero_idx);
      }
    }
  }

  // Evaluate the epi on the carrier.
  std::vector<Face> q(carrier.size());
  if (const auto* cp = std::get_if<CoordinateProjection>(&epi)) {
    if (cp->kept.size() != quot.ambient)
      throw dimension_mismatch("projection keeps the wrong number of coordinates");
    for (size_t i = 0; i < cp->kept.size(); ++i) {
      if (cp->kept[i] >= mid.ambient ||
          (i > 0 && cp->kept[i] <= cp->kept[i - 1]))
        throw dimension_mismatch("kept coordinates must be increasing and in range");
    }
    for (size_t k = 0; k < carrier.size(); ++k) {
      Face g;
      g.signs.reserve(cp->kept.size());
      for (size_t i : cp->kept) g.signs.push_back(carrier[k].signs[i]);
      q[k] = std::move(g);
    }
  } else {
    const auto& pq = std::get<PatternQuotient>(epi);
    if (pq.pattern.cols != mid.ambient || pq.pattern.rows != quot.ambient)
      throw dimension_mismatch("quotient pattern shape does not match the modules");
    for (size_t k = 0; k < carrier.size(); ++k)
      q[k] = map_apply(pq.pattern, carrier[k]);
  }

  // The epi must be the set quotient by the relation classes.
  std::map<size_t, Face> class_value;
  std::set<Face> seen;
  for (size_t k = 0; k < carrier.size(); ++k) {
    if (!quot.contains(q[k]))
      return fail("quotient map leaves the claimed cokernel");
    size_t root = uf.find(k);
    auto [it, fresh] = class_value.emplace(root, q[k]);
    if (!fresh && it->second != q[k])
      return fail("quotient map does not respect the cokernel relation");
    if (fresh && !seen.insert(q[k]).second)
      return fail("quotient map identifies distinct cokernel classes");
  }
  if (seen.size() != quot.size())
    return fail("quotient map misses part of the claimed cokernel");

  report.ok = true;
  report.classes = class_value.size();
  return report;
}

// ---------------------------------------------------------------------------
// Carrier bijections from signed coordinate maps
// ---------------------------------------------------------------------------

//! Target coordinate k reads source coordinate `source_of[k]`, scaled by
//! `sign_of[k]`. Such maps commute with barycentric evaluation, so carrier
//! bijectivity certifies a module isomorphism.
struct SignedCoordMap {
  std::vector<size_t> source_of;
  std::vector<int> sign_of;  // entries in {-1,+1}

  Face apply(const Face& f) const {
    Face g;
    g.signs.reserve(source_of.size());
    for (size_t k = 0; k < source_of.size(); ++k)
      g.signs.push_back(sign_of[k] * f.signs[source_of[k]]);
    return g;
  }
};

inline bool check_module_iso(const SignedCoordMap& map, const FaceModule& from,
                             const FaceModule& to) {
  std::set<Face> seen;
  for (const Face& f : from.faces) {
    Face g = map.apply(f);
    if (!to.contains(g)) return false;
    if (!seen.insert(g).second) return false;
  }
  return seen.size() == to.size();
}

// ---------------------------------------------------------------------------
// Class-group reduction
// ---------------------------------------------------------------------------

//! Conjugation by a diagonal sign matrix: entry (r,c) flips by
//! flips[r]*flips[c]. Preserves support, idempotence, and the module up to
//! the recorded signed-coordinate bijection.
struct ConjugationStep {
  std::vector<int> flips;  // entries in {-1,+1}
  SignMatrix before;
  SignMatrix after;
};

//! A generator whose column is zero, duplicated, or missing its diagonal
//! entry presents nothing new; deleting its row and column leaves an
//! isomorphic module (certified by a coordinate-deletion bijection).
struct EliminationStep {
  size_t column;
  std::string reason;
  SignMatrix before;
  SignMatrix after;
};

//! One application of the single-entry-row recursion: the module splits off
//! one rank-one summand against the minor, witnessed by a certified short
//! exact sequence.
struct PeelStep {
  size_t row;
  SignMatrix before;
  SignMatrix minor;
  MonoSpec mono;
  EpiSpec epi;
  SesReport witness;
};

using ReductionStep = std::variant<ConjugationStep, EliminationStep, PeelStep>;

struct ReductionTrace {
  SignMatrix input;
  std::vector<ReductionStep> steps;
  long rank_one_count = 0;  // [image(input)] = rank_one_count * [rank-one]
};

namespace detail {

inline SignMatrix delete_row_col(const SignMatrix& a, size_t i) {
  SignMatrix m(a.rows - 1, a.cols - 1);
  for (size_t r = 0, mr = 0; r < a.rows; ++r) {
    if (r == i) continue;
    for (size_t c = 0, mc = 0; c < a.cols; ++c) {
      if (c == i) continue;
      m.set(mr, mc, a.at(r, c));
      ++mc;
    }
    ++mr;
  }
  return m;
}

inline SignMatrix conjugate_pattern(const SignMatrix& a,
                                    const std::vector<int>& flips) {
  SignMatrix m(a.rows, a.cols);
  for (size_t r = 0; r < a.rows; ++r)
    for (size_t c = 0; c < a.cols; ++c)
      m.set(r, c, flips[r] * a.at(r, c) * flips[c]);
  return m;
}

}  // namespace detail

//! Conjugate an idempotent pattern by diagonal signs and certify that the
//! presented module is unchanged up to the sign bijection.
inline std::pair<SignMatrix, SignedCoordMap> conjugate_projector(
    const SignMatrix& a, const std::vector<int>& flips) {
  if (flips.size() != a.rows)
    throw dimension_mismatch("one sign flip per coordinate is required");
  for (int s : flips)
    if (s != 1 && s != -1) throw error("sign flips must be +1 or -1");
  SignMatrix after = detail::conjugate_pattern(a, flips);
  SignedCoordMap map;
  map.source_of.resize(a.rows);
  std::iota(map.source_of.begin(), map.source_of.end(), 0);
  map.sign_of = flips;
  if (!check_module_iso(map, module_image(a), module_image(after)))
    throw error("internal: sign conjugation failed to carry the module");
  return {after, map};
}

//! Reduce an idempotent pattern to a sum of rank-one classes. The trace
//! records, in order: eliminations of visibly redundant generators, diagonal
//! sign conjugations that make the peeled column nonnegative, and
//! single-entry-row peels each carrying a certified short exact sequence.
//! Patterns outside the reach of these moves raise `normal_form_failure`.
inline ReductionTrace k0_reduce(const SignMatrix& input) {
  if (input.rows != input.cols)
    throw dimension_mismatch("projector pattern must be square");
  if (!is_idempotent_projector(input))
    throw not_idempotent("pattern does not fix its column faces");

  ReductionTrace trace;
  trace.input = input;
  SignMatrix a = input;

  while (a.rows > 0) {
    const size_t n = a.rows;

    // Eliminations first: zero columns, duplicates, missing diagonals.
    std::optional<std::pair<size_t, std::string>> victim;
    for (size_t c = 0; c < n && !victim; ++c) {
      Face col = a.column_face(c);
      if (col.is_zero()) {
        victim = {c, "zero column"};
        break;
      }
      for (size_t c2 = 0; c2 < c; ++c2) {
        if (a.column_face(c2) == col) {
          victim = {c, "duplicate of column " + std::to_string(c2)};
          break;
        }
      }
      if (!victim && a.at(c, c) == 0) victim = {c, "diagonal entry absent"};
    }
    if (victim) {
      auto [c, reason] = *victim;
      SignMatrix minor = detail::delete_row_col(a, c);
      if (!is_idempotent_projector(minor))
        throw normal_form_failure(
            "eliminating column " + std::to_string(c) +
            " does not leave an idempotent pattern");
      SignedCoordMap drop;
      for (size_t i = 0; i < n; ++i) {
        if (i == c) continue;
        drop.source_of.push_back(i);
        drop.sign_of.push_back(1);
      }
      if (!check_module_iso(drop, module_image(a), module_image(minor)))
        throw normal_form_failure(
            "column " + std::to_string(c) + " (" + reason +
            ") is not redundant: deleting it changes the module");
      trace.steps.push_back(EliminationStep{c, reason, a, minor});
      a = std::move(minor);
      continue;
    }

    // Locate a row with a single nonzero entry. With all diagonals present
    // that entry sits on the diagonal.
    std::optional<size_t> peel_row;
    for (size_t r = 0; r < n && !peel_row; ++r) {
      size_t nonzero = 0;
      for (size_t c = 0; c < n; ++c) nonzero += (a.at(r, c) != 0);
      if (nonzero == 1) peel_row = r;
    }
    if (!peel_row)
      throw normal_form_failure(
          "no row with a single entry: the pattern is not in reducible form");
    const size_t r = *peel_row;
    if (a.at(r, r) < 0)
      throw normal_form_failure(
          "single-entry row " + std::to_string(r) +
          " has a negative diagonal entry");

    // Normalize the peeled column to nonnegative entries by conjugation.
    std::vector<int> flips(n, 1);
    bool need_conj = false;
    for (size_t j = 0; j < n; ++j) {
      if (j != r && a.at(j, r) < 0) {
        flips[j] = -1;
        need_conj = true;
      }
    }
    if (need_conj) {
      auto [after, map] = conjugate_projector(a, flips);
      (void)map;
      trace.steps.push_back(ConjugationStep{flips, a, after});
      a = std::move(after);
    }

    // Peel: rank-one -> image(a) -> image(minor).
    SignMatrix minor = detail::delete_row_col(a, r);
    if (!is_idempotent_projector(minor))
      throw normal_form_failure("minor at row " + std::to_string(r) +
                                " is not an idempotent pattern");
    FaceModule mid = module_image(a);
    FaceModule quot = module_image(minor);

    MonoSpec mono;
    mono.pattern = SignMatrix(n, 1);
    for (size_t j = 0; j < n; ++j) mono.pattern.set(j, 0, a.at(j, r));

    long col_support = 0;
    for (size_t j = 0; j < n; ++j) col_support += (a.at(j, r) != 0);
    EpiSpec epi = CoordinateProjection{};
    if (col_support == 1) {
      CoordinateProjection cp;
      for (size_t i = 0; i < n; ++i)
        if (i != r) cp.kept.push_back(i);
      epi = std::move(cp);
    } else {
      PatternQuotient pq;
      pq.pattern = SignMatrix(n - 1, n);
      for (size_t mr = 0; mr < n - 1; ++mr)
        for (size_t mc = 0; mc < n - 1; ++mc)
          pq.pattern.set(mr, mc + (mc >= r ? 1 : 0), minor.at(mr, mc));
      epi = std::move(pq);
    }

    SesReport witness = verify_ses(mono, epi, face_module_all(1), mid, quot);
    if (!witness.ok)
      throw normal_form_failure("peel at row " + std::to_string(r) +
                                " failed certification: " + witness.failure);
    trace.steps.push_back(PeelStep{r, a, minor, mono, epi, witness});
    trace.rank_one_count += 1;
    a = std::move(minor);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// The class group of the residue module category
// ---------------------------------------------------------------------------

struct K0Relation {
  std::string statement;
  MonoSpec mono;
  EpiSpec epi;
  FaceModule sub, mid, quot;
  SesReport witness;
};

struct K0FInfinityResult {
  AbGroupDescriptor group;
  std::vector<K0Relation> relations;
  ReductionTrace identity_trace;  // [F(2)] = 2[F(1)], peel-certified
};

//! The standard five-element projective module: image of the pattern
//! (+ 0 / + +).
inline SignMatrix standard_p_pattern() {
  return sign_matrix_from_rows({"+0", "++"});
}

//! Assemble the class group of the residue category from certified
//! relations. The two non-split sequences give [F(2)] = [F(1)] + [P] and
//! [P] = 2[F(1)]; the peel of the identity pattern gives [F(2)] = 2[F(1)].
//! Together they force the generator to vanish.
inline K0FInfinityResult k0_f_infinity() {
  K0FInfinityResult result;
  const SignMatrix p = standard_p_pattern();
  const FaceModule mod_p = module_image(p);
  const FaceModule f1 = face_module_all(1);
  const FaceModule f2 = face_module_all(2);

  {
    // F(1) >-> P ->> F(1), the rank-one summand inside P.
    K0Relation rel;
    rel.statement = "[P] = [F(1)] + [F(1)]";
    rel.mono.pattern = sign_matrix_from_rows({"+", "+"});
    rel.epi = PatternQuotient{sign_matrix_from_rows({"0+"})};
    rel.sub = f1;
    rel.mid = mod_p;
    rel.quot = f1;
    rel.witness = verify_ses(rel.mono, rel.epi, rel.sub, rel.mid, rel.quot);
    if (!rel.witness.ok)
      throw error("internal: rank-one summand of P failed certification: " +
                  rel.witness.failure);
    result.relations.push_back(std::move(rel));
  }
  {
    // P >-> F(2) ->> F(1), the standard inclusion of P.
    K0Relation rel;
    rel.statement = "[F(2)] = [P] + [F(1)]";
    rel.mono.pattern = sign_identity(2);
    rel.epi = PatternQuotient{sign_matrix_from_rows({"+0"})};
    rel.sub = mod_p;
    rel.mid = f2;
    rel.quot = f1;
    rel.witness = verify_ses(rel.mono, rel.epi, rel.sub, rel.mid, rel.quot);
    if (!rel.witness.ok)
      throw error("internal: standard inclusion of P failed certification: " +
                  rel.witness.failure);
    result.relations.push_back(std::move(rel));
  }

  result.identity_trace = k0_reduce(sign_identity(2));
  if (result.identity_trace.rank_one_count != 2)
    throw error("internal: identity pattern did not reduce to two rank-one classes");

  // Presentation on generators x = [F(1)], y = [P], z = [F(2)]:
  //   z = x + y,  y = 2x,  z = 2x.
  std::vector<std::vector<Int>> rels = {
      {Int(-1), Int(-1), Int(1)},
      {Int(-2), Int(1), Int(0)},
      {Int(-2), Int(0), Int(1)},
  };
  result.group = group_from_presentation(3, rels);
  return result;
}

}  // namespace octak

#endif
