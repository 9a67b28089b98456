#ifndef OCTAK_RATIONAL_HPP
#define OCTAK_RATIONAL_HPP

//! Thin helpers over GMP's mpq_class / mpz_class: parsing, printing,
//! perfect-square tests and dyadic square-root enclosures. All decision
//! arithmetic in the library goes through these exact types; floating point
//! never appears in a decision path.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"

namespace octak {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rat& q) { return sgn(q); }

//! Parse "a" or "a/b" with optional leading sign. `pos` is a 0-based offset
//! into `text` used for error reporting; advances past the consumed token.
inline Rat parse_rational_at(const std::string& text, size_t& pos, int line) {
  size_t start = pos;
  auto fail = [&](const std::string& msg, size_t at) -> Rat {
    throw parse_error(msg, line, static_cast<int>(at) + 1);
  };
  std::string num;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    // GMP rejects a leading '+', so record only the '-'.
    if (text[pos] == '-') num += text[pos];
    ++pos;
  }
  size_t digits = 0;
  while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
    num += text[pos++];
    ++digits;
  }
  if (digits == 0) return fail("expected integer", start);
  std::string den = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den.clear();
    size_t dstart = pos;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
      den += text[pos++];
    }
    if (den.empty()) return fail("expected denominator", dstart);
    if (Int(den) == 0) return fail("zero denominator", dstart);
  }
  Rat q(num + "/" + den);
  q.canonicalize();
  return q;
}

//! Canonical text form: "a" when the denominator is 1, else "a/b".
inline std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_perfect_square(const Int& n) {
  if (sgn(n) < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

//! If q >= 0 is the square of a rational, return that nonnegative root.
inline std::optional<Rat> exact_sqrt(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!is_perfect_square(q.get_num()) || !is_perfect_square(q.get_den()))
    return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), q.get_den().get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

//! Exact dyadic enclosure of sqrt(q) for q >= 0: returns [lo, hi] with
//! lo <= sqrt(q) <= hi and hi - lo <= 2^-bits. Endpoints are exact rationals.
inline std::pair<Rat, Rat> sqrt_enclosure(const Rat& q, unsigned long bits) {
  if (sgn(q) < 0) throw error("sqrt_enclosure: negative radicand");
  if (sgn(q) == 0) return {Rat(0), Rat(0)};
  // sqrt(a/b) = sqrt(a*b)/b; scale by 4^bits so the integer sqrt carries
  // `bits` fractional bits.
  const Int& a = q.get_num();
  const Int& b = q.get_den();
  Int ab = a * b;
  Int scaled = ab << (2 * bits);
  Int root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());  // floor
  Int denom = b << bits;
  Rat lo(root, denom);
  lo.canonicalize();
  Rat hi(root + 1, denom);
  hi.canonicalize();
  return {lo, hi};
}

//! floor(log2(|q|)) + 1 for q != 0: number of bits above the binary point.
inline long magnitude_bits(const Rat& q) {
  if (sgn(q) == 0) return 0;
  long nb = mpz_sizeinbase(q.get_num().get_mpz_t(), 2);
  long db = mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
  return nb - db + 1;
}

}  // namespace octak

#endif
