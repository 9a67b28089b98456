#ifndef OCTAK_FIELD_HPP
#define OCTAK_FIELD_HPP

//! Exact coefficient fields: the rationals, real quadratic extensions
//! Q(sqrt(d)) with a chosen real embedding, and the Gaussian numbers Q(i).
//! Elements are pairs (a, b) representing a + b*theta with theta^2 = d
//! (theta = i means d = -1). All arithmetic is exact.

#include <cctype>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace octak {

enum class FieldKind { Rationals, RealQuadratic, Gaussian };

struct FieldDescriptor {
  FieldKind kind = FieldKind::Rationals;
  // RealQuadratic only: the squarefree radicand d > 1 and the embedding sign
  // (+1 sends sqrt(d) to the positive real root, -1 to the negative one).
  long d = 0;
  int embedding_sign = +1;

  static FieldDescriptor rationals() { return {}; }
  static FieldDescriptor gaussian() {
    FieldDescriptor f;
    f.kind = FieldKind::Gaussian;
    f.d = -1;
    return f;
  }
  static FieldDescriptor real_quadratic(long d, int embedding_sign = +1) {
    if (d <= 1) throw error("real quadratic radicand must be > 1");
    for (long p = 2; p * p <= d; ++p) {
      if (d % (p * p) == 0) throw error("real quadratic radicand must be squarefree");
    }
    if (embedding_sign != 1 && embedding_sign != -1)
      throw error("embedding sign must be +1 or -1");
    FieldDescriptor f;
    f.kind = FieldKind::RealQuadratic;
    f.d = d;
    f.embedding_sign = embedding_sign;
    return f;
  }

  // theta^2 as an exact rational: d for real quadratic, -1 for Gaussian.
  Rat theta_squared() const {
    if (kind == FieldKind::Rationals) throw error("rationals have no irrational part");
    return Rat(kind == FieldKind::Gaussian ? -1 : d);
  }

  bool operator==(const FieldDescriptor& o) const {
    if (kind != o.kind) return false;
    if (kind == FieldKind::RealQuadratic)
      return d == o.d && embedding_sign == o.embedding_sign;
    return true;
  }
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }

  std::string to_string() const {
    switch (kind) {
      case FieldKind::Rationals: return "Q";
      case FieldKind::Gaussian: return "Q(i)";
      case FieldKind::RealQuadratic: {
        std::string s = "Q(sqrt(" + std::to_string(d) + ")";
        if (embedding_sign < 0) s += ",conj";
        return s + ")";
      }
    }
    return "?";
  }
};

//! Parse a field name: Q | Q(i) | Q(sqrt(D)) | Q(sqrt(D),conj).
inline FieldDescriptor parse_field_descriptor(const std::string& s) {
  if (s == "Q") return FieldDescriptor::rationals();
  if (s == "Q(i)") return FieldDescriptor::gaussian();
  const std::string pre = "Q(sqrt(";
  if (s.rfind(pre, 0) == 0) {
    size_t pos = pre.size();
    size_t close = s.find(')', pos);
    if (close != std::string::npos) {
      std::string digits = s.substr(pos, close - pos);
      std::string rest = s.substr(close + 1);
      bool ok = !digits.empty();
      for (char c : digits) ok = ok && isdigit(static_cast<unsigned char>(c));
      if (ok && (rest == ")" || rest == ",conj)")) {
        return FieldDescriptor::real_quadratic(std::stol(digits),
                                               rest == ")" ? +1 : -1);
      }
    }
  }
  throw parse_error("unknown field '" + s + "' (expected Q, Q(i), Q(sqrt(D)) or Q(sqrt(D),conj))", 1, 1);
}

struct FieldElement {
  FieldDescriptor field;
  Rat a;  // rational part
  Rat b;  // coefficient of theta; must be 0 over the plain rationals

  FieldElement() = default;
  FieldElement(FieldDescriptor f, Rat a_, Rat b_ = Rat(0))
      : field(std::move(f)), a(std::move(a_)), b(std::move(b_)) {
    if (field.kind == FieldKind::Rationals && sgn(b) != 0)
      throw error("rational field element with irrational part");
  }

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  bool is_rational() const { return sgn(b) == 0; }
};

inline void require_same_field(const FieldElement& x, const FieldElement& y) {
  if (x.field != y.field) throw dimension_mismatch("field elements from different fields");
}

inline FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  return FieldElement(x.field, x.a + y.a, x.b + y.b);
}

inline FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  return FieldElement(x.field, x.a - y.a, x.b - y.b);
}

inline FieldElement operator-(const FieldElement& x) {
  return FieldElement(x.field, -x.a, -x.b);
}

inline FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y);
  if (x.field.kind == FieldKind::Rationals)
    return FieldElement(x.field, x.a * y.a);
  Rat t = x.field.theta_squared();
  return FieldElement(x.field, x.a * y.a + x.b * y.b * t, x.a * y.b + x.b * y.a);
}

inline bool operator==(const FieldElement& x, const FieldElement& y) {
  return x.field == y.field && x.a == y.a && x.b == y.b;
}
inline bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

//! Multiplicative inverse; theta^2 being a nonsquare (or negative) rational
//! guarantees a^2 - b^2*theta^2 != 0 for nonzero elements.
inline FieldElement inverse(const FieldElement& x) {
  if (x.is_zero()) throw error("inverse of zero");
  if (x.field.kind == FieldKind::Rationals)
    return FieldElement(x.field, 1 / x.a);
  Rat t = x.field.theta_squared();
  Rat n = x.a * x.a - x.b * x.b * t;
  return FieldElement(x.field, x.a / n, -x.b / n);
}

inline FieldElement operator/(const FieldElement& x, const FieldElement& y) {
  return x * inverse(y);
}

//! Galois conjugate a - b*theta.
inline FieldElement conjugate(const FieldElement& x) {
  return FieldElement(x.field, x.a, -x.b);
}

inline FieldElement fe_zero(const FieldDescriptor& f) { return FieldElement(f, Rat(0)); }
inline FieldElement fe_one(const FieldDescriptor& f) { return FieldElement(f, Rat(1)); }

//! Canonical text form. Pure rationals print as "a"; elements with an
//! irrational part always print both terms, e.g. "0+1*i", "1/2-1/3*sqrt(5)".
inline std::string to_string(const FieldElement& x) {
  if (x.is_rational()) return rat_to_string(x.a);
  std::string irr = x.field.kind == FieldKind::Gaussian
                        ? "i"
                        : "sqrt(" + std::to_string(x.field.d) + ")";
  Rat babs = abs(x.b);
  return rat_to_string(x.a) + (sgn(x.b) < 0 ? "-" : "+") + rat_to_string(babs) +
         "*" + irr;
}

//! Parse "a/b", "a/b+c/d*i" or "a/b+c/d*sqrt(D)" (integers allowed for any
//! rational; optional spaces around tokens). The irrational unit must match
//! the field descriptor.
inline FieldElement parse_field_element(const FieldDescriptor& f,
                                        const std::string& text, int line = 1) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto fail = [&](const std::string& msg) -> FieldElement {
    throw parse_error(msg, line, static_cast<int>(pos) + 1);
  };
  skip_ws();
  Rat a = parse_rational_at(text, pos, line);
  skip_ws();
  if (pos == text.size()) return FieldElement(f, a);

  char op = text[pos];
  if (op != '+' && op != '-') return fail("expected '+', '-' or end of element");
  ++pos;
  skip_ws();
  Rat b = parse_rational_at(text, pos, line);
  if (op == '-') b = -b;
  skip_ws();
  if (pos == text.size() || text[pos] != '*') return fail("expected '*'");
  ++pos;
  skip_ws();
  if (pos < text.size() && text[pos] == 'i') {
    ++pos;
    skip_ws();
    if (pos != text.size()) return fail("trailing characters after 'i'");
    if (f.kind != FieldKind::Gaussian) return fail("'i' outside Q(i)");
    return FieldElement(f, a, b);
  }
  const std::string kw = "sqrt(";
  if (text.compare(pos, kw.size(), kw) == 0) {
    pos += kw.size();
    size_t dstart = pos;
    std::string digits;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos])))
      digits += text[pos++];
    if (digits.empty()) {
      pos = dstart;
      return fail("expected radicand digits");
    }
    if (pos == text.size() || text[pos] != ')') return fail("expected ')'");
    ++pos;
    skip_ws();
    if (pos != text.size()) return fail("trailing characters after sqrt(...)");
    if (f.kind != FieldKind::RealQuadratic) return fail("sqrt(D) outside Q(sqrt(D))");
    if (std::stol(digits) != f.d)
      return fail("radicand " + digits + " does not match field " + f.to_string());
    return FieldElement(f, a, b);
  }
  return fail("expected 'i' or 'sqrt('");
}

}  // namespace octak

#endif
