#ifndef OCTAK_ERRORS_HPP
#define OCTAK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace octak {

// Base class for all octak domain errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// An exact comparison could not be decided within the configured bit budget.
// Callers map this to the "undecided" outcome; it is never a silent answer.
class precision_exhausted : public error {
public:
  explicit precision_exhausted(const std::string& what, long bits_used)
      : error(what), bits(bits_used) {}
  long bits;  // bits of interval precision reached before giving up
};

class dimension_mismatch : public error {
public:
  explicit dimension_mismatch(const std::string& what) : error(what) {}
};

// An enumeration would exceed the configured element budget.
class budget_exceeded : public error {
public:
  explicit budget_exceeded(const std::string& what) : error(what) {}
};

class not_idempotent : public error {
public:
  explicit not_idempotent(const std::string& what) : error(what) {}
};

class not_unit_norm : public error {
public:
  explicit not_unit_norm(const std::string& what) : error(what) {}
};

class unsupported_degree : public error {
public:
  explicit unsupported_degree(const std::string& what) : error(what) {}
};

class unsupported_stem : public error {
public:
  explicit unsupported_stem(const std::string& what) : error(what) {}
};

// Reduction to normal form failed in a structured, reportable way.
class normal_form_failure : public error {
public:
  explicit normal_form_failure(const std::string& what) : error(what) {}
};

// Text input rejected; carries 1-based line/column of the offending character.
class parse_error : public error {
public:
  parse_error(const std::string& what, int line_, int col_)
      : error(what + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_), col(col_) {}
  int line;
  int col;
};

}  // namespace octak

#endif
