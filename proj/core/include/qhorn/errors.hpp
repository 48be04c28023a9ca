#ifndef QHORN_ERRORS_HPP_
#define QHORN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qhorn {

/// Base class for all engine errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A variable was used but never declared in the prefix.
class DeclarationError : public Error {
 public:
  explicit DeclarationError(const std::string& name)
      : Error("undeclared variable: " + name) {}
};

/// A clause has more than one positive literal.
class NotHornError : public Error {
 public:
  explicit NotHornError(const std::string& msg) : Error(msg) {}
};

/// Parse error with a source position.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string& msg)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Instance exceeds the brute-force oracle's variable cap.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

/// Oracle implication requires structurally identical prefixes.
class PrefixMismatch : public Error {
 public:
  PrefixMismatch() : Error("prefixes differ structurally") {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

/// Centre clause's selected literal does not match the side clause head.
class PivotMismatch : public Error {
 public:
  explicit PivotMismatch(const std::string& msg) : Error(msg) {}
};

/// Resolution pivot must be existential.
class UniversalPivot : public Error {
 public:
  explicit UniversalPivot(const std::string& name)
      : Error("resolution on universal variable: " + name) {}
};

/// Query contains variables absent from the program; route through the
/// new-variable handling first.
class NewVariableError : public Error {
 public:
  explicit NewVariableError(const std::string& name)
      : Error("query variable not in program: " + name) {}
};

class LiteralNotInClause : public Error {
 public:
  LiteralNotInClause() : Error("literal not in clause") {}
};

class ComplementMissing : public Error {
 public:
  ComplementMissing() : Error("complementary literal not in clause") {}
};

class ArityMismatch : public Error {
 public:
  explicit ArityMismatch(const std::string& pred)
      : Error("arity mismatch for predicate: " + pred) {}
};

}  // namespace qhorn

#endif  // QHORN_ERRORS_HPP_
