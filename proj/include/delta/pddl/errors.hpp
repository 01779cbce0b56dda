#pragma once

#include <stdexcept>
#include <string>

namespace delta::pddl {

struct SourceLocation {
    int line = 0;  // 1-based; 0 means unknown
    int column = 0;

    std::string str() const;
};

class PddlError : public std::runtime_error {
  public:
    explicit PddlError(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexical or syntactic error, with a source location.
class ParseError : public PddlError {
  public:
    ParseError(const std::string& msg, SourceLocation loc);
    SourceLocation location() const { return loc_; }

  private:
    SourceLocation loc_;
};

// Structurally well-formed input that violates the language rules:
// arity or type mismatches, undeclared predicates, duplicate names.
class SemanticError : public PddlError {
  public:
    using PddlError::PddlError;
};

// A construct outside the supported subset (requirement flags other than
// :strips/:typing/:negative-preconditions, quantifiers, and so on).
class UnsupportedFeatureError : public PddlError {
  public:
    using PddlError::PddlError;
};

// An init atom or goal literal references an object that is not declared in
// the problem's :objects section. Kept distinct from SemanticError because
// the benchmark harness attributes it to its own failure class.
class UndeclaredItemError : public SemanticError {
  public:
    UndeclaredItemError(const std::string& object, const std::string& where);
    const std::string& object() const { return object_; }

  private:
    std::string object_;
};

}  // namespace delta::pddl
