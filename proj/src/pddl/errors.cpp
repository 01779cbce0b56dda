#include "delta/pddl/errors.hpp"

namespace delta::pddl {

std::string SourceLocation::str() const {
    if (line == 0)
        return "<unknown>";
    return std::to_string(line) + ":" + std::to_string(column);
}

ParseError::ParseError(const std::string& msg, SourceLocation loc)
    : PddlError(loc.str() + ": " + msg), loc_(loc) {}

UndeclaredItemError::UndeclaredItemError(const std::string& object, const std::string& where)
    : SemanticError("object '" + object + "' in " + where + " is not declared in :objects"),
      object_(object) {}

}  // namespace delta::pddl
