#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace delta::pddl {

// Ground or schematic atom. Arguments starting with '?' are variables,
// anything else is an object/constant name. All identifiers are stored
// lower-case.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    bool is_ground() const;
    std::string str() const;  // "(pred a b)"

    auto operator<=>(const Atom&) const = default;
};

struct Literal {
    Atom atom;
    bool negated = false;

    std::string str() const;

    auto operator<=>(const Literal&) const = default;
};

struct TypedParam {
    std::string name;
    std::string type;

    auto operator<=>(const TypedParam&) const = default;
};

struct PredicateDecl {
    std::string name;
    std::vector<TypedParam> params;

    auto operator<=>(const PredicateDecl&) const = default;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedParam> params;
    std::vector<Literal> precondition;  // conjunction, positive or negated
    std::vector<Atom> add_effects;
    std::vector<Atom> del_effects;

    auto operator<=>(const ActionSchema&) const = default;
};

// A type declaration: `name - supertype`. The root type "object" is
// implicit and needs no declaration.
struct TypeDecl {
    std::string name;
    std::string supertype;

    auto operator<=>(const TypeDecl&) const = default;
};

struct DomainAst {
    std::string name;
    std::set<std::string> requirements;
    std::vector<TypeDecl> types;
    std::vector<PredicateDecl> predicates;
    std::vector<ActionSchema> actions;

    const PredicateDecl* find_predicate(const std::string& name) const;
    const ActionSchema* find_action(const std::string& name) const;

    // True if `sub` equals `super` or is a (transitive) descendant of it.
    bool is_subtype(const std::string& sub, const std::string& super) const;
    bool has_type(const std::string& name) const;

    auto operator<=>(const DomainAst&) const = default;
};

// Conjunction of ground literals.
struct GoalFormula {
    std::vector<Literal> literals;

    bool empty() const { return literals.empty(); }
    std::string str() const;

    auto operator<=>(const GoalFormula&) const = default;
};

struct ProblemAst {
    std::string name;
    std::string domain_name;
    std::vector<TypedParam> objects;  // typed constants, declaration order
    std::vector<Atom> init;           // ground atoms
    GoalFormula goal;

    const TypedParam* find_object(const std::string& name) const;

    auto operator<=>(const ProblemAst&) const = default;
};

// Returns a copy of `p0` with init and goal replaced. The new init/goal are
// type-checked against p0's object universe; init atoms are stored sorted so
// the result is stable regardless of the caller's set ordering.
ProblemAst replace_init_goal(const ProblemAst& p0, const DomainAst& d,
                             const std::vector<Atom>& init, const GoalFormula& goal);

}  // namespace delta::pddl
