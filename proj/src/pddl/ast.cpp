#include "delta/pddl/ast.hpp"

#include <algorithm>

#include "delta/pddl/errors.hpp"

namespace delta::pddl {

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(),
                        [](const std::string& a) { return !a.empty() && a[0] == '?'; });
}

std::string Atom::str() const {
    std::string out = "(" + predicate;
    for (const auto& a : args) {
        out += ' ';
        out += a;
    }
    out += ')';
    return out;
}

std::string Literal::str() const {
    if (negated)
        return "(not " + atom.str() + ")";
    return atom.str();
}

std::string GoalFormula::str() const {
    std::string out = "(and";
    for (const auto& lit : literals) {
        out += ' ';
        out += lit.str();
    }
    out += ')';
    return out;
}

const PredicateDecl* DomainAst::find_predicate(const std::string& name) const {
    for (const auto& p : predicates)
        if (p.name == name)
            return &p;
    return nullptr;
}

const ActionSchema* DomainAst::find_action(const std::string& name) const {
    for (const auto& a : actions)
        if (a.name == name)
            return &a;
    return nullptr;
}

bool DomainAst::has_type(const std::string& name) const {
    if (name == "object")
        return true;
    for (const auto& t : types)
        if (t.name == name)
            return true;
    return false;
}

bool DomainAst::is_subtype(const std::string& sub, const std::string& super) const {
    if (sub == super || super == "object")
        return true;
    std::string cur = sub;
    // Walk up the supertype chain. Cycles are rejected at parse time, so
    // this terminates.
    while (cur != "object") {
        const TypeDecl* decl = nullptr;
        for (const auto& t : types)
            if (t.name == cur) {
                decl = &t;
                break;
            }
        if (!decl)
            return false;
        cur = decl->supertype;
        if (cur == super)
            return true;
    }
    return false;
}

const TypedParam* ProblemAst::find_object(const std::string& name) const {
    for (const auto& o : objects)
        if (o.name == name)
            return &o;
    return nullptr;
}

namespace {

void check_ground_literal(const Atom& atom, const DomainAst& d, const ProblemAst& p,
                          const std::string& where) {
    const PredicateDecl* decl = d.find_predicate(atom.predicate);
    if (!decl)
        throw SemanticError("undeclared predicate '" + atom.predicate + "' in " + where);
    if (decl->params.size() != atom.args.size())
        throw SemanticError("predicate '" + atom.predicate + "' expects " +
                            std::to_string(decl->params.size()) + " arguments, got " +
                            std::to_string(atom.args.size()) + " in " + where);
    for (size_t i = 0; i < atom.args.size(); ++i) {
        const TypedParam* obj = p.find_object(atom.args[i]);
        if (!obj)
            throw UndeclaredItemError(atom.args[i], where);
        if (!d.is_subtype(obj->type, decl->params[i].type))
            throw SemanticError("object '" + obj->name + "' of type '" + obj->type +
                                "' is not compatible with parameter type '" +
                                decl->params[i].type + "' of predicate '" + atom.predicate +
                                "' in " + where);
    }
}

}  // namespace

ProblemAst replace_init_goal(const ProblemAst& p0, const DomainAst& d,
                             const std::vector<Atom>& init, const GoalFormula& goal) {
    ProblemAst p = p0;
    for (const Atom& a : init) {
        if (!a.is_ground())
            throw SemanticError("init atom " + a.str() + " is not ground");
        check_ground_literal(a, d, p0, "init");
    }
    for (const Literal& lit : goal.literals) {
        if (!lit.atom.is_ground())
            throw SemanticError("goal literal " + lit.str() + " is not ground");
        check_ground_literal(lit.atom, d, p0, "goal");
    }
    p.init = init;
    std::sort(p.init.begin(), p.init.end());
    p.init.erase(std::unique(p.init.begin(), p.init.end()), p.init.end());
    p.goal = goal;
    return p;
}

}  // namespace delta::pddl
