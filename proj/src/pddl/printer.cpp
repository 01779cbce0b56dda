#include "delta/pddl/printer.hpp"

#include <sstream>

namespace delta::pddl {

namespace {

// Emits `a b - t c - u` grouping consecutive entries of equal type, which
// keeps declaration order and reparses to the identical vector.
void print_typed_list(std::ostream& os, const std::vector<TypedParam>& entries) {
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i > 0)
            os << ' ';
        os << entries[i].name;
        if (i + 1 == entries.size() || entries[i + 1].type != entries[i].type)
            os << " - " << entries[i].type;
    }
}

void print_literal_block(std::ostream& os, const std::vector<Literal>& literals,
                         const char* indent) {
    os << "(and\n";
    for (const auto& lit : literals)
        os << indent << "    " << lit.str() << "\n";
    os << indent << ")";
}

}  // namespace

std::string print_domain(const DomainAst& d) {
    std::ostringstream os;
    os << "(define (domain " << d.name << ")\n";
    if (!d.requirements.empty()) {
        os << "    (:requirements";
        for (const auto& r : d.requirements)  // std::set: sorted, stable
            os << ' ' << r;
        os << ")\n";
    }
    if (!d.types.empty()) {
        os << "    (:types\n        ";
        std::vector<TypedParam> entries;
        for (const auto& t : d.types)
            entries.push_back({t.name, t.supertype});
        print_typed_list(os, entries);
        os << "\n    )\n";
    }
    if (!d.predicates.empty()) {
        os << "    (:predicates\n";
        for (const auto& p : d.predicates) {
            os << "        (" << p.name;
            if (!p.params.empty()) {
                os << ' ';
                print_typed_list(os, p.params);
            }
            os << ")\n";
        }
        os << "    )\n";
    }
    for (const auto& a : d.actions) {
        os << "    (:action " << a.name << "\n";
        os << "        :parameters (";
        print_typed_list(os, a.params);
        os << ")\n";
        os << "        :precondition ";
        print_literal_block(os, a.precondition, "        ");
        os << "\n        :effect ";
        std::vector<Literal> effects;
        for (const auto& atom : a.add_effects)
            effects.push_back({atom, false});
        for (const auto& atom : a.del_effects)
            effects.push_back({atom, true});
        print_literal_block(os, effects, "        ");
        os << "\n    )\n";
    }
    os << ")\n";
    return os.str();
}

std::string print_problem(const ProblemAst& p) {
    std::ostringstream os;
    os << "(define (problem " << p.name << ")\n";
    os << "    (:domain " << p.domain_name << ")\n";
    if (!p.objects.empty()) {
        os << "    (:objects\n        ";
        print_typed_list(os, p.objects);
        os << "\n    )\n";
    }
    os << "    (:init\n";
    for (const auto& atom : p.init)
        os << "        " << atom.str() << "\n";
    os << "    )\n";
    os << "    (:goal (and\n";
    for (const auto& lit : p.goal.literals)
        os << "        " << lit.str() << "\n";
    os << "    ))\n";
    os << ")\n";
    return os.str();
}

std::string print_goal(const GoalFormula& g) {
    std::ostringstream os;
    os << "(and\n";
    for (const auto& lit : g.literals)
        os << "    " << lit.str() << "\n";
    os << ")\n";
    return os.str();
}

}  // namespace delta::pddl
