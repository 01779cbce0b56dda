#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "delta/pddl/ast.hpp"

namespace delta::ground {

class GroundingLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Bijection between ground atoms and dense integer ids, stable within one
// grounding (ids follow the lexicographic order of the atoms).
class FactIndex {
  public:
    int add(const pddl::Atom& atom);
    int id_of(const pddl::Atom& atom) const;  // -1 when absent
    const pddl::Atom& atom_of(int id) const { return atoms_[id]; }
    size_t size() const { return atoms_.size(); }

  private:
    std::vector<pddl::Atom> atoms_;
    std::map<pddl::Atom, int> ids_;
};

struct GroundAction {
    std::string name;
    std::vector<std::string> args;
    std::vector<int> pre;      // positive preconditions, sorted fact ids
    std::vector<int> pre_neg;  // negated preconditions, sorted fact ids
    std::vector<int> add;      // sorted, disjoint from del
    std::vector<int> del;
    int cost = 1;

    std::string str() const;  // "(name arg1 arg2 ...)"
};

struct GroundTask {
    FactIndex facts;
    std::vector<GroundAction> actions;
    std::vector<int> init;      // sorted fact ids
    std::vector<int> goal_pos;  // sorted fact ids
    std::vector<int> goal_neg;  // sorted fact ids
    // Set when a positive goal atom is not even delete-relaxed reachable;
    // the task is unsolvable without any search.
    bool goal_unreachable = false;

    size_t num_facts() const { return facts.size(); }
};

struct GroundOptions {
    // Abort when type-consistent instantiation would exceed this many
    // candidates across all schemas.
    size_t instantiation_cap = 5'000'000;
    // Keep only actions and facts reachable under delete relaxation from the
    // initial state. Disable to obtain the raw instantiation (used by the
    // pruning-soundness oracle tests).
    bool reachability_prune = true;
};

// Instantiates the typed action schemas of `d` over the objects of `p` into
// a fact-indexed task. Fact and action orderings are deterministic:
// grounding the same pair twice yields identical indices.
GroundTask ground(const pddl::DomainAst& d, const pddl::ProblemAst& p,
                  const GroundOptions& options = {});

// One action per line, plus fact/goal summary. Debug aid behind a CLI flag.
std::string dump_task(const GroundTask& task);

}  // namespace delta::ground
