#include "delta/ground/grounder.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "delta/pddl/errors.hpp"

namespace delta::ground {

using pddl::Atom;
using pddl::DomainAst;
using pddl::ProblemAst;

int FactIndex::add(const Atom& atom) {
    auto it = ids_.find(atom);
    if (it != ids_.end())
        return it->second;
    int id = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    ids_.emplace(atom, id);
    return id;
}

int FactIndex::id_of(const Atom& atom) const {
    auto it = ids_.find(atom);
    return it == ids_.end() ? -1 : it->second;
}

std::string GroundAction::str() const {
    std::string out = "(" + name;
    for (const auto& a : args) {
        out += ' ';
        out += a;
    }
    out += ')';
    return out;
}

namespace {

// Raw instantiation working form, over a provisional atom numbering.
struct RawAction {
    std::string name;
    std::vector<std::string> args;
    std::vector<int> pre, pre_neg, add, del;
};

struct RawTask {
    std::map<Atom, int> atom_ids;
    std::vector<Atom> atoms;
    std::vector<RawAction> actions;

    int intern(const Atom& a) {
        auto it = atom_ids.find(a);
        if (it != atom_ids.end())
            return it->second;
        int id = static_cast<int>(atoms.size());
        atoms.push_back(a);
        atom_ids.emplace(a, id);
        return id;
    }
};

std::set<std::string> static_predicates(const DomainAst& d) {
    std::set<std::string> preds;
    for (const auto& p : d.predicates)
        preds.insert(p.name);
    for (const auto& a : d.actions) {
        for (const auto& atom : a.add_effects)
            preds.erase(atom.predicate);
        for (const auto& atom : a.del_effects)
            preds.erase(atom.predicate);
    }
    return preds;
}

void instantiate_schemas(const DomainAst& d, const ProblemAst& p, const GroundOptions& options,
                         RawTask& raw) {
    const std::set<std::string> statics = static_predicates(d);
    std::set<Atom> static_init;
    for (const auto& atom : p.init)
        if (statics.count(atom.predicate))
            static_init.insert(atom);

    size_t budget = options.instantiation_cap;
    for (const auto& action : d.actions) {
        std::vector<std::vector<const std::string*>> candidates(action.params.size());
        for (size_t i = 0; i < action.params.size(); ++i)
            for (const auto& obj : p.objects)
                if (d.is_subtype(obj.type, action.params[i].type))
                    candidates[i].push_back(&obj.name);
        if (std::any_of(candidates.begin(), candidates.end(),
                        [](const auto& c) { return c.empty(); }))
            continue;

        std::vector<size_t> cursor(action.params.size(), 0);
        std::map<std::string, const std::string*> binding;
        while (true) {
            if (budget-- == 0)
                throw GroundingLimitError(
                    "grounding aborted: instantiation count exceeds the cap of " +
                    std::to_string(options.instantiation_cap));
            binding.clear();
            for (size_t i = 0; i < action.params.size(); ++i)
                binding[action.params[i].name] = candidates[i][cursor[i]];
            auto bind = [&](const Atom& schematic) {
                Atom atom{schematic.predicate, {}};
                atom.args.reserve(schematic.args.size());
                for (const auto& arg : schematic.args)
                    atom.args.push_back(*binding.at(arg));
                return atom;
            };

            // Static preconditions are decided at grounding time: a static
            // atom is true forever iff it is in init.
            bool feasible = true;
            for (const auto& lit : action.precondition) {
                if (!statics.count(lit.atom.predicate))
                    continue;
                bool holds = static_init.count(bind(lit.atom)) > 0;
                if (holds == lit.negated) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                RawAction ra;
                ra.name = action.name;
                for (const auto& param : action.params)
                    ra.args.push_back(*binding.at(param.name));
                for (const auto& lit : action.precondition) {
                    int id = raw.intern(bind(lit.atom));
                    (lit.negated ? ra.pre_neg : ra.pre).push_back(id);
                }
                for (const auto& atom : action.add_effects)
                    ra.add.push_back(raw.intern(bind(atom)));
                for (const auto& atom : action.del_effects)
                    ra.del.push_back(raw.intern(bind(atom)));
                raw.actions.push_back(std::move(ra));
            }

            size_t k = 0;
            for (; k < cursor.size(); ++k) {
                if (++cursor[k] < candidates[k].size())
                    break;
                cursor[k] = 0;
            }
            if (k == cursor.size())
                break;
        }
    }
}

// Delete-relaxed reachability from init; negated preconditions are treated
// as satisfied, so the surviving set over-approximates true reachability and
// pruning preserves optimal plan length.
std::vector<bool> relaxed_reachable_actions(const RawTask& raw, const std::vector<int>& init,
                                            std::vector<bool>& fact_reached) {
    fact_reached.assign(raw.atoms.size(), false);
    std::vector<bool> action_fired(raw.actions.size(), false);
    std::vector<std::vector<int>> pre_to_actions(raw.atoms.size());
    std::vector<int> unsat(raw.actions.size(), 0);

    for (size_t i = 0; i < raw.actions.size(); ++i) {
        unsat[i] = static_cast<int>(raw.actions[i].pre.size());
        for (int f : raw.actions[i].pre)
            pre_to_actions[f].push_back(static_cast<int>(i));
    }

    std::deque<int> queue;
    auto reach = [&](int f) {
        if (!fact_reached[f]) {
            fact_reached[f] = true;
            queue.push_back(f);
        }
    };
    auto fire = [&](int i) {
        if (!action_fired[i]) {
            action_fired[i] = true;
            for (int f : raw.actions[i].add)
                reach(f);
        }
    };

    for (int f : init)
        reach(f);
    for (size_t i = 0; i < raw.actions.size(); ++i)
        if (unsat[i] == 0)
            fire(static_cast<int>(i));
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (int i : pre_to_actions[f])
            if (--unsat[i] == 0)
                fire(i);
    }
    return action_fired;
}

}  // namespace

GroundTask ground(const DomainAst& d, const ProblemAst& p, const GroundOptions& options) {
    RawTask raw;
    instantiate_schemas(d, p, options, raw);

    std::vector<int> raw_init;
    for (const auto& atom : p.init)
        raw_init.push_back(raw.intern(atom));

    std::vector<bool> fact_reached;
    std::vector<bool> action_kept;
    if (options.reachability_prune) {
        action_kept = relaxed_reachable_actions(raw, raw_init, fact_reached);
    } else {
        fact_reached.assign(raw.atoms.size(), true);
        action_kept.assign(raw.actions.size(), true);
    }

    GroundTask task;
    // Dense ids in lexicographic atom order: deterministic regardless of
    // instantiation order.
    {
        std::vector<Atom> reached;
        for (size_t i = 0; i < raw.atoms.size(); ++i)
            if (fact_reached[i])
                reached.push_back(raw.atoms[i]);
        std::sort(reached.begin(), reached.end());
        for (const auto& atom : reached)
            task.facts.add(atom);
    }
    auto remap = [&](const std::vector<int>& raw_ids, std::vector<int>& out,
                     bool drop_unreached) {
        for (int rid : raw_ids) {
            if (!fact_reached[rid]) {
                if (drop_unreached)
                    continue;  // never true: satisfied (pre_neg) or no-op (del)
                out.clear();
                return false;
            }
            out.push_back(task.facts.id_of(raw.atoms[rid]));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return true;
    };

    for (size_t i = 0; i < raw.actions.size(); ++i) {
        if (!action_kept[i])
            continue;
        const RawAction& ra = raw.actions[i];
        GroundAction ga;
        ga.name = ra.name;
        ga.args = ra.args;
        remap(ra.pre, ga.pre, false);       // all reached when the action fired
        remap(ra.pre_neg, ga.pre_neg, true);
        remap(ra.add, ga.add, false);
        remap(ra.del, ga.del, true);
        task.actions.push_back(std::move(ga));
    }
    std::sort(task.actions.begin(), task.actions.end(),
              [](const GroundAction& a, const GroundAction& b) {
                  if (a.name != b.name)
                      return a.name < b.name;
                  return a.args < b.args;
              });

    remap(raw_init, task.init, false);
    for (const auto& lit : p.goal.literals) {
        int rid = raw.atom_ids.count(lit.atom) ? raw.atom_ids.at(lit.atom) : -1;
        bool reached = rid >= 0 && fact_reached[rid];
        if (lit.negated) {
            if (reached)
                task.goal_neg.push_back(task.facts.id_of(lit.atom));
            // an unreachable atom can never be true: negation holds for free
        } else {
            if (reached)
                task.goal_pos.push_back(task.facts.id_of(lit.atom));
            else
                task.goal_unreachable = true;
        }
    }
    std::sort(task.goal_pos.begin(), task.goal_pos.end());
    std::sort(task.goal_neg.begin(), task.goal_neg.end());
    return task;
}

std::string dump_task(const GroundTask& task) {
    std::ostringstream os;
    os << "facts: " << task.num_facts() << "\n";
    os << "actions: " << task.actions.size() << "\n";
    for (const auto& a : task.actions)
        os << a.str() << "\n";
    os << "init:";
    for (int f : task.init)
        os << ' ' << task.facts.atom_of(f).str();
    os << "\ngoal:";
    for (int f : task.goal_pos)
        os << ' ' << task.facts.atom_of(f).str();
    for (int f : task.goal_neg)
        os << " (not " << task.facts.atom_of(f).str() << ")";
    if (task.goal_unreachable)
        os << " [unreachable]";
    os << "\n";
    return os.str();
}

}  // namespace delta::ground
