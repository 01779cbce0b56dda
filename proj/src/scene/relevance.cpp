#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "delta/pddl/errors.hpp"
#include "delta/scene/scene_graph.hpp"

namespace delta::scene {

namespace {

using pddl::Atom;
using pddl::DomainAst;
using pddl::GoalFormula;

constexpr size_t kInstantiationCap = 5'000'000;

struct GroundInstance {
    std::vector<int> pre_atoms;  // positive precondition atoms
    std::vector<int> eff_atoms;  // add and delete effect atoms
};

class AtomIndex {
  public:
    int intern(const Atom& a) {
        auto [it, inserted] = ids_.try_emplace(a, static_cast<int>(ids_.size()));
        return it->second;
    }
    int find(const Atom& a) const {
        auto it = ids_.find(a);
        return it == ids_.end() ? -1 : it->second;
    }
    size_t size() const { return ids_.size(); }
    std::vector<Atom> atoms() const {
        std::vector<Atom> out(ids_.size());
        for (const auto& [atom, id] : ids_)
            out[id] = atom;
        return out;
    }

  private:
    std::map<Atom, int> ids_;
};

}  // namespace

std::set<std::string> relevance_prune(const SceneGraph& sg, const DomainAst& d,
                                      const GoalFormula& goal, const SceneVocabulary& vocab) {
    for (const auto& lit : goal.literals)
        if (!d.find_predicate(lit.atom.predicate))
            throw pddl::SemanticError("goal uses undeclared predicate '" + lit.atom.predicate +
                                      "'");
    if (goal.empty())
        return {};

    // Object universe: scene rooms and items plus one synthetic object per
    // remaining declared type, so schemas touching e.g. the agent type still
    // instantiate. Goal constants outside the scene (the robot) are typed by
    // the predicate parameter they appear under.
    std::map<std::string, std::string> object_types;
    for (const auto& room : sg.rooms)
        object_types[room.id] = vocab.room_type;
    for (const auto& item : sg.items)
        object_types[item.id] = vocab.item_type;
    for (const auto& t : d.types)
        if (t.name != vocab.room_type && t.name != vocab.item_type)
            object_types.try_emplace("any-" + t.name, t.name);
    for (const auto& lit : goal.literals) {
        const auto* decl = d.find_predicate(lit.atom.predicate);
        for (size_t i = 0; i < lit.atom.args.size() && i < decl->params.size(); ++i)
            object_types.try_emplace(lit.atom.args[i], decl->params[i].type);
    }

    // Static predicates never occur in effects; ground instances whose
    // static preconditions fail against the scene-derived facts can never be
    // achievers and are dropped up front.
    std::set<std::string> static_preds;
    for (const auto& p : d.predicates)
        static_preds.insert(p.name);
    for (const auto& a : d.actions) {
        for (const auto& atom : a.add_effects)
            static_preds.erase(atom.predicate);
        for (const auto& atom : a.del_effects)
            static_preds.erase(atom.predicate);
    }
    std::set<Atom> static_facts;
    for (const auto& atom : encode_scene_facts(sg, d, vocab))
        if (static_preds.count(atom.predicate))
            static_facts.insert(atom);
    for (const auto& atom : encode_item_attribute_facts(sg, d, vocab))
        if (static_preds.count(atom.predicate))
            static_facts.insert(atom);

    AtomIndex index;
    std::vector<GroundInstance> instances;
    std::map<int, std::vector<int>> achievers;  // effect atom -> instance ids

    size_t budget = kInstantiationCap;
    for (const auto& action : d.actions) {
        std::vector<std::vector<std::string>> candidates(action.params.size());
        for (size_t i = 0; i < action.params.size(); ++i)
            for (const auto& [obj, type] : object_types)
                if (d.is_subtype(type, action.params[i].type))
                    candidates[i].push_back(obj);
        if (std::any_of(candidates.begin(), candidates.end(),
                        [](const auto& c) { return c.empty(); }))
            continue;

        std::vector<size_t> cursor(action.params.size(), 0);
        std::map<std::string, std::string> binding;
        while (true) {
            if (budget-- == 0)
                throw SceneError("relevance analysis exceeded the instantiation cap");
            binding.clear();
            for (size_t i = 0; i < action.params.size(); ++i)
                binding[action.params[i].name] = candidates[i][cursor[i]];
            auto bind = [&](const Atom& schematic) {
                Atom atom{schematic.predicate, {}};
                atom.args.reserve(schematic.args.size());
                for (const auto& arg : schematic.args)
                    atom.args.push_back(binding.at(arg));
                return atom;
            };

            bool feasible = true;
            for (const auto& lit : action.precondition) {
                if (!static_preds.count(lit.atom.predicate))
                    continue;
                bool holds = static_facts.count(bind(lit.atom)) > 0;
                if (holds == lit.negated) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                GroundInstance inst;
                // Only positive preconditions propagate relevance; a negated
                // precondition (e.g. the carrying-capacity check) holds by
                // absence and would otherwise drag in every pickable item.
                for (const auto& lit : action.precondition)
                    if (!lit.negated)
                        inst.pre_atoms.push_back(index.intern(bind(lit.atom)));
                for (const auto& atom : action.add_effects)
                    inst.eff_atoms.push_back(index.intern(bind(atom)));
                for (const auto& atom : action.del_effects)
                    inst.eff_atoms.push_back(index.intern(bind(atom)));
                int id = static_cast<int>(instances.size());
                for (int eff : inst.eff_atoms)
                    achievers[eff].push_back(id);
                instances.push_back(std::move(inst));
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

    // Backward fixpoint: goal atoms seed the relevant set; achieving either
    // polarity of a relevant atom makes an instance's preconditions relevant.
    std::set<int> relevant;
    std::vector<int> worklist;
    for (const auto& lit : goal.literals) {
        int id = index.find(lit.atom);
        if (id < 0)
            id = index.intern(lit.atom);
        if (relevant.insert(id).second)
            worklist.push_back(id);
    }
    std::vector<bool> instance_done(instances.size(), false);
    while (!worklist.empty()) {
        int atom_id = worklist.back();
        worklist.pop_back();
        auto it = achievers.find(atom_id);
        if (it == achievers.end())
            continue;
        for (int inst_id : it->second) {
            if (instance_done[inst_id])
                continue;
            instance_done[inst_id] = true;
            for (int pre : instances[inst_id].pre_atoms)
                if (relevant.insert(pre).second)
                    worklist.push_back(pre);
        }
    }

    std::set<std::string> item_ids;
    for (const auto& item : sg.items)
        item_ids.insert(item.id);
    std::set<std::string> kept;
    std::vector<Atom> all_atoms = index.atoms();
    for (int id : relevant)
        for (const auto& arg : all_atoms[id].args)
            if (item_ids.count(arg))
                kept.insert(arg);
    return kept;
}

}  // namespace delta::scene
