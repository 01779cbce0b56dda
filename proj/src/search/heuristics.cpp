#include "delta/search/heuristics.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace delta::search {

HeuristicKind heuristic_from_name(const std::string& name) {
    if (name == "blind")
        return HeuristicKind::Blind;
    if (name == "hmax")
        return HeuristicKind::HMax;
    if (name == "lmcut")
        return HeuristicKind::LmCut;
    throw std::invalid_argument("unknown heuristic '" + name + "' (blind|hmax|lmcut)");
}

std::string heuristic_name(HeuristicKind kind) {
    switch (kind) {
        case HeuristicKind::Blind: return "blind";
        case HeuristicKind::HMax: return "hmax";
        case HeuristicKind::LmCut: return "lmcut";
    }
    return "?";
}

namespace {

class BlindHeuristic : public Heuristic {
  public:
    explicit BlindHeuristic(const ground::GroundTask& task) : task_(task) {}

    int evaluate(const StateBits& state) override {
        if (state.contains_all(task_.goal_pos) && state.contains_none(task_.goal_neg))
            return 0;
        return 1;  // unit action costs
    }

  private:
    const ground::GroundTask& task_;
};

// Shared relaxed-task machinery for hmax and LM-cut. Propositions are the
// task facts plus an artificial goal (conjunction of the positive goal) and
// an artificial precondition feeding operators with empty preconditions.
class RelaxedExploration {
  public:
    static constexpr int kUnreachedCost = Heuristic::kInfinity;

    enum Status : uint8_t { UNREACHED, REACHED, GOAL_ZONE, BEFORE_GOAL_ZONE };

    struct RelaxedOp {
        std::vector<int> pre;
        std::vector<int> eff;
        int base_cost = 1;
        int cost = 1;
        int supporter = -1;      // hmax-maximizing precondition
        int supporter_cost = 0;
        int unsat = 0;
    };

    explicit RelaxedExploration(const ground::GroundTask& task) : task_(task) {
        num_props_ = static_cast<int>(task.num_facts()) + 2;
        goal_prop_ = static_cast<int>(task.num_facts());
        artificial_pre_prop_ = goal_prop_ + 1;

        ops_.reserve(task.actions.size() + 1);
        for (const auto& action : task.actions) {
            RelaxedOp op;
            op.pre = action.pre.empty() ? std::vector<int>{artificial_pre_prop_} : action.pre;
            op.eff = action.add;
            op.base_cost = action.cost;
            ops_.push_back(std::move(op));
        }
        RelaxedOp goal_op;
        goal_op.pre = task.goal_pos.empty() ? std::vector<int>{artificial_pre_prop_}
                                            : task.goal_pos;
        goal_op.eff = {goal_prop_};
        goal_op.base_cost = 0;
        ops_.push_back(std::move(goal_op));

        precondition_of_.resize(num_props_);
        effect_of_.resize(num_props_);
        for (size_t i = 0; i < ops_.size(); ++i) {
            for (int p : ops_[i].pre)
                precondition_of_[p].push_back(static_cast<int>(i));
            for (int p : ops_[i].eff)
                effect_of_[p].push_back(static_cast<int>(i));
        }
        prop_cost_.resize(num_props_);
        prop_status_.resize(num_props_);
    }

    void reset_costs() {
        for (auto& op : ops_)
            op.cost = op.base_cost;
    }

    // Dijkstra over the delete relaxation from `state`, computing hmax costs
    // and supporters. Negated preconditions are ignored (treated satisfied),
    // which keeps the bound admissible.
    void explore(const StateBits& state) {
        std::fill(prop_cost_.begin(), prop_cost_.end(), kUnreachedCost);
        std::fill(prop_status_.begin(), prop_status_.end(), uint8_t{UNREACHED});
        for (auto& op : ops_) {
            op.unsat = static_cast<int>(op.pre.size());
            op.supporter = -1;
            op.supporter_cost = kUnreachedCost;
        }
        queue_ = {};
        for (int f = 0; f < goal_prop_; ++f)
            if (state.test(f))
                enqueue(f, 0);
        enqueue(artificial_pre_prop_, 0);

        while (!queue_.empty()) {
            auto [cost, prop] = queue_.top();
            queue_.pop();
            if (cost > prop_cost_[prop])
                continue;
            for (int op_id : precondition_of_[prop]) {
                RelaxedOp& op = ops_[op_id];
                if (--op.unsat == 0) {
                    // The queue pops in cost order: the completing
                    // proposition is an hmax-maximizing precondition.
                    op.supporter = prop;
                    op.supporter_cost = prop_cost_[prop];
                    int target = saturating_add(op.supporter_cost, op.cost);
                    for (int eff : op.eff)
                        enqueue(eff, target);
                }
            }
        }
    }

    // After the costs of `cut` operators were reduced, lowers hmax values
    // without redoing the full exploration.
    void explore_incremental(const std::vector<int>& cut) {
        queue_ = {};
        for (int op_id : cut) {
            const RelaxedOp& op = ops_[op_id];
            int target = saturating_add(op.supporter_cost, op.cost);
            for (int eff : op.eff)
                enqueue(eff, target);
        }
        while (!queue_.empty()) {
            auto [cost, prop] = queue_.top();
            queue_.pop();
            if (cost > prop_cost_[prop])
                continue;
            for (int op_id : precondition_of_[prop]) {
                RelaxedOp& op = ops_[op_id];
                if (op.supporter != prop || op.supporter_cost <= prop_cost_[prop])
                    continue;
                int old_cost = op.supporter_cost;
                update_supporter(op);
                if (op.supporter_cost != old_cost) {
                    int target = saturating_add(op.supporter_cost, op.cost);
                    for (int eff : op.eff)
                        enqueue(eff, target);
                }
            }
        }
    }

    int goal_cost() const { return prop_cost_[goal_prop_]; }
    int goal_prop() const { return goal_prop_; }
    int artificial_pre_prop() const { return artificial_pre_prop_; }
    std::vector<RelaxedOp>& ops() { return ops_; }
    std::vector<uint8_t>& status() { return prop_status_; }
    const std::vector<std::vector<int>>& precondition_of() const { return precondition_of_; }
    const std::vector<std::vector<int>>& effect_of() const { return effect_of_; }

  private:
    static int saturating_add(int a, int b) {
        if (a == kUnreachedCost || b == kUnreachedCost)
            return kUnreachedCost;
        return a + b;
    }

    void enqueue(int prop, int cost) {
        if (prop_status_[prop] == UNREACHED || prop_cost_[prop] > cost) {
            prop_status_[prop] = REACHED;
            prop_cost_[prop] = cost;
            queue_.push({cost, prop});
        }
    }

    void update_supporter(RelaxedOp& op) {
        op.supporter = op.pre[0];
        for (size_t i = 1; i < op.pre.size(); ++i)
            if (prop_cost_[op.pre[i]] > prop_cost_[op.supporter])
                op.supporter = op.pre[i];
        op.supporter_cost = prop_cost_[op.supporter];
    }

    const ground::GroundTask& task_;
    int num_props_ = 0;
    int goal_prop_ = 0;
    int artificial_pre_prop_ = 0;
    std::vector<RelaxedOp> ops_;
    std::vector<std::vector<int>> precondition_of_;
    std::vector<std::vector<int>> effect_of_;
    std::vector<int> prop_cost_;
    std::vector<uint8_t> prop_status_;
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                        std::greater<>> queue_;
};

class HMaxHeuristic : public Heuristic {
  public:
    explicit HMaxHeuristic(const ground::GroundTask& task) : relaxed_(task) {}

    int evaluate(const StateBits& state) override {
        relaxed_.reset_costs();
        relaxed_.explore(state);
        return relaxed_.goal_cost();
    }

  private:
    RelaxedExploration relaxed_;
};

class LmCutHeuristic : public Heuristic {
  public:
    explicit LmCutHeuristic(const ground::GroundTask& task) : relaxed_(task) {}

    int evaluate(const StateBits& state) override {
        auto& ops = relaxed_.ops();
        auto& status = relaxed_.status();
        relaxed_.reset_costs();
        relaxed_.explore(state);
        if (relaxed_.goal_cost() == RelaxedExploration::kUnreachedCost)
            return kInfinity;

        int total = 0;
        std::vector<int> cut;
        std::vector<int> stack;
        while (relaxed_.goal_cost() != 0) {
            mark_goal_plateau(stack);

            // Forward pass from the state side of the justification graph:
            // operators whose supporter lies before the goal zone and whose
            // effect touches it form the cut (a disjunctive action landmark).
            cut.clear();
            stack.clear();
            status[relaxed_.artificial_pre_prop()] = RelaxedExploration::BEFORE_GOAL_ZONE;
            stack.push_back(relaxed_.artificial_pre_prop());
            for (int f = 0; f < relaxed_.goal_prop(); ++f)
                if (state.test(f)) {
                    status[f] = RelaxedExploration::BEFORE_GOAL_ZONE;
                    stack.push_back(f);
                }
            while (!stack.empty()) {
                int prop = stack.back();
                stack.pop_back();
                for (int op_id : relaxed_.precondition_of()[prop]) {
                    auto& op = ops[op_id];
                    if (op.supporter != prop)
                        continue;
                    bool reaches_zone = false;
                    for (int eff : op.eff)
                        if (status[eff] == RelaxedExploration::GOAL_ZONE) {
                            reaches_zone = true;
                            break;
                        }
                    if (reaches_zone) {
                        cut.push_back(op_id);
                    } else {
                        for (int eff : op.eff)
                            if (status[eff] == RelaxedExploration::REACHED) {
                                status[eff] = RelaxedExploration::BEFORE_GOAL_ZONE;
                                stack.push_back(eff);
                            }
                    }
                }
            }

            int cut_cost = kInfinity;
            for (int op_id : cut)
                cut_cost = std::min(cut_cost, ops[op_id].cost);
            total += cut_cost;
            for (int op_id : cut)
                ops[op_id].cost -= cut_cost;

            relaxed_.explore_incremental(cut);

            for (auto& s : status)
                if (s == RelaxedExploration::GOAL_ZONE ||
                    s == RelaxedExploration::BEFORE_GOAL_ZONE)
                    s = RelaxedExploration::REACHED;
        }
        return total;
    }

  private:
    // Propositions from which the artificial goal is reachable through
    // zero-cost supporter edges.
    void mark_goal_plateau(std::vector<int>& stack) {
        auto& ops = relaxed_.ops();
        auto& status = relaxed_.status();
        stack.clear();
        status[relaxed_.goal_prop()] = RelaxedExploration::GOAL_ZONE;
        stack.push_back(relaxed_.goal_prop());
        while (!stack.empty()) {
            int prop = stack.back();
            stack.pop_back();
            for (int op_id : relaxed_.effect_of()[prop]) {
                const auto& op = ops[op_id];
                if (op.cost == 0 && op.supporter >= 0 &&
                    status[op.supporter] != RelaxedExploration::GOAL_ZONE &&
                    status[op.supporter] != RelaxedExploration::UNREACHED) {
                    status[op.supporter] = RelaxedExploration::GOAL_ZONE;
                    stack.push_back(op.supporter);
                }
            }
        }
    }

    RelaxedExploration relaxed_;
};

}  // namespace

std::unique_ptr<Heuristic> make_heuristic(HeuristicKind kind, const ground::GroundTask& task) {
    switch (kind) {
        case HeuristicKind::Blind: return std::make_unique<BlindHeuristic>(task);
        case HeuristicKind::HMax: return std::make_unique<HMaxHeuristic>(task);
        case HeuristicKind::LmCut: return std::make_unique<LmCutHeuristic>(task);
    }
    throw std::logic_error("unreachable");
}

}  // namespace delta::search
