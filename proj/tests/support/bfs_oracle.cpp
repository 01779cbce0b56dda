#include "bfs_oracle.hpp"

#include <deque>

namespace delta::testsupport {

using ground::GroundTask;
using search::StateBits;
using search::StateBitsHash;

namespace {

bool oracle_applicable(const StateBits& s, const ground::GroundAction& a) {
    for (int f : a.pre)
        if (!s.test(f))
            return false;
    for (int f : a.pre_neg)
        if (s.test(f))
            return false;
    return true;
}

StateBits oracle_apply(const StateBits& s, const ground::GroundAction& a) {
    StateBits out = s;
    for (int f : a.del)
        out.reset(f);
    for (int f : a.add)
        out.set(f);
    return out;
}

bool oracle_goal(const StateBits& s, const GroundTask& task) {
    for (int f : task.goal_pos)
        if (!s.test(f))
            return false;
    for (int f : task.goal_neg)
        if (s.test(f))
            return false;
    return true;
}

}  // namespace

OracleResult bfs_optimal_length(const GroundTask& task, size_t state_cap) {
    OracleResult result;
    if (task.goal_unreachable)
        return result;

    StateBits init = StateBits::from_ids(task.num_facts(), task.init);
    std::unordered_map<StateBits, int, StateBitsHash> dist;
    std::deque<StateBits> queue;
    dist.emplace(init, 0);
    queue.push_back(init);

    while (!queue.empty()) {
        StateBits s = queue.front();
        queue.pop_front();
        int d = dist.at(s);
        ++result.states_explored;
        if (oracle_goal(s, task)) {
            result.solvable = true;
            result.optimal_length = d;
            return result;
        }
        if (dist.size() > state_cap) {
            result.exhausted_cap = true;
            return result;
        }
        for (const auto& a : task.actions) {
            if (!oracle_applicable(s, a))
                continue;
            StateBits succ = oracle_apply(s, a);
            if (dist.emplace(succ, d + 1).second)
                queue.push_back(succ);
        }
    }
    return result;  // open set exhausted: unsolvable
}

StateSpace enumerate_state_space(const GroundTask& task, size_t state_cap) {
    StateSpace space;
    StateBits init = StateBits::from_ids(task.num_facts(), task.init);
    std::unordered_map<StateBits, int, StateBitsHash> index;
    std::vector<std::vector<int>> reverse_edges;

    index.emplace(init, 0);
    space.states.push_back(init);
    reverse_edges.emplace_back();
    for (size_t i = 0; i < space.states.size(); ++i) {
        if (space.states.size() > state_cap) {
            space.exhausted_cap = true;
            break;
        }
        StateBits s = space.states[i];
        for (const auto& a : task.actions) {
            if (!oracle_applicable(s, a))
                continue;
            StateBits succ = oracle_apply(s, a);
            auto [it, inserted] = index.emplace(succ, static_cast<int>(space.states.size()));
            if (inserted) {
                space.states.push_back(succ);
                reverse_edges.emplace_back();
            }
            reverse_edges[it->second].push_back(static_cast<int>(i));
        }
    }

    space.cost_to_go.assign(space.states.size(), -1);
    std::deque<int> queue;
    for (size_t i = 0; i < space.states.size(); ++i)
        if (oracle_goal(space.states[i], task)) {
            space.cost_to_go[i] = 0;
            queue.push_back(static_cast<int>(i));
        }
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int pred : reverse_edges[i])
            if (space.cost_to_go[pred] < 0) {
                space.cost_to_go[pred] = space.cost_to_go[i] + 1;
                queue.push_back(pred);
            }
    }
    return space;
}

}  // namespace delta::testsupport
