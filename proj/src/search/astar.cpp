#include "delta/search/astar.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <unordered_map>

namespace delta::search {

std::string status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Solved: return "solved";
        case SearchStatus::Unsolvable: return "unsolvable";
        case SearchStatus::Timeout: return "timeout";
    }
    return "?";
}

namespace {

struct Node {
    StateBits state;
    int g = 0;
    int h = 0;  // state-dependent, computed once
    int parent = -1;
    int action_from_parent = -1;
};

struct OpenEntry {
    int f;
    int h;
    uint64_t tick;
    int node;
    int g;

    bool operator>(const OpenEntry& other) const {
        if (f != other.f)
            return f > other.f;
        if (h != other.h)
            return h > other.h;
        return tick > other.tick;
    }
};

}  // namespace

SearchResult solve(const ground::GroundTask& task, const SearchConfig& config) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(Clock::now() - start).count();
    };

    SearchResult result;
    if (task.goal_unreachable) {
        result.status = SearchStatus::Unsolvable;
        result.time_s = elapsed();
        return result;
    }

    auto heuristic = make_heuristic(config.heuristic, task);
    auto is_goal = [&](const StateBits& s) {
        return s.contains_all(task.goal_pos) && s.contains_none(task.goal_neg);
    };

    // Per-action bit masks make applicability a few word operations.
    const size_t num_facts = task.num_facts();
    std::vector<StateBits> pre_mask, pre_neg_mask;
    pre_mask.reserve(task.actions.size());
    pre_neg_mask.reserve(task.actions.size());
    for (const auto& a : task.actions) {
        pre_mask.push_back(StateBits::from_ids(num_facts, a.pre));
        pre_neg_mask.push_back(StateBits::from_ids(num_facts, a.pre_neg));
    }

    std::vector<Node> nodes;
    std::unordered_map<StateBits, int, StateBitsHash> seen;  // state -> node id
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open;
    uint64_t tick = 0;

    StateBits init = StateBits::from_ids(num_facts, task.init);
    int h0 = heuristic->evaluate(init);
    if (h0 == Heuristic::kInfinity) {
        result.status = SearchStatus::Unsolvable;
        result.time_s = elapsed();
        return result;
    }
    nodes.push_back({init, 0, h0, -1, -1});
    seen.emplace(init, 0);
    open.push({h0, h0, tick++, 0, 0});
    result.generated = 1;

    while (!open.empty()) {
        OpenEntry entry = open.top();
        open.pop();
        if (entry.g != nodes[entry.node].g)
            continue;  // stale: a cheaper path was found after this push
        ++result.expanded;

        if ((result.expanded & 63) == 0 && elapsed() > config.timeout_s) {
            result.status = SearchStatus::Timeout;
            result.time_s = std::max(elapsed(), config.timeout_s);
            return result;
        }

        const int node_id = entry.node;
        if (is_goal(nodes[node_id].state)) {
            Plan plan;
            for (int n = node_id; nodes[n].parent >= 0; n = nodes[n].parent)
                plan.action_ids.push_back(nodes[n].action_from_parent);
            std::reverse(plan.action_ids.begin(), plan.action_ids.end());
            result.status = SearchStatus::Solved;
            result.plan = std::move(plan);
            result.time_s = elapsed();
            return result;
        }

        const StateBits state = nodes[node_id].state;  // copy: nodes may grow
        const int g = nodes[node_id].g;
        for (size_t i = 0; i < task.actions.size(); ++i) {
            bool applicable = true;
            for (int f : task.actions[i].pre)
                if (!state.test(f)) {
                    applicable = false;
                    break;
                }
            if (!applicable)
                continue;
            for (int f : task.actions[i].pre_neg)
                if (state.test(f)) {
                    applicable = false;
                    break;
                }
            if (!applicable)
                continue;

            StateBits succ = state;
            for (int f : task.actions[i].del)
                succ.reset(f);
            for (int f : task.actions[i].add)
                succ.set(f);
            ++result.generated;
            const int succ_g = g + task.actions[i].cost;

            auto it = seen.find(succ);
            if (it != seen.end()) {
                if (succ_g >= nodes[it->second].g)
                    continue;
                // Shorter path to a known state: update and reopen. Needed
                // for optimality because LM-cut is not consistent.
                Node& n = nodes[it->second];
                n.g = succ_g;
                n.parent = node_id;
                n.action_from_parent = static_cast<int>(i);
                if (n.h != Heuristic::kInfinity)
                    open.push({succ_g + n.h, n.h, tick++, it->second, succ_g});
            } else {
                // Dead ends are recorded too so the heuristic is not
                // re-evaluated every time they are regenerated.
                int h = heuristic->evaluate(succ);
                int id = static_cast<int>(nodes.size());
                nodes.push_back({succ, succ_g, h, node_id, static_cast<int>(i)});
                seen.emplace(succ, id);
                if (h != Heuristic::kInfinity)
                    open.push({succ_g + h, h, tick++, id, succ_g});
            }
        }
    }

    result.status = SearchStatus::Unsolvable;
    result.time_s = elapsed();
    return result;
}

std::string plan_to_text(const ground::GroundTask& task, const Plan& plan) {
    std::string out;
    for (int id : plan.action_ids) {
        out += task.actions[id].str();
        out += '\n';
    }
    return out;
}

}  // namespace delta::search
