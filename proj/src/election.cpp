#include "netcontrol/election.hpp"

#include <algorithm>

namespace netcontrol {

Budget Budget::of(Cost amount) {
    if (amount < 0) throw InvalidInput("budget must be non-negative");
    return Budget{amount, false};
}

VoterGraph::VoterGraph(int num_vertices, std::vector<std::pair<Voter, Voter>> edges)
    : n_(num_vertices) {
    if (n_ < 0) throw InvalidInput("vertex count must be non-negative");
    adj_.resize(n_);
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw InvalidInput("edge endpoint out of range: {" + std::to_string(u) + "," +
                               std::to_string(v) + "}");
        if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw InvalidInput("duplicate edge {" + std::to_string(edges[i].first) + "," +
                               std::to_string(edges[i].second) + "}");
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

const std::vector<Voter>& VoterGraph::neighbors(Voter v) const {
    if (v < 0 || v >= n_) throw InvalidInput("unknown vertex " + std::to_string(v));
    return adj_[v];
}

bool VoterGraph::has_edge(Voter u, Voter v) const {
    const auto& nb = neighbors(u);
    if (v < 0 || v >= n_) throw InvalidInput("unknown vertex " + std::to_string(v));
    return std::binary_search(nb.begin(), nb.end(), v);
}

void validate_instance(const ControlInstance& instance) {
    const int n = instance.election.num_voters();
    const int m = instance.election.num_candidates;
    if (m < 1) throw InvalidInput("at least one candidate required");
    if (n < 1) throw InvalidInput("at least one voter required");
    for (Voter v = 0; v < n; ++v) {
        Candidate c = instance.election.vote[v];
        if (c < 0 || c >= m)
            throw InvalidInput("voter " + std::to_string(v) + " votes for unknown candidate");
    }
    if (instance.graph.num_vertices() != n)
        throw InvalidInput("graph vertex count does not match voter count");
    if (instance.target < 0 || instance.target >= m) throw InvalidInput("target is not a candidate");
    if (instance.initiator < 0 || instance.initiator >= n)
        throw InvalidInput("initiator is not a voter");
    if (static_cast<int>(instance.cost.size()) != n)
        throw InvalidInput("cost table size does not match voter count");
    for (Voter v = 0; v < n; ++v)
        if (instance.cost[v] < 0)
            throw InvalidInput("negative cost for voter " + std::to_string(v));
}

WitnessSet make_witness(const ControlInstance& instance, std::vector<Voter> deleted) {
    std::sort(deleted.begin(), deleted.end());
    for (size_t i = 1; i < deleted.size(); ++i)
        if (deleted[i] == deleted[i - 1])
            throw InvalidWitness("duplicate voter " + std::to_string(deleted[i]) + " in witness");
    WitnessSet w;
    w.total_cost = witness_cost(instance, deleted);
    w.deleted = std::move(deleted);
    return w;
}

std::vector<Voter> reachable_from(const VoterGraph& graph, Voter start,
                                  const std::vector<Voter>& deleted) {
    const int n = graph.num_vertices();
    if (start < 0 || start >= n) throw InvalidInput("unknown start vertex");
    std::vector<char> blocked(n, 0);
    for (Voter v : deleted) {
        if (v < 0 || v >= n) throw InvalidInput("unknown deleted vertex " + std::to_string(v));
        blocked[v] = 1;
    }
    if (blocked[start]) throw InvalidInput("start vertex is deleted");

    std::vector<char> seen(n, 0);
    std::vector<Voter> queue{start};
    seen[start] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        for (Voter nb : graph.neighbors(queue[head])) {
            if (!seen[nb] && !blocked[nb]) {
                seen[nb] = 1;
                queue.push_back(nb);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

std::vector<int> tally(const Election& election, const std::vector<Voter>& subset) {
    std::vector<int> counts(election.num_candidates, 0);
    for (Voter v : subset) {
        if (v < 0 || v >= election.num_voters())
            throw InvalidInput("unknown voter " + std::to_string(v) + " in tally subset");
        ++counts[election.vote[v]];
    }
    return counts;
}

std::optional<Candidate> unique_winner(const std::vector<int>& counts) {
    int best = -1;
    Candidate who = -1;
    bool tied = false;
    for (Candidate c = 0; c < static_cast<int>(counts.size()); ++c) {
        if (counts[c] > best) {
            best = counts[c];
            who = c;
            tied = false;
        } else if (counts[c] == best) {
            tied = true;
        }
    }
    if (who < 0 || tied || best <= 0) return std::nullopt;
    return who;
}

Cost witness_cost(const ControlInstance& instance, const std::vector<Voter>& deleted) {
    Cost sum = 0;
    for (Voter v : deleted) {
        if (v < 0 || v >= instance.election.num_voters())
            throw InvalidInput("unknown voter " + std::to_string(v) + " in deletion set");
        if (v == instance.initiator) throw InvalidInput("initiator cannot be deleted");
        sum += instance.cost[v];
    }
    return sum;
}

bool evaluate_control(const ControlInstance& instance, const WitnessSet& witness, Mode mode) {
    for (Voter v : witness.deleted) {
        if (v < 0 || v >= instance.election.num_voters())
            throw InvalidWitness("unknown voter " + std::to_string(v) + " in witness");
        if (v == instance.initiator) throw InvalidWitness("witness deletes the initiator");
    }
    auto audience = reachable_from(instance.graph, instance.initiator, witness.deleted);
    auto winner = unique_winner(tally(instance.election, audience));
    if (mode == Mode::kConstructive) return winner.has_value() && *winner == instance.target;
    return winner.has_value() && *winner != instance.target;
}

}  // namespace netcontrol
