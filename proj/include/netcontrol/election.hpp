#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netcontrol {

using Voter = int;
using Candidate = int;
using Cost = long long;

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();

class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidWitness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deletion budget. The unlimited budget compares greater than any finite cost,
// so budgetless instances need no separate code path.
struct Budget {
    Cost amount = 0;
    bool unlimited = false;

    static Budget infinite() { return Budget{0, true}; }
    static Budget of(Cost amount);

    bool covers(Cost c) const { return unlimited || c <= amount; }
    bool operator==(const Budget&) const = default;
};

// Plurality election: candidates 0..m-1, voters 0..n-1, one vote each.
struct Election {
    int num_candidates = 0;
    std::vector<Candidate> vote;  // vote[v] in [0, num_candidates)

    int num_voters() const { return static_cast<int>(vote.size()); }
};

// Simple undirected graph on the voters. Edges are stored normalized
// (u < v, sorted, duplicate-free); construction rejects anything else.
class VoterGraph {
public:
    VoterGraph() = default;
    VoterGraph(int num_vertices, std::vector<std::pair<Voter, Voter>> edges);

    int num_vertices() const { return n_; }
    const std::vector<std::pair<Voter, Voter>>& edges() const { return edges_; }
    const std::vector<Voter>& neighbors(Voter v) const;
    bool has_edge(Voter u, Voter v) const;

private:
    int n_ = 0;
    std::vector<std::pair<Voter, Voter>> edges_;
    std::vector<std::vector<Voter>> adj_;
};

struct ControlInstance {
    Election election;
    VoterGraph graph;
    Candidate target = 0;
    Voter initiator = 0;
    std::vector<Cost> cost;  // per voter, non-negative
    Budget budget;
};

enum class Mode { kConstructive, kDestructive };

// A deletion set W together with its cost; the checkable certificate for
// both control modes. Never contains the initiator.
struct WitnessSet {
    std::vector<Voter> deleted;  // sorted, unique
    Cost total_cost = 0;
};

// Throws InvalidInput when a field violates the instance invariants.
void validate_instance(const ControlInstance& instance);

// Builds a witness from an arbitrary id list: sorts, rejects duplicates,
// unknown ids and the initiator, and computes the cost.
WitnessSet make_witness(const ControlInstance& instance, std::vector<Voter> deleted);

// Vertices reachable from start once `deleted` (and incident edges) are
// removed. Result is sorted and always contains start.
std::vector<Voter> reachable_from(const VoterGraph& graph, Voter start,
                                  const std::vector<Voter>& deleted);

// Votes per candidate among `subset`.
std::vector<int> tally(const Election& election, const std::vector<Voter>& subset);

// The candidate with strictly more votes than every other, if any.
// A candidate with zero votes never wins (empty tallies have no winner).
std::optional<Candidate> unique_winner(const std::vector<int>& counts);

Cost witness_cost(const ControlInstance& instance, const std::vector<Voter>& deleted);

// Ground-truth certificate semantics; ignores the budget.
// Constructive: the target uniquely wins the election restricted to the
// initiator's surviving component. Destructive: somebody else does.
bool evaluate_control(const ControlInstance& instance, const WitnessSet& witness, Mode mode);

}  // namespace netcontrol
