#include "netcontrol/dp_solve.hpp"

#include <algorithm>
#include <optional>

namespace netcontrol {

std::vector<std::int32_t> count_rows(const Election& election) {
    std::vector<std::int32_t> rows(static_cast<size_t>(election.num_voters()) *
                                       election.num_candidates,
                                   0);
    for (int v = 0; v < election.num_voters(); ++v)
        rows[static_cast<size_t>(v) * election.num_candidates + election.vote[v]] = 1;
    return rows;
}

std::vector<std::int32_t> margin_rows(const Election& election, Candidate rival,
                                      const std::vector<Candidate>& opponents) {
    std::vector<std::int32_t> rows(static_cast<size_t>(election.num_voters()) * opponents.size());
    for (int v = 0; v < election.num_voters(); ++v)
        for (size_t k = 0; k < opponents.size(); ++k)
            rows[static_cast<size_t>(v) * opponents.size() + k] =
                (election.vote[v] == rival ? 1 : 0) - (election.vote[v] == opponents[k] ? 1 : 0);
    return rows;
}

NiceTreeDecomposition pinned_decomposition(const ControlInstance& instance, std::uint64_t seed) {
    return pinned_from(instance, decompose(instance.graph, seed));
}

NiceTreeDecomposition pinned_from(const ControlInstance& instance, const TreeDecomposition& td) {
    return pin_initiator(to_nice(instance.graph, td), instance.initiator);
}

namespace {

// Cheapest root entry whose single row satisfies the predicate; ties broken
// by lexicographically smallest row so the answer does not depend on table
// iteration order.
template <typename Predicate>
int best_root_entry(const NodeTable& root, Predicate&& good) {
    int best = -1;
    for (int i = 0; i < root.size(); ++i) {
        if (!good(root.key(i).rows)) continue;
        if (best < 0 || root.cost(i) < root.cost(best) ||
            (root.cost(i) == root.cost(best) && root.key(i).rows < root.key(best).rows))
            best = i;
    }
    return best;
}

SolveResult result_from(const ControlInstance& instance, const std::vector<NodeTable>& tables,
                        const NiceTreeDecomposition& ntd, int entry) {
    SolveResult result;
    result.yes = true;
    result.witness = make_witness(instance, extract_witness(tables, ntd, entry));
    return result;
}

enum class RoundOutcome { kVerified, kGrown, kExhausted };

// One refinement round of the margin relaxation: the favored candidate must
// strictly out-poll every tracked opponent, for no more than cap. The
// cheapest certificate either reaches the mode's goal (kVerified), or some
// untracked candidate ties or beats the favored one and joins the opponents
// (kGrown). Tracking a violator makes the failed certificate infeasible
// while every deletion set reaching the goal through the favored candidate
// stays feasible, so a verified cost never exceeds the true minimum for that
// candidate. kExhausted means even the relaxation costs more than cap, hence
// so does the true minimum: costs only grow as opponents accumulate.
RoundOutcome margin_round(const ControlInstance& instance, Candidate favored,
                          std::vector<Candidate>& opponents, Mode mode,
                          const NiceTreeDecomposition& pinned, int jobs, Cost cap,
                          SolveResult& out) {
    const Election& election = instance.election;
    auto tables = fill_tables(instance, pinned, margin_rows(election, favored, opponents),
                              static_cast<int>(opponents.size()), jobs, cap);
    const NodeTable& root = tables[pinned.root()];
    int entry = best_root_entry(root, [](const std::vector<std::int32_t>& row) {
        return std::all_of(row.begin(), row.end(), [](std::int32_t d) { return d > 0; });
    });
    if (entry < 0) return RoundOutcome::kExhausted;
    SolveResult candidate = result_from(instance, tables, pinned, entry);
    if (evaluate_control(instance, candidate.witness, mode)) {
        out = std::move(candidate);
        return RoundOutcome::kVerified;
    }

    auto audience =
        reachable_from(instance.graph, instance.initiator, candidate.witness.deleted);
    auto counts = tally(election, audience);
    Candidate violator = -1;
    for (Candidate q = 0; q < election.num_candidates && violator < 0; ++q)
        if (q != favored && counts[q] >= counts[favored] &&
            std::find(opponents.begin(), opponents.end(), q) == opponents.end())
            violator = q;
    if (violator < 0) throw std::logic_error("failed certificate without a violator");
    opponents.insert(std::upper_bound(opponents.begin(), opponents.end(), violator), violator);
    return RoundOutcome::kGrown;
}

// Rounds until a certificate verifies or the relaxation exceeds cap. At most
// m-1 rounds: with all opponents tracked, any certificate verifies.
SolveResult margin_refine(const ControlInstance& instance, Candidate favored,
                          std::vector<Candidate> opponents, Mode mode,
                          const NiceTreeDecomposition& pinned, int jobs,
                          Cost cap = kInfiniteCost) {
    SolveResult out;
    for (;;) {
        switch (margin_round(instance, favored, opponents, mode, pinned, jobs, cap, out)) {
            case RoundOutcome::kVerified: return out;
            case RoundOutcome::kExhausted: return {};
            case RoundOutcome::kGrown: break;
        }
    }
}

// Deleting nothing costs 0, which no witness can beat. Covers every
// already-controlled instance, including the single-candidate election where
// the initiator's own vote settles the constructive goal.
std::optional<SolveResult> already_controlled(const ControlInstance& instance, Mode mode) {
    SolveResult empty;
    empty.witness = make_witness(instance, {});
    if (!evaluate_control(instance, empty.witness, mode)) return std::nullopt;
    empty.yes = true;
    return empty;
}

}  // namespace

SolveResult solve_constructive(const ControlInstance& instance,
                               const NiceTreeDecomposition& pinned, int jobs) {
    const int m = instance.election.num_candidates;
    const Candidate c = instance.target;
    if (auto fast = already_controlled(instance, Mode::kConstructive)) return *fast;
    // The margin relaxation already returns an optimal witness; its cost caps
    // the count-row fill, which otherwise has no ceiling under an unlimited
    // budget. Every cell on the chain below a within-cap entry survives the
    // cap with its exact cost, so no optimal root entry is lost.
    SolveResult bound =
        margin_refine(instance, c, {c == 0 ? 1 : 0}, Mode::kConstructive, pinned, jobs);
    if (!bound.yes) return {};
    auto tables = fill_tables(instance, pinned, count_rows(instance.election), m, jobs,
                              bound.witness.total_cost);
    const NodeTable& root = tables[pinned.root()];
    int entry = best_root_entry(root, [&](const std::vector<std::int32_t>& row) {
        for (Candidate j = 0; j < m; ++j)
            if (j != c && row[j] >= row[c]) return false;
        return true;
    });
    if (entry < 0) throw std::logic_error("count table lost the optimal entry");
    return result_from(instance, tables, pinned, entry);
}

SolveResult can_beat(const ControlInstance& instance, Candidate rival,
                     const NiceTreeDecomposition& pinned, int jobs) {
    if (rival == instance.target) throw InvalidInput("rival equals the target candidate");
    auto tables = fill_tables(
        instance, pinned, margin_rows(instance.election, rival, {instance.target}), 1, jobs);
    const NodeTable& root = tables[pinned.root()];
    int entry = best_root_entry(
        root, [](const std::vector<std::int32_t>& row) { return row[0] > 0; });
    if (entry < 0) return {};
    return result_from(instance, tables, pinned, entry);
}

SolveResult solve_destructive(const ControlInstance& instance,
                              const NiceTreeDecomposition& pinned, int jobs) {
    if (auto fast = already_controlled(instance, Mode::kDestructive)) return *fast;
    SolveResult best;
    const auto cap = [&] { return best.yes ? best.witness.total_cost : kInfiniteCost; };
    const auto consider = [&](SolveResult result) {
        if (result.yes && (!best.yes || result.witness.total_cost < best.witness.total_cost))
            best = std::move(result);
    };

    // Single-opponent rounds for every rival first: their verified
    // certificates are cheap bounds that cap the wider refinement fills,
    // which otherwise have no ceiling under an unlimited budget.
    std::vector<std::pair<Candidate, std::vector<Candidate>>> deferred;
    for (Candidate rival = 0; rival < instance.election.num_candidates; ++rival) {
        if (rival == instance.target) continue;
        std::vector<Candidate> opponents{instance.target};
        SolveResult out;
        switch (margin_round(instance, rival, opponents, Mode::kDestructive, pinned, jobs,
                             cap(), out)) {
            case RoundOutcome::kVerified: consider(std::move(out)); break;
            case RoundOutcome::kGrown: deferred.emplace_back(rival, std::move(opponents)); break;
            case RoundOutcome::kExhausted: break;
        }
    }
    for (auto& [rival, opponents] : deferred)
        consider(margin_refine(instance, rival, std::move(opponents), Mode::kDestructive,
                               pinned, jobs, cap()));
    return best;
}

SolveResult solve(const ControlInstance& instance, Mode mode, int jobs) {
    validate_instance(instance);
    NiceTreeDecomposition pinned = pinned_decomposition(instance);
    return mode == Mode::kConstructive ? solve_constructive(instance, pinned, jobs)
                                       : solve_destructive(instance, pinned, jobs);
}

}  // namespace netcontrol
