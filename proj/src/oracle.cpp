#include "netcontrol/oracle.hpp"

#include <algorithm>

namespace netcontrol {

namespace {

constexpr int kMaxDeletable = 25;

std::vector<Voter> default_deletable(const ControlInstance& instance) {
    std::vector<Voter> pool;
    pool.reserve(instance.election.num_voters() - 1);
    for (Voter v = 0; v < instance.election.num_voters(); ++v)
        if (v != instance.initiator) pool.push_back(v);
    return pool;
}

}  // namespace

OracleResult brute_force(const ControlInstance& instance, Mode mode,
                         const std::optional<std::vector<Voter>>& deletable) {
    validate_instance(instance);
    std::vector<Voter> pool = deletable ? *deletable : default_deletable(instance);
    std::sort(pool.begin(), pool.end());
    for (size_t i = 0; i < pool.size(); ++i) {
        Voter v = pool[i];
        if (v < 0 || v >= instance.election.num_voters())
            throw InvalidInput("unknown voter " + std::to_string(v) + " in deletable set");
        if (v == instance.initiator) throw InvalidInput("deletable set contains the initiator");
        if (i > 0 && pool[i - 1] == v)
            throw InvalidInput("duplicate voter " + std::to_string(v) + " in deletable set");
    }
    if (pool.size() > kMaxDeletable)
        throw InvalidInput("deletable set has " + std::to_string(pool.size()) +
                           " voters; enumeration is capped at " + std::to_string(kMaxDeletable));

    OracleResult best;
    std::vector<Voter> subset;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
        subset.clear();
        for (size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) subset.push_back(pool[i]);
        Cost cost = witness_cost(instance, subset);
        if (!instance.budget.covers(cost)) continue;
        if (best.yes && (cost > best.witness.total_cost ||
                         (cost == best.witness.total_cost && subset >= best.witness.deleted)))
            continue;
        WitnessSet candidate{subset, cost};
        if (!evaluate_control(instance, candidate, mode)) continue;
        best.yes = true;
        best.witness = std::move(candidate);
    }
    return best;
}

}  // namespace netcontrol
