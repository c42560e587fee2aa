#pragma once

#include <optional>
#include <vector>

#include "netcontrol/election.hpp"

namespace netcontrol {

struct OracleResult {
    bool yes = false;
    WitnessSet witness;  // cheapest feasible witness when yes
};

// Reference decision procedure: enumerates every subset of `deletable`
// (default: all voters except the initiator), keeps the cheapest
// budget-feasible subset that passes evaluate_control. Cost ties go to the
// lexicographically smallest sorted id list. Deliberately does full
// reachability recomputation per subset; at <= 25 deletable voters
// simplicity beats cleverness in a reference implementation.
OracleResult brute_force(const ControlInstance& instance, Mode mode,
                         const std::optional<std::vector<Voter>>& deletable = std::nullopt);

}  // namespace netcontrol
