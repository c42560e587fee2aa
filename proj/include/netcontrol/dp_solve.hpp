#pragma once

#include <cstdint>
#include <vector>

#include "netcontrol/dp_engine.hpp"

namespace netcontrol {

struct SolveResult {
    bool yes = false;
    WitnessSet witness;
};

// Per-voter payload rows: candidate-count rows (width m), or margin rows of
// rival versus each opponent (width |opponents|).
std::vector<std::int32_t> count_rows(const Election& election);
std::vector<std::int32_t> margin_rows(const Election& election, Candidate rival,
                                      const std::vector<Candidate>& opponents);

// decompose + nicify + pin at the instance initiator.
NiceTreeDecomposition pinned_decomposition(const ControlInstance& instance,
                                           std::uint64_t seed = 0);
NiceTreeDecomposition pinned_from(const ControlInstance& instance, const TreeDecomposition& td);

// Minimum-cost deletion set making the target the unique winner among the
// voters still reachable from the initiator.
SolveResult solve_constructive(const ControlInstance& instance,
                               const NiceTreeDecomposition& pinned, int jobs = 1);

// Minimum-cost deletion set putting the rival strictly ahead of the target
// (not necessarily winning) in the restricted election.
SolveResult can_beat(const ControlInstance& instance, Candidate rival,
                     const NiceTreeDecomposition& pinned, int jobs = 1);

// Minimum-cost deletion set after which someone other than the target is the
// unique winner of the restricted election.
SolveResult solve_destructive(const ControlInstance& instance,
                              const NiceTreeDecomposition& pinned, int jobs = 1);

// Convenience entry: builds the pinned decomposition, then dispatches on mode.
SolveResult solve(const ControlInstance& instance, Mode mode, int jobs = 1);

}  // namespace netcontrol
