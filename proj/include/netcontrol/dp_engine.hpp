#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "netcontrol/dp_key.hpp"
#include "netcontrol/election.hpp"
#include "netcontrol/treedecomp.hpp"

namespace netcontrol {

// Provenance of a table entry's minimizing transition, enough to replay the
// choice: indices into the child tables plus the rule that fired.
struct BackRef {
    enum Tag : std::uint8_t { kInit, kDelete, kKeep, kEdge, kForget, kJoin };
    std::int32_t a = -1;
    std::int32_t b = -1;
    Tag tag = kInit;
};

// Sparse min-cost table of one decomposition node. Entries live in insertion
// order (the canonical enumeration order for tie-breaking); absent keys mean
// unattainable. Entries above cap are discarded: costs only grow upward, so
// a finite budget prunes safely.
class NodeTable {
public:
    explicit NodeTable(Cost cap = kInfiniteCost) : cap_(cap) {}

    void min_insert(DpKey key, Cost cost, BackRef ref);
    int size() const { return static_cast<int>(keys_.size()); }
    const DpKey& key(int i) const { return keys_[i]; }
    Cost cost(int i) const { return costs_[i]; }
    BackRef ref(int i) const { return refs_[i]; }
    int find(const DpKey& key) const;

private:
    Cost cap_;
    std::vector<DpKey> keys_;
    std::vector<Cost> costs_;
    std::vector<BackRef> refs_;
    std::unordered_map<DpKey, std::int32_t, DpKeyHash> index_;
};

// Bottom-up fill over the pinned decomposition, one table per node, with the
// entry payload abstracted to per-voter rows of width row_width (candidate
// count rows, or margin rows). voter_rows is num_voters x row_width.
// jobs > 1 fills independent subtrees concurrently; tables are identical to
// the single-threaded fill either way. cap tightens the budget bound when a
// cost ceiling is already known; entries above min(budget, cap) never sit on
// a chain below a within-ceiling entry, so dropping them keeps every kept
// cell exact.
std::vector<NodeTable> fill_tables(const ControlInstance& instance,
                                   const NiceTreeDecomposition& ntd,
                                   const std::vector<std::int32_t>& voter_rows, int row_width,
                                   int jobs = 1, Cost cap = kInfiniteCost);

// Replays backpointers from a root entry down to the leaves, collecting the
// deletion decisions into a witness set.
std::vector<Voter> extract_witness(const std::vector<NodeTable>& tables,
                                   const NiceTreeDecomposition& ntd, int root_entry);

}  // namespace netcontrol
