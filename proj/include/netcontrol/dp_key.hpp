#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netcontrol/election.hpp"

namespace netcontrol {

// Table key for the deletion DP at one decomposition node: a partition of the
// surviving bag vertices into connected-component parts, with one payload row
// of fixed width R per part (per-candidate counts, or margins).
//
// part_of has one entry per bag slot (the bag sorted ascending): the part id
// of that vertex, or kNoPart when the vertex is deleted. Part ids are
// canonical: numbered 0,1,... by first occurrence, which equals ordering
// parts by their minimum element. rows is row-major, parts x R.
struct DpKey {
    static constexpr std::uint8_t kNoPart = 0xff;

    std::vector<std::uint8_t> part_of;
    std::vector<std::int32_t> rows;

    bool operator==(const DpKey&) const = default;
    bool covered(int slot) const { return part_of[slot] != kNoPart; }
    int num_parts(int row_width) const {
        return row_width > 0 ? static_cast<int>(rows.size()) / row_width : 0;
    }
    std::uint64_t covered_mask() const;
};

struct DpKeyHash {
    std::size_t operator()(const DpKey& key) const;
};

// Renumbers parts by first slot occurrence and permutes rows to match.
DpKey canonicalize(const DpKey& key, int row_width);

// Edge between two bag slots: if both survive in distinct parts, the parts
// merge and their rows add; otherwise the key is unchanged.
DpKey merge_edge(const DpKey& key, int slot_u, int slot_v, int row_width);

// Removing one slot from the key when its vertex leaves the bag. A part left
// with no slot belongs to a component that can never reach the initiator
// again, so its row is dropped with it.
struct ForgetResult {
    DpKey key;
    bool dropped_part = false;
};
ForgetResult forget_slot(const DpKey& key, int slot, int row_width);

// Child-side keys consistent with a parent key at a forget node, i.e. the
// inverse of forget_slot. The forgotten vertex may have been deleted (key
// unchanged), a member of any one part (rows unchanged), or a lone singleton
// part whose row was dropped; in the last case the row is unconstrained and
// free_part names the placeholder (zero-filled) row.
struct ForgetPreimage {
    DpKey key;
    int free_part = -1;
};
std::vector<ForgetPreimage> forget_preimages(const DpKey& parent,
                                             const std::vector<Voter>& parent_bag, Voter v,
                                             int row_width);

// Coarsest partition refined by both arguments: connected components of the
// graph with an edge wherever two vertices share a part on either side.
// Throws when the two sides cover different vertex sets.
std::vector<std::vector<Voter>> join_partitions(const std::vector<std::vector<Voter>>& p1,
                                                const std::vector<std::vector<Voter>>& p2);

// Full join step on keys over the same bag: joined partition as above, and
// per joined part the row sum of both sides minus the surviving bag vertices'
// own rows (slot_rows, slots x R), which both sides counted.
DpKey join_keys(const DpKey& a, const DpKey& b, const std::vector<std::int32_t>& slot_rows,
                int row_width);

// Readable (parts as voter sets) form of a key, for construction in tests
// and for diagnostics. parts[i] pairs with rows[i].
struct BagKey {
    std::vector<std::vector<Voter>> parts;
    std::vector<std::vector<std::int32_t>> rows;
};
DpKey encode(const BagKey& key, const std::vector<Voter>& bag, int row_width);
BagKey decode(const DpKey& key, const std::vector<Voter>& bag, int row_width);

}  // namespace netcontrol
