#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netcontrol/election.hpp"

namespace netcontrol {

// Rooted tree decomposition: node i's parent is parent[i], the root has
// parent -1, bags are sorted voter-id lists.
struct TreeDecomposition {
    std::vector<int> parent;
    std::vector<std::vector<Voter>> bags;

    int num_nodes() const { return static_cast<int>(bags.size()); }
    int root() const;
    int width() const;
};

enum class NodeKind : std::uint8_t { kLeaf, kIntroduce, kIntroduceEdge, kForget, kJoin };

const char* node_kind_name(NodeKind kind);

struct NiceNode {
    NodeKind kind = NodeKind::kLeaf;
    std::vector<Voter> bag;  // sorted
    int left = -1;           // single child for unary kinds
    int right = -1;          // second child for joins
    Voter vertex = -1;       // introduced / forgotten vertex
    Voter edge_u = -1, edge_v = -1;
};

// Nodes are stored in post order (every child id is smaller than its
// parent's), so a DP can fill per-node tables in one array pass; the root is
// the last node. `pinned` is the initiator once pin_initiator ran, else -1.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    Voter pinned = -1;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int root() const { return num_nodes() - 1; }
    int width() const;
};

// Decomposition validity; violations are reported as data, never thrown.
[[nodiscard]] std::vector<std::string> validate(const VoterGraph& graph,
                                                const TreeDecomposition& td);

// Checks the underlying decomposition conditions plus the per-kind shape
// rules, the introduced-exactly-once edge rule, and (when pinned) the
// initiator-pinning invariants.
[[nodiscard]] std::vector<std::string> validate(const VoterGraph& graph,
                                                const NiceTreeDecomposition& ntd);

// Builds a valid decomposition: exact width 1 on forests via rooted
// traversal, exact elimination-order search up to 12 vertices, min-fill with
// seeded random tie-breaking beyond that.
TreeDecomposition decompose(const VoterGraph& graph, std::uint64_t seed = 0);

// Rewrites a valid decomposition into leaf/introduce/introduce-edge/forget/
// join form of the same width. Every edge is introduced exactly once, at the
// node closest to the root whose bag still holds both endpoints (this keeps
// partial subgraphs small below). Output size is at most 7*(width+1)*|V|
// nodes: one leaf and at most width+1 introduces per input leaf, at most
// 2*(width+1) chain nodes per input edge, one join per extra child, one node
// per graph edge (|E| <= width*|V|), plus the root forget chain.
NiceTreeDecomposition to_nice(const VoterGraph& graph, const TreeDecomposition& td);

// Keeps voter x in every internal bag so x's component survives to the root:
// adds x to each internal bag, gives every leaf an introduce-x parent, and
// splices out the now-redundant introduce/forget nodes for x. Width grows by
// at most 1; the root bag becomes {x}.
NiceTreeDecomposition pin_initiator(const NiceTreeDecomposition& ntd, Voter x);

}  // namespace netcontrol
