#include <doctest.h>

#include <algorithm>
#include <set>

#include "netcontrol/rng.hpp"
#include "netcontrol/treedecomp.hpp"
#include "support/generators.hpp"

using namespace netcontrol;

namespace {

bool mentions(const std::vector<std::string>& report, const std::string& needle) {
    return std::any_of(report.begin(), report.end(), [&](const std::string& line) {
        return line.find(needle) != std::string::npos;
    });
}

VoterGraph path3() { return VoterGraph(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_SUITE("treedecomp") {

TEST_CASE("validate accepts a chained path decomposition") {
    TreeDecomposition td{{1, -1}, {{0, 1}, {1, 2}}};
    CHECK(validate(path3(), td).empty());
    CHECK(td.width() == 1);
    CHECK(td.root() == 1);
}

TEST_CASE("validate reports an edge contained in no bag") {
    TreeDecomposition td{{1, -1}, {{0, 1}, {2}}};
    auto report = validate(path3(), td);
    REQUIRE(report.size() == 1);
    CHECK(mentions(report, "edge {1,2}"));
}

TEST_CASE("validate reports a disconnected vertex subtree") {
    TreeDecomposition td{{1, 2, -1}, {{0, 1}, {1, 2}, {0, 2}}};
    auto report = validate(path3(), td);
    REQUIRE(report.size() == 1);
    CHECK(mentions(report, "vertex 0"));
    CHECK(mentions(report, "not connected"));
}

TEST_CASE("validate rejects malformed trees and bags") {
    CHECK(!validate(path3(), TreeDecomposition{{-1, -1}, {{0, 1}, {1, 2}}}).empty());
    CHECK(!validate(path3(), TreeDecomposition{{1, 0}, {{0, 1}, {1, 2}}}).empty());
    CHECK(mentions(validate(path3(), TreeDecomposition{{-1}, {{0, 1, 1}}}), "node 0"));
    CHECK(mentions(validate(path3(), TreeDecomposition{{-1}, {{0, 1, 7}}}), "unknown vertex 7"));
}

TEST_CASE("decompose gives width 1 on trees") {
    Rng rng(11);
    for (int round = 0; round < 20; ++round) {
        int n = static_cast<int>(rng.range(2, 40));
        VoterGraph graph = testgen::random_tree(n, rng);
        TreeDecomposition td = decompose(graph);
        CHECK(validate(graph, td).empty());
        CHECK(td.width() == 1);
    }
}

TEST_CASE("decompose is exact on small graphs") {
    VoterGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(decompose(k4).width() == 3);
    CHECK(validate(k4, decompose(k4)).empty());

    VoterGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CHECK(decompose(c5).width() == 2);
    CHECK(validate(c5, decompose(c5)).empty());

    VoterGraph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                             {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                             {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
    CHECK(decompose(petersen).width() == 4);
    CHECK(validate(petersen, decompose(petersen)).empty());
}

TEST_CASE("decompose handles disconnected graphs") {
    VoterGraph forest(5, {{0, 1}, {3, 4}});
    TreeDecomposition td = decompose(forest);
    CHECK(validate(forest, td).empty());
    CHECK(td.width() == 1);

    VoterGraph mixed(7, {{0, 1}, {1, 2}, {0, 2}, {4, 5}, {5, 6}, {4, 6}});
    CHECK(validate(mixed, decompose(mixed)).empty());
    CHECK(decompose(mixed).width() == 2);
}

TEST_CASE("to_nice produces the forced shape for a single edge") {
    VoterGraph graph(2, {{0, 1}});
    NiceTreeDecomposition ntd = to_nice(graph, decompose(graph));
    CHECK(validate(graph, ntd).empty());
    REQUIRE(ntd.num_nodes() == 6);
    CHECK(ntd.nodes[0].kind == NodeKind::kLeaf);
    CHECK(ntd.nodes[1].kind == NodeKind::kIntroduce);
    CHECK(ntd.nodes[1].vertex == 0);
    CHECK(ntd.nodes[2].kind == NodeKind::kIntroduce);
    CHECK(ntd.nodes[2].vertex == 1);
    CHECK(ntd.nodes[3].kind == NodeKind::kIntroduceEdge);
    CHECK(ntd.nodes[3].edge_u == 0);
    CHECK(ntd.nodes[3].edge_v == 1);
    CHECK(ntd.nodes[4].kind == NodeKind::kForget);
    CHECK(ntd.nodes[5].kind == NodeKind::kForget);
    CHECK(ntd.nodes[5].bag.empty());
    CHECK(ntd.width() == 1);
}

TEST_CASE("to_nice places edges at the highest holding node") {
    // Both bags hold {0,1}; the edge must land in the root fragment, above
    // the forget of vertex 2.
    VoterGraph graph = path3();
    TreeDecomposition td{{-1, 0}, {{0, 1}, {0, 1, 2}}};
    REQUIRE(validate(graph, td).empty());
    NiceTreeDecomposition ntd = to_nice(graph, td);
    CHECK(validate(graph, ntd).empty());
    int edge01 = -1, forget2 = -1;
    for (int i = 0; i < ntd.num_nodes(); ++i) {
        const NiceNode& node = ntd.nodes[i];
        if (node.kind == NodeKind::kIntroduceEdge && node.edge_u == 0 && node.edge_v == 1)
            edge01 = i;
        if (node.kind == NodeKind::kForget && node.vertex == 2) forget2 = i;
    }
    REQUIRE(edge01 >= 0);
    REQUIRE(forget2 >= 0);
    CHECK(edge01 > forget2);
}

TEST_CASE("to_nice keeps width and introduces each edge once") {
    VoterGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    NiceTreeDecomposition ntd = to_nice(c5, decompose(c5));
    CHECK(validate(c5, ntd).empty());
    CHECK(ntd.width() == 2);
    int edge_nodes = 0;
    for (const NiceNode& node : ntd.nodes)
        if (node.kind == NodeKind::kIntroduceEdge) ++edge_nodes;
    CHECK(edge_nodes == 5);
}

TEST_CASE("to_nice rejects an invalid decomposition") {
    CHECK_THROWS_AS(to_nice(path3(), TreeDecomposition{{-1}, {{0, 1}}}), InvalidInput);
}

TEST_CASE("pinning a two-vertex path keeps x everywhere") {
    VoterGraph graph(2, {{0, 1}});
    NiceTreeDecomposition pinned = pin_initiator(to_nice(graph, decompose(graph)), 0);
    CHECK(validate(graph, pinned).empty());
    CHECK(pinned.pinned == 0);
    CHECK(pinned.nodes[pinned.root()].bag == std::vector<Voter>{0});
    for (const NiceNode& node : pinned.nodes)
        if (node.kind != NodeKind::kLeaf)
            CHECK(std::binary_search(node.bag.begin(), node.bag.end(), 0));
}

TEST_CASE("pinning errors") {
    VoterGraph graph(2, {{0, 1}});
    NiceTreeDecomposition ntd = to_nice(graph, decompose(graph));
    CHECK_THROWS_AS(pin_initiator(ntd, 9), InvalidInput);
    NiceTreeDecomposition pinned = pin_initiator(ntd, 1);
    CHECK_THROWS_AS(pin_initiator(pinned, 1), InvalidInput);
}

TEST_CASE("random graphs survive the full pipeline") {
    Rng rng(2026);
    for (int round = 0; round < 40; ++round) {
        int n = static_cast<int>(rng.range(1, 50));
        VoterGraph graph = n == 1 ? VoterGraph(1, {})
                                  : testgen::random_connected_graph(
                                        n, static_cast<int>(rng.range(10, 90)), rng);
        TreeDecomposition td = decompose(graph, rng.next());
        REQUIRE(validate(graph, td).empty());

        NiceTreeDecomposition ntd = to_nice(graph, td);
        REQUIRE(validate(graph, ntd).empty());
        CHECK(ntd.width() == td.width());
        CHECK(ntd.num_nodes() <= 7 * (td.width() + 1) * std::max(1, n));

        int edge_nodes = 0;
        for (const NiceNode& node : ntd.nodes) {
            if (node.kind == NodeKind::kIntroduceEdge) ++edge_nodes;
            CHECK(node.left < &node - ntd.nodes.data() + 1);
        }
        CHECK(edge_nodes == static_cast<int>(graph.edges().size()));

        Voter x = static_cast<Voter>(rng.below(static_cast<std::uint64_t>(n)));
        NiceTreeDecomposition pinned = pin_initiator(ntd, x);
        REQUIRE(validate(graph, pinned).empty());
        CHECK(pinned.width() <= td.width() + 1);
        CHECK(pinned.nodes[pinned.root()].bag == std::vector<Voter>{x});
    }
}

TEST_CASE("empty bags in the input are spliced away") {
    VoterGraph graph(2, {{0, 1}});
    TreeDecomposition td{{1, -1, 1}, {{}, {0, 1}, {}}};
    REQUIRE(validate(graph, td).empty());
    NiceTreeDecomposition ntd = to_nice(graph, td);
    CHECK(validate(graph, ntd).empty());
    for (const NiceNode& node : ntd.nodes)
        if (node.kind == NodeKind::kJoin) CHECK(!node.bag.empty());
}

}  // TEST_SUITE
