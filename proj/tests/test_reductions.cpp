#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "netcontrol/dp_solve.hpp"
#include "netcontrol/oracle.hpp"
#include "netcontrol/reductions.hpp"
#include "netcontrol/treedecomp.hpp"

using namespace netcontrol;

namespace {

X3cInstance fixture(int ell, std::initializer_list<std::array<int, 3>> sets) {
    return X3cInstance{ell, std::vector<std::array<int, 3>>(sets)};
}

// ell=2 instance where every pair of sets intersects, so no cover exists.
X3cInstance crossing_no_instance() {
    return fixture(2, {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 5, 6}});
}

std::vector<Voter> everyone(const ControlInstance& inst) {
    std::vector<Voter> ids(inst.election.num_voters());
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

std::vector<int> full_tally(const ControlInstance& inst) {
    return tally(inst.election, everyone(inst));
}

std::vector<int> restricted_tally(const ControlInstance& inst, const WitnessSet& witness) {
    return tally(inst.election,
                 reachable_from(inst.graph, inst.initiator, witness.deleted));
}

int count_prefix(const std::vector<std::string>& names, const std::string& prefix) {
    int hits = 0;
    for (const auto& name : names)
        if (name.rfind(prefix, 0) == 0) ++hits;
    return hits;
}

}  // namespace

TEST_SUITE("reductions") {

TEST_CASE("solve_x3c returns the lexicographically first cover") {
    SUBCASE("duplicated triple") {
        auto cover = solve_x3c(fixture(1, {{1, 2, 3}, {1, 2, 3}}));
        REQUIRE(cover.has_value());
        CHECK(*cover == std::vector<int>{0});
    }
    SUBCASE("pairwise-crossing instance has no cover") {
        CHECK_FALSE(solve_x3c(crossing_no_instance()).has_value());
    }
    SUBCASE("planted double partition") {
        auto cover = solve_x3c(fixture(2, {{1, 2, 3}, {4, 5, 6}, {1, 2, 3}, {4, 5, 6}}));
        REQUIRE(cover.has_value());
        CHECK(*cover == std::vector<int>{0, 1});
    }
    SUBCASE("universe guard") {
        CHECK_THROWS_AS(solve_x3c(gen_x3c(7, 11, true)), InvalidInput);
    }
}

TEST_CASE("validate_x3c rejects malformed instances") {
    CHECK_THROWS_WITH(validate_x3c(X3cInstance{0, {}}), "ell must be positive");
    CHECK_THROWS_WITH(validate_x3c(fixture(1, {{1, 2, 4}, {1, 2, 3}})),
                      "set 0: element 4 is out of range");
    CHECK_THROWS_WITH(validate_x3c(fixture(1, {{1, 2, 3}, {2, 2, 3}})),
                      "set 1 must list three distinct elements ascending");
    CHECK_THROWS_WITH(validate_x3c(fixture(2, {{1, 2, 3}, {1, 2, 3}}), false),
                      "element 4 is covered by no set");
    CHECK_THROWS_WITH(validate_x3c(fixture(1, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}})),
                      "element 1 belongs to 3 sets, expected 2");
    CHECK_NOTHROW(validate_x3c(fixture(1, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}), false));
}

TEST_CASE("planted generator") {
    SUBCASE("ell=1 output is forced") {
        for (std::uint64_t seed : {0ULL, 5ULL, 99ULL}) {
            auto x3c = gen_x3c(1, seed, true);
            CHECK(x3c.sets == std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 3}});
        }
    }
    SUBCASE("regular and always solvable") {
        for (int ell = 1; ell <= 4; ++ell)
            for (std::uint64_t seed = 0; seed < 6; ++seed) {
                auto x3c = gen_x3c(ell, seed, true);
                CHECK_NOTHROW(validate_x3c(x3c));
                CHECK(x3c.num_sets() == 2 * ell);
                CHECK(solve_x3c(x3c).has_value());
            }
    }
}

TEST_CASE("configuration-model generator") {
    for (int ell = 1; ell <= 4; ++ell)
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            auto x3c = gen_x3c(ell, seed, false);
            CHECK_NOTHROW(validate_x3c(x3c));
            CHECK(x3c.num_sets() == 2 * ell);
            auto again = gen_x3c(ell, seed, false);
            CHECK(x3c.sets == again.sets);
        }
}

TEST_CASE("two-candidate reduction, smallest instance") {
    const auto reduced = reduce_two_candidates(gen_x3c(1, 0, true));
    const auto& inst = reduced.named.instance;

    CHECK(inst.election.num_voters() == 14);
    CHECK(inst.graph.edges().size() == 19);
    CHECK(full_tally(inst) == std::vector<int>{7, 7});
    CHECK(inst.initiator == reduced.named.voter("u1"));
    CHECK(inst.target == reduced.named.candidate("1"));
    CHECK(inst.budget == Budget::infinite());
    CHECK(std::all_of(inst.cost.begin(), inst.cost.end(), [](Cost c) { return c == 1; }));
    CHECK(reachable_from(inst.graph, inst.initiator, {}).size() == 14);

    // Role inventory bijects with the construction.
    std::vector<std::string> expected = {"u1", "u2",   "u3",   "u4",   "u5",   "r",   "v1",
                                         "v2", "w1_1", "w1_2", "w1_3", "w2_1", "w2_2", "w2_3"};
    auto names = reduced.named.voter_names;
    std::sort(names.begin(), names.end());
    std::sort(expected.begin(), expected.end());
    CHECK(names == expected);

    REQUIRE(reduced.deletable.size() == 2);
    CHECK(reduced.deletable[0] == reduced.named.voter("v1"));
    CHECK(reduced.deletable[1] == reduced.named.voter("v2"));
}

TEST_CASE("two-candidate reduction, size formulas at ell=2 m=4") {
    const auto reduced = reduce_two_candidates(crossing_no_instance());
    const auto& inst = reduced.named.instance;
    const int ell = 2, m = 4;

    CHECK(count_prefix(reduced.named.voter_names, "u") == 22);
    CHECK(count_prefix(reduced.named.voter_names, "w") == 24);
    CHECK(inst.election.num_voters() == 51);
    CHECK(full_tally(inst) ==
          std::vector<int>{3 * ell * m - ell + m, 1 + 3 * ell * m});
    // path edges + path-to-hub + hub fan-out + 3 elements per set, m block
    // copies each
    CHECK(inst.graph.edges().size() ==
          static_cast<size_t>((ell * (3 * m - 1) - 1) + 1 + m + m * 3 * m));
    CHECK(reachable_from(inst.graph, inst.initiator, {}).size() == 51);
}

TEST_CASE("tree reduction, smallest instance") {
    const auto reduced = reduce_tree(gen_x3c(1, 0, true));
    const auto& inst = reduced.named.instance;

    CHECK(inst.election.num_voters() == 18);
    CHECK(inst.graph.edges().size() == 17);
    CHECK(reachable_from(inst.graph, inst.initiator, {}).size() == 18);
    CHECK(decompose(inst.graph).width() == 1);

    CHECK(reduced.named.candidate_names ==
          std::vector<std::string>{"1", "2", "3", "c", "d"});
    CHECK(inst.target == reduced.named.candidate("c"));
    CHECK(inst.initiator == reduced.named.voter("zs1"));

    // m+2 votes for every element and for c, m+1-ell for d.
    CHECK(full_tally(inst) == std::vector<int>{4, 4, 4, 4, 2});

    REQUIRE(reduced.deletable.size() == 2);
    CHECK(reduced.deletable[0] == reduced.named.voter("v1_1"));
    CHECK(reduced.deletable[1] == reduced.named.voter("v2_1"));
}

TEST_CASE("tree reduction, full tallies at ell=2 m=4") {
    const auto reduced = reduce_tree(crossing_no_instance());
    const auto& inst = reduced.named.instance;
    CHECK(inst.election.num_voters() == 45);
    CHECK(inst.graph.edges().size() == 44);
    CHECK(full_tally(inst) == std::vector<int>{6, 6, 6, 6, 6, 6, 6, 3});
    CHECK(decompose(inst.graph).width() == 1);
}

TEST_CASE("cover_to_witness, two-candidate example") {
    const auto x3c = gen_x3c(1, 0, true);
    const auto reduced = reduce_two_candidates(x3c);
    const auto witness = cover_to_witness(x3c, {0}, Reduction::kTwoCandidates);

    CHECK(witness.deleted == std::vector<Voter>{reduced.named.voter("v2")});
    CHECK(witness.total_cost == 1);
    CHECK(restricted_tally(reduced.named.instance, witness) == std::vector<int>{6, 7});
    CHECK(evaluate_control(reduced.named.instance, witness, Mode::kConstructive));
}

TEST_CASE("cover_to_witness, tree example") {
    const auto x3c = gen_x3c(1, 0, true);
    const auto reduced = reduce_tree(x3c);
    const auto witness = cover_to_witness(x3c, {0}, Reduction::kTree);

    CHECK(witness.deleted == std::vector<Voter>{reduced.named.voter("v1_1")});
    CHECK(restricted_tally(reduced.named.instance, witness) ==
          std::vector<int>{2, 2, 2, 3, 2});
    CHECK(evaluate_control(reduced.named.instance, witness, Mode::kConstructive));
}

TEST_CASE("cover_to_witness rejects bad covers") {
    const auto planted = fixture(2, {{1, 2, 3}, {4, 5, 6}, {1, 2, 3}, {4, 5, 6}});
    CHECK_THROWS_WITH(cover_to_witness(planted, {0, 0}, Reduction::kTree),
                      "cover lists a set twice");
    CHECK_THROWS_WITH(cover_to_witness(planted, {0}, Reduction::kTree),
                      "cover must pick exactly 2 sets");
    CHECK_THROWS_WITH(cover_to_witness(planted, {0, 2}, Reduction::kTree),
                      "cover misses element 4");
    CHECK_THROWS_WITH(cover_to_witness(planted, {0, 7}, Reduction::kTree),
                      "cover set index out of range");
}

TEST_CASE("reduction round-trip against the restricted oracle") {
    for (int ell = 1; ell <= 3; ++ell)
        for (std::uint64_t seed = 0; seed < 8; ++seed)
            for (bool planted : {true, false}) {
                CAPTURE(ell);
                CAPTURE(seed);
                CAPTURE(planted);
                const auto x3c = gen_x3c(ell, seed, planted);
                const auto cover = solve_x3c(x3c);
                const int m = x3c.num_sets();

                {
                    const auto reduced = reduce_two_candidates(x3c);
                    const auto brute = brute_force(reduced.named.instance, Mode::kConstructive,
                                                   reduced.deletable);
                    CHECK(brute.yes == cover.has_value());
                    if (brute.yes) {
                        // Any winning deletion keeps exactly ell selectors.
                        CHECK(m - static_cast<int>(brute.witness.deleted.size()) == ell);
                        const auto witness =
                            cover_to_witness(x3c, *cover, Reduction::kTwoCandidates);
                        CHECK(evaluate_control(reduced.named.instance, witness,
                                               Mode::kConstructive));
                    }
                }
                {
                    const auto reduced = reduce_tree(x3c);
                    const auto brute = brute_force(reduced.named.instance, Mode::kConstructive,
                                                   reduced.deletable);
                    CHECK(brute.yes == cover.has_value());
                    if (brute.yes) {
                        // Any winning deletion removes exactly ell heads.
                        CHECK(brute.witness.deleted.size() == static_cast<size_t>(ell));
                        const auto witness = cover_to_witness(x3c, *cover, Reduction::kTree);
                        CHECK(evaluate_control(reduced.named.instance, witness,
                                               Mode::kConstructive));
                        auto counts = restricted_tally(reduced.named.instance, witness);
                        CHECK(counts[reduced.named.instance.target] == m + 2 - ell);
                        CHECK(counts[x3c.universe_size() + 1] == m + 1 - ell);
                        for (int e = 0; e < x3c.universe_size(); ++e)
                            CHECK(counts[e] == m + 1 - ell);
                    }
                }
            }
}

TEST_CASE("reduced instances agree with the full solver") {
    SUBCASE("two candidates, ell=1") {
        const auto x3c = gen_x3c(1, 3, true);
        const auto reduced = reduce_two_candidates(x3c);
        const auto result = solve(reduced.named.instance, Mode::kConstructive);
        REQUIRE(result.yes);
        CHECK(result.witness.total_cost == 1);
        CHECK(evaluate_control(reduced.named.instance, result.witness, Mode::kConstructive));
    }
    SUBCASE("tree, solvable and unsolvable at ell=2") {
        for (bool planted : {true, false})
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const auto x3c = gen_x3c(2, seed, planted);
                const auto reduced = reduce_tree(x3c);
                const auto result = solve(reduced.named.instance, Mode::kConstructive);
                CHECK(result.yes == solve_x3c(x3c).has_value());
                if (result.yes) {
                    CHECK(result.witness.total_cost == 2);
                    CHECK(evaluate_control(reduced.named.instance, result.witness,
                                           Mode::kConstructive));
                }
            }
    }
}

TEST_CASE("irregular inputs are accepted only where safe") {
    // Element 1 is in three sets, 4..6 in one each; union still covers.
    const auto irregular = fixture(2, {{1, 2, 3}, {1, 4, 5}, {1, 2, 6}, {4, 5, 6}});
    CHECK_THROWS_AS(reduce_two_candidates(irregular), InvalidInput);
    CHECK_NOTHROW(reduce_two_candidates(irregular, true));
    CHECK_THROWS_AS(reduce_tree(irregular), InvalidInput);

    const auto reduced = reduce_two_candidates(irregular, true);
    const auto brute =
        brute_force(reduced.named.instance, Mode::kConstructive, reduced.deletable);
    CHECK(brute.yes == solve_x3c(irregular).has_value());
}

TEST_CASE("x3c text format") {
    SUBCASE("canonical write") {
        CHECK(write_x3c(gen_x3c(1, 0, true)) == "1\n1 2 3\n1 2 3\n");
    }
    SUBCASE("round-trip") {
        for (int ell = 1; ell <= 3; ++ell) {
            const auto x3c = gen_x3c(ell, 17, false);
            const auto back = parse_x3c(write_x3c(x3c));
            CHECK(back.ell == x3c.ell);
            CHECK(back.sets == x3c.sets);
        }
    }
    SUBCASE("permissive parse normalizes element order") {
        const auto x3c = parse_x3c("# cover instance\n1\n\n3 1 2\n2 3 1  # same triple\n");
        CHECK(x3c.ell == 1);
        CHECK(x3c.sets == std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 3}});
    }
    SUBCASE("diagnostics") {
        CHECK_THROWS_WITH(parse_x3c("# nothing\n"), "document: missing ell line");
        CHECK_THROWS_WITH(parse_x3c("1 2\n1 2 3\n"), "line 1: expected a single ell value");
        CHECK_THROWS_WITH(parse_x3c("1\n1 2\n"), "line 2: expected 3 elements");
        CHECK_THROWS_WITH(parse_x3c("1\n1 2 three\n"), "line 2: malformed element 'three'");
        CHECK_THROWS_AS(parse_x3c("1\n1 2 3\n1 2 9\n"), InvalidInput);
    }
}

}  // TEST_SUITE
