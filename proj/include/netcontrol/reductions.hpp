#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netcontrol/io.hpp"

namespace netcontrol {

// Regular exact 3-cover instance: universe {1..3*ell}, sets of three elements
// each whose union is the universe. Regularity means every element lies in
// exactly two sets, which forces num_sets() == 2*ell.
struct X3cInstance {
    int ell = 0;
    std::vector<std::array<int, 3>> sets;  // each ascending

    int universe_size() const { return 3 * ell; }
    int num_sets() const { return static_cast<int>(sets.size()); }
};

// Throws InvalidInput on malformed sets, uncovered elements, and (when
// require_regular) wrong element degrees. Set indices in messages are 0-based.
void validate_x3c(const X3cInstance& x3c, bool require_regular = true);

// Lexicographically first set of ell indices whose sets cover the universe
// (such sets are automatically pairwise disjoint), or nullopt. Enumeration is
// guarded to universes of at most 18 elements.
std::optional<std::vector<int>> solve_x3c(const X3cInstance& x3c);

// planted: two independent random partitions of the universe into triples,
// so a cover always exists. Otherwise a configuration-model pairing of two
// stubs per element, rejecting draws where a set repeats an element.
X3cInstance gen_x3c(int ell, std::uint64_t seed, bool planted);

enum class Reduction { kTwoCandidates, kTree };

// Control instance produced by a reduction. Voter names carry the gadget
// roles; deletable is the support set that optimal deletions can be limited
// to without loss (set selectors, respectively path heads).
struct LabeledInstance {
    io::NamedInstance named;
    std::vector<Voter> deletable;
};

// Two candidates 0 and 1, target 1, budgetless. A 0-voting path u1..u_{ell*(3m-1)}
// starts at the initiator u1, ends at the lone 1-voting hub r, r fans out to
// one 0-voting selector v_i per set, and selector v_i reaches the 1-voting
// block voters w{j}_{k} exactly at the elements k of its set. Keeping ell
// selectors whose sets cover the universe is the only way 1 can win uniquely.
LabeledInstance reduce_two_candidates(const X3cInstance& x3c, bool allow_irregular = false);

// Tree gadget with candidates {1..3*ell} + c + d, target c. One path per set
// (its three elements, then all of 1..3*ell, then one c-voter), a two-voter
// c-path zh1-zh2, and a d-voting spine zs1..zs_{m+1-ell} whose last vertex
// joins every other path's head. The initiator is zs1; deleting the heads of
// a covering set family is the only way c can win uniquely.
LabeledInstance reduce_tree(const X3cInstance& x3c);

// Deletion set certifying the reduced instance once `cover` solves the x3c:
// the selectors of the non-cover sets, respectively the covered paths' heads.
// Throws InvalidInput when cover is not an exact cover.
WitnessSet cover_to_witness(const X3cInstance& x3c, const std::vector<int>& cover,
                            Reduction which);

// Text format: first line ell, then one line of three elements per set.
// Elements within a line may come in any order; writing is canonical.
X3cInstance parse_x3c(const std::string& text);
std::string write_x3c(const X3cInstance& x3c);

}  // namespace netcontrol
