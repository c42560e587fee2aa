#include "netcontrol/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>

#include "netcontrol/rng.hpp"

namespace netcontrol {

namespace {

std::string set_label(int index) { return "set " + std::to_string(index); }

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream stream(text);
    std::string raw;
    int number = 0;
    while (std::getline(stream, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream splitter(raw);
        Line line{number, {}};
        std::string token;
        while (splitter >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int parse_int(const std::string& token, int line, const std::string& what) {
    int value = 0;
    auto [end, err] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (err != std::errc() || end != token.data() + token.size())
        throw io::ParseError(line, "malformed " + what + " '" + token + "'");
    return value;
}

}  // namespace

void validate_x3c(const X3cInstance& x3c, bool require_regular) {
    if (x3c.ell <= 0) throw InvalidInput("ell must be positive");
    const int universe = x3c.universe_size();
    std::vector<int> degree(universe + 1, 0);
    for (int i = 0; i < x3c.num_sets(); ++i) {
        const auto& s = x3c.sets[i];
        for (int e : s) {
            if (e < 1 || e > universe)
                throw InvalidInput(set_label(i) + ": element " + std::to_string(e) +
                                   " is out of range");
            ++degree[e];
        }
        if (s[0] >= s[1] || s[1] >= s[2])
            throw InvalidInput(set_label(i) + " must list three distinct elements ascending");
    }
    for (int e = 1; e <= universe; ++e) {
        if (degree[e] == 0)
            throw InvalidInput("element " + std::to_string(e) + " is covered by no set");
        if (require_regular && degree[e] != 2)
            throw InvalidInput("element " + std::to_string(e) + " belongs to " +
                               std::to_string(degree[e]) + " sets, expected 2");
    }
}

std::optional<std::vector<int>> solve_x3c(const X3cInstance& x3c) {
    validate_x3c(x3c, false);
    const int universe = x3c.universe_size();
    if (universe > 18) throw InvalidInput("universe has more than 18 elements");
    const std::uint32_t full = (1u << universe) - 1;
    const int m = x3c.num_sets();
    std::vector<std::uint32_t> mask(m, 0);
    for (int i = 0; i < m; ++i)
        for (int e : x3c.sets[i]) mask[i] |= 1u << (e - 1);

    // Ascending-index DFS visits the ell-subsets in lexicographic order, so
    // the first cover found is the lexicographically first one. A cover of
    // ell triples over 3*ell elements is necessarily disjoint, which justifies
    // skipping any set overlapping the accumulated union.
    std::vector<int> chosen;
    std::uint32_t acc = 0;
    auto search = [&](auto&& self, int start) -> bool {
        if (static_cast<int>(chosen.size()) == x3c.ell) return acc == full;
        for (int i = start; i <= m - (x3c.ell - static_cast<int>(chosen.size())); ++i) {
            if (mask[i] & acc) continue;
            chosen.push_back(i);
            acc |= mask[i];
            if (self(self, i + 1)) return true;
            acc ^= mask[i];
            chosen.pop_back();
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return chosen;
}

X3cInstance gen_x3c(int ell, std::uint64_t seed, bool planted) {
    if (ell < 1) throw InvalidInput("ell must be positive");
    const int universe = 3 * ell;
    X3cInstance out;
    out.ell = ell;
    if (planted) {
        Rng rng(seed);
        std::vector<int> perm(universe);
        for (int half = 0; half < 2; ++half) {
            for (int e = 0; e < universe; ++e) perm[e] = e + 1;
            rng.shuffle(perm);
            for (int g = 0; g < ell; ++g) {
                std::array<int, 3> s{perm[3 * g], perm[3 * g + 1], perm[3 * g + 2]};
                std::sort(s.begin(), s.end());
                out.sets.push_back(s);
            }
        }
        return out;
    }
    // Configuration model: two stubs per element, paired off into triples.
    // Draws where a triple repeats an element are rejected; after a bounded
    // number of rejections the generator re-seeds, so the loop terminates.
    std::vector<int> stubs;
    for (std::uint64_t round = 0;; ++round) {
        Rng rng(seed + 0x9e3779b97f4a7c15ULL * round);
        for (int attempt = 0; attempt < 4096; ++attempt) {
            stubs.clear();
            for (int e = 1; e <= universe; ++e) {
                stubs.push_back(e);
                stubs.push_back(e);
            }
            rng.shuffle(stubs);
            out.sets.clear();
            bool ok = true;
            for (int g = 0; g < 2 * ell && ok; ++g) {
                std::array<int, 3> s{stubs[3 * g], stubs[3 * g + 1], stubs[3 * g + 2]};
                std::sort(s.begin(), s.end());
                ok = s[0] != s[1] && s[1] != s[2];
                out.sets.push_back(s);
            }
            if (ok) return out;
        }
    }
}

LabeledInstance reduce_two_candidates(const X3cInstance& x3c, bool allow_irregular) {
    validate_x3c(x3c, !allow_irregular);
    const int m = x3c.num_sets();
    const int universe = x3c.universe_size();
    const int path = x3c.ell * (3 * m - 1);
    const int n = path + 1 + m + m * universe;

    const int r_id = path;
    auto u_id = [&](int i) { return i - 1; };
    auto v_id = [&](int i) { return path + i; };
    auto w_id = [&](int j, int k) { return path + m + (j - 1) * universe + k; };

    std::vector<std::string> names(n);
    Election election{2, std::vector<Candidate>(n, 0)};
    for (int i = 1; i <= path; ++i) names[u_id(i)] = "u" + std::to_string(i);
    names[r_id] = "r";
    election.vote[r_id] = 1;
    for (int i = 1; i <= m; ++i) names[v_id(i)] = "v" + std::to_string(i);
    for (int j = 1; j <= m; ++j)
        for (int k = 1; k <= universe; ++k) {
            names[w_id(j, k)] = "w" + std::to_string(j) + "_" + std::to_string(k);
            election.vote[w_id(j, k)] = 1;
        }

    std::vector<std::pair<Voter, Voter>> edges;
    for (int i = 1; i < path; ++i) edges.emplace_back(u_id(i), u_id(i + 1));
    edges.emplace_back(u_id(path), r_id);
    for (int i = 1; i <= m; ++i) edges.emplace_back(r_id, v_id(i));
    for (int i = 1; i <= m; ++i)
        for (int k : x3c.sets[i - 1])
            for (int j = 1; j <= m; ++j) edges.emplace_back(v_id(i), w_id(j, k));

    LabeledInstance out;
    out.named.instance = ControlInstance{std::move(election), VoterGraph(n, std::move(edges)), 1,
                                         u_id(1), std::vector<Cost>(n, 1), Budget::infinite()};
    out.named.voter_names = std::move(names);
    out.named.candidate_names = {"0", "1"};
    for (int i = 1; i <= m; ++i) out.deletable.push_back(v_id(i));
    validate_instance(out.named.instance);
    return out;
}

LabeledInstance reduce_tree(const X3cInstance& x3c) {
    validate_x3c(x3c, true);
    const int m = x3c.num_sets();
    const int universe = x3c.universe_size();
    const int spine = m + 1 - x3c.ell;
    const Candidate cand_c = universe;  // elements map to candidates 0..universe-1
    const Candidate cand_d = universe + 1;

    std::vector<std::string> names;
    std::vector<Candidate> vote;
    std::vector<std::pair<Voter, Voter>> edges;
    std::vector<Voter> heads;
    auto add = [&](std::string name, Candidate c) {
        names.push_back(std::move(name));
        vote.push_back(c);
        return static_cast<Voter>(names.size() - 1);
    };

    for (int i = 1; i <= m; ++i) {
        Voter prev = -1;
        for (int j = 1; j <= 3; ++j) {
            Voter id = add("v" + std::to_string(i) + "_" + std::to_string(j),
                           x3c.sets[i - 1][j - 1] - 1);
            if (j == 1)
                heads.push_back(id);
            else
                edges.emplace_back(prev, id);
            prev = id;
        }
        for (int k = 1; k <= universe; ++k) {
            Voter id = add("u" + std::to_string(i) + "_" + std::to_string(k), k - 1);
            edges.emplace_back(prev, id);
            prev = id;
        }
        edges.emplace_back(prev, add("w" + std::to_string(i), cand_c));
    }
    const Voter zh1 = add("zh1", cand_c);
    edges.emplace_back(zh1, add("zh2", cand_c));
    std::vector<Voter> zs;
    for (int i = 1; i <= spine; ++i) {
        zs.push_back(add("zs" + std::to_string(i), cand_d));
        if (i > 1) edges.emplace_back(zs[i - 2], zs[i - 1]);
    }
    for (Voter head : heads) edges.emplace_back(zs.back(), head);
    edges.emplace_back(zs.back(), zh1);

    const int n = static_cast<int>(names.size());
    LabeledInstance out;
    out.named.instance =
        ControlInstance{Election{universe + 2, std::move(vote)}, VoterGraph(n, std::move(edges)),
                        cand_c, zs.front(), std::vector<Cost>(n, 1), Budget::infinite()};
    out.named.voter_names = std::move(names);
    for (int k = 1; k <= universe; ++k) out.named.candidate_names.push_back(std::to_string(k));
    out.named.candidate_names.push_back("c");
    out.named.candidate_names.push_back("d");
    out.deletable = std::move(heads);
    validate_instance(out.named.instance);
    return out;
}

WitnessSet cover_to_witness(const X3cInstance& x3c, const std::vector<int>& cover,
                            Reduction which) {
    const bool tree = which == Reduction::kTree;
    validate_x3c(x3c, tree);
    std::vector<int> sorted = cover;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidInput("cover lists a set twice");
    if (static_cast<int>(sorted.size()) != x3c.ell)
        throw InvalidInput("cover must pick exactly " + std::to_string(x3c.ell) + " sets");
    std::vector<bool> covered(x3c.universe_size() + 1, false);
    for (int i : sorted) {
        if (i < 0 || i >= x3c.num_sets()) throw InvalidInput("cover set index out of range");
        for (int e : x3c.sets[i]) covered[e] = true;
    }
    for (int e = 1; e <= x3c.universe_size(); ++e)
        if (!covered[e]) throw InvalidInput("cover misses element " + std::to_string(e));

    const LabeledInstance reduced = tree ? reduce_tree(x3c) : reduce_two_candidates(x3c, true);
    std::vector<Voter> deleted;
    if (tree) {
        for (int i : sorted)
            deleted.push_back(reduced.named.voter("v" + std::to_string(i + 1) + "_1"));
    } else {
        std::vector<bool> in_cover(x3c.num_sets(), false);
        for (int i : sorted) in_cover[i] = true;
        for (int i = 0; i < x3c.num_sets(); ++i)
            if (!in_cover[i]) deleted.push_back(reduced.named.voter("v" + std::to_string(i + 1)));
    }
    return make_witness(reduced.named.instance, std::move(deleted));
}

X3cInstance parse_x3c(const std::string& text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw io::ParseError(0, "missing ell line");
    X3cInstance out;
    bool first = true;
    for (const auto& line : lines) {
        if (first) {
            if (line.tokens.size() != 1)
                throw io::ParseError(line.number, "expected a single ell value");
            out.ell = parse_int(line.tokens[0], line.number, "ell");
            first = false;
            continue;
        }
        if (line.tokens.size() != 3) throw io::ParseError(line.number, "expected 3 elements");
        std::array<int, 3> s;
        for (int t = 0; t < 3; ++t) s[t] = parse_int(line.tokens[t], line.number, "element");
        std::sort(s.begin(), s.end());
        out.sets.push_back(s);
    }
    validate_x3c(out, false);
    return out;
}

std::string write_x3c(const X3cInstance& x3c) {
    std::string out = std::to_string(x3c.ell) + "\n";
    for (const auto& s : x3c.sets)
        out += std::to_string(s[0]) + " " + std::to_string(s[1]) + " " + std::to_string(s[2]) +
               "\n";
    return out;
}

}  // namespace netcontrol
