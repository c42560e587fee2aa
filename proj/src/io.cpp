#include "netcontrol/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace netcontrol::io {

namespace {

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

long long parse_number(const std::string& token, int line, const std::string& what) {
    long long value = 0;
    auto [end, err] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (err != std::errc() || end != token.data() + token.size())
        throw ParseError(line, "malformed " + what + " '" + token + "'");
    return value;
}

int lookup(const std::unordered_map<std::string, int>& table, const std::string& name, int line,
           const std::string& kind) {
    auto it = table.find(name);
    if (it == table.end()) throw ParseError(line, "unknown " + kind + " '" + name + "'");
    return it->second;
}

std::unordered_map<std::string, int> index_names(const std::vector<std::string>& names) {
    std::unordered_map<std::string, int> table;
    for (size_t i = 0; i < names.size(); ++i) table.emplace(names[i], static_cast<int>(i));
    return table;
}

}  // namespace

Voter NamedInstance::voter(const std::string& name) const {
    auto it = std::find(voter_names.begin(), voter_names.end(), name);
    if (it == voter_names.end()) throw InvalidInput("unknown voter '" + name + "'");
    return static_cast<Voter>(it - voter_names.begin());
}

Candidate NamedInstance::candidate(const std::string& name) const {
    auto it = std::find(candidate_names.begin(), candidate_names.end(), name);
    if (it == candidate_names.end()) throw InvalidInput("unknown candidate '" + name + "'");
    return static_cast<Candidate>(it - candidate_names.begin());
}

NamedInstance parse_instance(const std::string& text) {
    NamedInstance named;
    std::unordered_map<std::string, int> candidate_of, voter_of;
    struct PendingVoter {
        int line;
        std::string candidate;
        Cost cost;
    };
    struct PendingEdge {
        int line;
        std::string u, v;
    };
    std::vector<PendingVoter> voters;
    std::vector<PendingEdge> edges;
    int candidates_line = 0, initiator_line = 0, target_line = 0, budget_line = 0;
    std::string initiator_name, target_name;
    Budget budget;

    for (const Line& line : tokenize(text)) {
        const std::string& directive = line.tokens.front();
        if (directive == "candidates") {
            if (candidates_line) throw ParseError(line.number, "repeated candidates line");
            if (line.tokens.size() < 2)
                throw ParseError(line.number, "candidates line names no candidates");
            candidates_line = line.number;
            for (size_t i = 1; i < line.tokens.size(); ++i) {
                if (!candidate_of.emplace(line.tokens[i], static_cast<int>(i - 1)).second)
                    throw ParseError(line.number, "duplicate candidate id '" + line.tokens[i] + "'");
                named.candidate_names.push_back(line.tokens[i]);
            }
        } else if (directive == "voter") {
            if (line.tokens.size() != 4)
                throw ParseError(line.number, "voter line needs: voter <name> <candidate> <cost>");
            Cost cost = parse_number(line.tokens[3], line.number, "cost");
            if (cost < 0)
                throw ParseError(line.number, "negative cost for voter '" + line.tokens[1] + "'");
            if (!voter_of.emplace(line.tokens[1], static_cast<int>(named.voter_names.size())).second)
                throw ParseError(line.number, "duplicate voter id '" + line.tokens[1] + "'");
            named.voter_names.push_back(line.tokens[1]);
            voters.push_back({line.number, line.tokens[2], cost});
        } else if (directive == "edge") {
            if (line.tokens.size() != 3)
                throw ParseError(line.number, "edge line needs: edge <voter> <voter>");
            if (line.tokens[1] == line.tokens[2])
                throw ParseError(line.number, "self-loop edge at voter '" + line.tokens[1] + "'");
            edges.push_back({line.number, line.tokens[1], line.tokens[2]});
        } else if (directive == "initiator") {
            if (initiator_line) throw ParseError(line.number, "repeated initiator line");
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "initiator line needs: initiator <voter>");
            initiator_line = line.number;
            initiator_name = line.tokens[1];
        } else if (directive == "target") {
            if (target_line) throw ParseError(line.number, "repeated target line");
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "target line needs: target <candidate>");
            target_line = line.number;
            target_name = line.tokens[1];
        } else if (directive == "budget") {
            if (budget_line) throw ParseError(line.number, "repeated budget line");
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "budget line needs: budget <amount>|inf");
            budget_line = line.number;
            if (line.tokens[1] == "inf") {
                budget = Budget::infinite();
            } else {
                Cost amount = parse_number(line.tokens[1], line.number, "budget");
                if (amount < 0) throw ParseError(line.number, "negative budget");
                budget = Budget::of(amount);
            }
        } else {
            throw ParseError(line.number, "unknown directive '" + directive + "'");
        }
    }

    if (!candidates_line) throw ParseError(0, "missing candidates line");
    if (voters.empty()) throw ParseError(0, "no voters declared");
    if (!initiator_line) throw ParseError(0, "missing initiator line");
    if (!target_line) throw ParseError(0, "missing target line");
    if (!budget_line) throw ParseError(0, "missing budget line");

    Election election;
    election.num_candidates = static_cast<int>(named.candidate_names.size());
    std::vector<Cost> cost;
    for (const PendingVoter& voter : voters) {
        election.vote.push_back(lookup(candidate_of, voter.candidate, voter.line, "candidate"));
        cost.push_back(voter.cost);
    }

    std::vector<std::pair<Voter, Voter>> edge_pairs;
    for (const PendingEdge& edge : edges) {
        Voter u = lookup(voter_of, edge.u, edge.line, "voter");
        Voter v = lookup(voter_of, edge.v, edge.line, "voter");
        auto pair = std::minmax(u, v);
        if (std::find(edge_pairs.begin(), edge_pairs.end(),
                      std::make_pair(pair.first, pair.second)) != edge_pairs.end())
            throw ParseError(edge.line, "duplicate edge {" + edge.u + "," + edge.v + "}");
        edge_pairs.emplace_back(pair.first, pair.second);
    }

    named.instance = ControlInstance{
        std::move(election),
        VoterGraph(static_cast<int>(named.voter_names.size()), std::move(edge_pairs)),
        lookup(candidate_of, target_name, target_line, "candidate"),
        lookup(voter_of, initiator_name, initiator_line, "voter"),
        std::move(cost),
        budget};
    validate_instance(named.instance);
    return named;
}

std::string write_instance(const NamedInstance& named) {
    std::ostringstream out;
    out << "candidates";
    for (const std::string& name : named.candidate_names) out << ' ' << name;
    out << '\n';
    for (int v = 0; v < named.instance.election.num_voters(); ++v)
        out << "voter " << named.voter_names[v] << ' '
            << named.candidate_names[named.instance.election.vote[v]] << ' '
            << named.instance.cost[v] << '\n';
    for (auto [u, v] : named.instance.graph.edges())
        out << "edge " << named.voter_names[u] << ' ' << named.voter_names[v] << '\n';
    out << "initiator " << named.voter_names[named.instance.initiator] << '\n';
    out << "target " << named.candidate_names[named.instance.target] << '\n';
    if (named.instance.budget.unlimited)
        out << "budget inf\n";
    else
        out << "budget " << named.instance.budget.amount << '\n';
    return out.str();
}

TreeDecomposition parse_decomposition(const std::string& text, const NamedInstance& named) {
    auto voter_of = index_names(named.voter_names);
    struct Row {
        int line, parent;
        std::vector<Voter> bag;
    };
    std::unordered_map<int, Row> rows;
    int max_id = -1;
    for (const Line& line : tokenize(text)) {
        if (line.tokens.size() < 3)
            throw ParseError(line.number, "decomposition line needs: <id> bag <parent> <voters>...");
        int id = static_cast<int>(parse_number(line.tokens[0], line.number, "node id"));
        if (line.tokens[1] != "bag")
            throw ParseError(line.number, "unsupported node kind '" + line.tokens[1] + "'");
        int parent = static_cast<int>(parse_number(line.tokens[2], line.number, "parent id"));
        if (id < 0) throw ParseError(line.number, "negative node id");
        if (parent < -1) throw ParseError(line.number, "malformed parent id");
        Row row{line.number, parent, {}};
        for (size_t i = 3; i < line.tokens.size(); ++i)
            row.bag.push_back(lookup(voter_of, line.tokens[i], line.number, "voter"));
        std::sort(row.bag.begin(), row.bag.end());
        if (std::adjacent_find(row.bag.begin(), row.bag.end()) != row.bag.end())
            throw ParseError(line.number, "duplicate vertex in bag");
        if (!rows.emplace(id, std::move(row)).second)
            throw ParseError(line.number, "duplicate node id " + std::to_string(id));
        max_id = std::max(max_id, id);
    }
    if (rows.empty()) throw ParseError(0, "decomposition has no nodes");
    if (max_id + 1 != static_cast<int>(rows.size()))
        throw ParseError(0, "node ids must be consecutive from 0");

    TreeDecomposition td;
    td.parent.resize(rows.size());
    td.bags.resize(rows.size());
    for (auto& [id, row] : rows) {
        if (row.parent > max_id) throw ParseError(row.line, "parent id out of range");
        td.parent[id] = row.parent;
        td.bags[id] = std::move(row.bag);
    }
    return td;
}

std::string write_decomposition(const TreeDecomposition& td, const NamedInstance& named) {
    std::ostringstream out;
    for (int i = 0; i < td.num_nodes(); ++i) {
        out << i << " bag " << td.parent[i];
        for (Voter v : td.bags[i]) out << ' ' << named.voter_names[v];
        out << '\n';
    }
    return out.str();
}

std::vector<Voter> parse_witness(const std::string& text, const NamedInstance& named) {
    auto voter_of = index_names(named.voter_names);
    std::vector<Voter> deleted;
    for (const Line& line : tokenize(text)) {
        if (line.tokens.size() != 1)
            throw ParseError(line.number, "witness line must hold a single voter name");
        deleted.push_back(lookup(voter_of, line.tokens.front(), line.number, "voter"));
    }
    return deleted;
}

std::string write_witness(const std::vector<Voter>& deleted, const NamedInstance& named) {
    std::vector<Voter> sorted = deleted;
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream out;
    for (Voter v : sorted) out << named.voter_names[v] << '\n';
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InvalidInput("cannot write file: " + path);
}

}  // namespace netcontrol::io
