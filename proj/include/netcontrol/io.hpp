#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "netcontrol/election.hpp"
#include "netcontrol/treedecomp.hpp"

namespace netcontrol::io {

// Parse failure tied to a 1-based input line; line 0 marks document-level
// problems such as a missing section.
class ParseError : public InvalidInput {
public:
    ParseError(int line, const std::string& message)
        : InvalidInput((line > 0 ? "line " + std::to_string(line) + ": " : "document: ") + message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// A ControlInstance plus the external names of its voters and candidates.
// Internally everything is dense indices; names exist only at the file border.
struct NamedInstance {
    ControlInstance instance;
    std::vector<std::string> voter_names;
    std::vector<std::string> candidate_names;

    Voter voter(const std::string& name) const;
    Candidate candidate(const std::string& name) const;
};

// Instance document, one directive per line, in canonical order:
//   candidates <name>...
//   voter <name> <candidate> <cost>
//   edge <voter> <voter>
//   initiator <voter>
//   target <candidate>
//   budget <amount>|inf
// Parsing also accepts blank lines, '#' comments, and any line order.
NamedInstance parse_instance(const std::string& text);
std::string write_instance(const NamedInstance& named);

// Decomposition file, one node per line: id, kind ("bag"), parent id (-1 for
// the root), then the bag as voter names.
TreeDecomposition parse_decomposition(const std::string& text, const NamedInstance& named);
std::string write_decomposition(const TreeDecomposition& td, const NamedInstance& named);

// Witness file: one voter name per line, sorted by voter index on output.
std::vector<Voter> parse_witness(const std::string& text, const NamedInstance& named);
std::string write_witness(const std::vector<Voter>& deleted, const NamedInstance& named);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace netcontrol::io
