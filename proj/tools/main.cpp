#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "netcontrol/dp_solve.hpp"
#include "netcontrol/io.hpp"
#include "netcontrol/oracle.hpp"
#include "netcontrol/reductions.hpp"
#include "netcontrol/treedecomp.hpp"

using namespace netcontrol;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

int default_jobs() {
    const char* env = std::getenv("NETCONTROL_JOBS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1)
        throw InvalidInput("NETCONTROL_JOBS must be a positive integer, got '" +
                           std::string(env) + "'");
    return static_cast<int>(value);
}

Mode parse_mode(const std::string& mode) {
    return mode == "constructive" ? Mode::kConstructive : Mode::kDestructive;
}

io::NamedInstance load_instance(const std::string& path) {
    return io::parse_instance(io::read_file(path));
}

bool witness_certifies(const ControlInstance& instance, const WitnessSet& witness, Mode mode) {
    return instance.budget.covers(witness.total_cost) &&
           evaluate_control(instance, witness, mode);
}

// Shared YES/NO reporting for solve and oracle. A YES is announced only after
// the witness passes the same check verify-witness runs; a failing witness is
// an internal error, never a silent YES.
int report(const io::NamedInstance& named, bool yes, const WitnessSet& witness, Mode mode) {
    if (!yes) {
        std::cout << "NO\n";
        return kExitNo;
    }
    if (!witness_certifies(named.instance, witness, mode)) {
        std::cerr << "error: solver returned a witness that fails verification\n";
        return kExitError;
    }
    std::cout << "YES\ncost " << witness.total_cost << "\nwitness";
    for (Voter v : witness.deleted) std::cout << ' ' << named.voter_names[v];
    std::cout << '\n';
    return kExitYes;
}

struct Options {
    std::string mode = "constructive";
    std::string which;
    std::string instance_path;
    std::string td_path;
    std::string witness_path;
    std::string deletable_path;
    std::string x3c_path;
    int jobs = 1;
    int ell = 1;
    std::uint64_t seed = 0;
    bool planted = false;
};

int run_solve(const Options& o) {
    const auto named = load_instance(o.instance_path);
    const auto pinned =
        o.td_path.empty()
            ? pinned_decomposition(named.instance, o.seed)
            : pinned_from(named.instance,
                          io::parse_decomposition(io::read_file(o.td_path), named));
    const Mode mode = parse_mode(o.mode);
    const SolveResult result = mode == Mode::kConstructive
                                   ? solve_constructive(named.instance, pinned, o.jobs)
                                   : solve_destructive(named.instance, pinned, o.jobs);
    return report(named, result.yes, result.witness, mode);
}

int run_oracle(const Options& o) {
    const auto named = load_instance(o.instance_path);
    std::optional<std::vector<Voter>> deletable;
    if (!o.deletable_path.empty())
        deletable = io::parse_witness(io::read_file(o.deletable_path), named);
    const Mode mode = parse_mode(o.mode);
    const OracleResult result = brute_force(named.instance, mode, deletable);
    return report(named, result.yes, result.witness, mode);
}

int run_decompose(const Options& o) {
    const auto named = load_instance(o.instance_path);
    std::cout << io::write_decomposition(decompose(named.instance.graph, o.seed), named);
    return kExitYes;
}

int run_validate_td(const Options& o) {
    const auto named = load_instance(o.instance_path);
    const auto td = io::parse_decomposition(io::read_file(o.td_path), named);
    const auto violations = validate(named.instance.graph, td);
    for (const auto& violation : violations) std::cout << "INVALID: " << violation << '\n';
    if (!violations.empty()) return kExitNo;
    std::cout << "OK\n";
    return kExitYes;
}

int run_gen_x3c(const Options& o) {
    std::cout << write_x3c(gen_x3c(o.ell, o.seed, o.planted));
    return kExitYes;
}

int run_reduce(const Options& o) {
    const auto x3c = parse_x3c(io::read_file(o.x3c_path));
    const LabeledInstance reduced =
        o.which == "tree" ? reduce_tree(x3c) : reduce_two_candidates(x3c);
    std::cout << io::write_instance(reduced.named);
    return kExitYes;
}

int run_verify_witness(const Options& o) {
    const auto named = load_instance(o.instance_path);
    const auto ids = io::parse_witness(io::read_file(o.witness_path), named);
    const WitnessSet witness = make_witness(named.instance, ids);
    if (!witness_certifies(named.instance, witness, parse_mode(o.mode))) {
        std::cout << "NO\n";
        return kExitNo;
    }
    std::cout << "YES\n";
    return kExitYes;
}

int run(int argc, char** argv) {
    Options o;
    o.jobs = default_jobs();

    CLI::App app{"Election control over voter networks: solvers, decompositions, reductions"};
    app.require_subcommand(1);
    const auto mode_check = CLI::IsMember({"constructive", "destructive"});

    auto* solve_cmd = app.add_subcommand("solve", "Decide control via the decomposition solver");
    solve_cmd->add_option("--mode", o.mode, "Control mode")->required()->check(mode_check);
    solve_cmd->add_option("--instance", o.instance_path, "Instance file")->required();
    solve_cmd->add_option("--td", o.td_path, "Decomposition file (default: auto-decompose)");
    solve_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", o.seed, "Seed for auto-decomposition");

    auto* oracle_cmd = app.add_subcommand("oracle", "Decide control by exhaustive search");
    oracle_cmd->add_option("--mode", o.mode, "Control mode")->required()->check(mode_check);
    oracle_cmd->add_option("--instance", o.instance_path, "Instance file")->required();
    oracle_cmd->add_option("--deletable", o.deletable_path,
                           "Restrict deletions to the voters listed in this file");

    auto* decompose_cmd = app.add_subcommand("decompose", "Print a tree decomposition");
    decompose_cmd->add_option("--graph-of", o.instance_path, "Instance file")->required();
    decompose_cmd->add_option("--seed", o.seed, "Heuristic tie-break seed");

    auto* validate_cmd = app.add_subcommand("validate-td", "Check a decomposition file");
    validate_cmd->add_option("--instance", o.instance_path, "Instance file")->required();
    validate_cmd->add_option("--td", o.td_path, "Decomposition file")->required();

    auto* gen_cmd = app.add_subcommand("gen-x3c", "Generate a regular exact 3-cover instance");
    gen_cmd->add_option("--ell", o.ell, "Universe size is 3*ell")
        ->required()
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", o.seed, "Generator seed");
    gen_cmd->add_flag("--planted", o.planted, "Guarantee a cover");

    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce exact 3-cover to a control instance");
    reduce_cmd->add_option("--which", o.which, "Reduction")
        ->required()
        ->check(CLI::IsMember({"two-candidates", "tree"}));
    reduce_cmd->add_option("--x3c", o.x3c_path, "Exact 3-cover file")->required();

    auto* verify_cmd = app.add_subcommand("verify-witness", "Check a deletion certificate");
    verify_cmd->add_option("--instance", o.instance_path, "Instance file")->required();
    verify_cmd->add_option("--witness", o.witness_path, "Witness file")->required();
    verify_cmd->add_option("--mode", o.mode, "Control mode")->required()->check(mode_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForAllHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& parse_error) {
        app.exit(parse_error);
        return kExitError;
    }

    if (app.got_subcommand(solve_cmd)) return run_solve(o);
    if (app.got_subcommand(oracle_cmd)) return run_oracle(o);
    if (app.got_subcommand(decompose_cmd)) return run_decompose(o);
    if (app.got_subcommand(validate_cmd)) return run_validate_td(o);
    if (app.got_subcommand(gen_cmd)) return run_gen_x3c(o);
    if (app.got_subcommand(reduce_cmd)) return run_reduce(o);
    return run_verify_witness(o);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& failure) {
        std::cerr << "error: " << failure.what() << '\n';
        return kExitError;
    }
}
