// stablectl: command-line front end over the C API.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stablectl/stablectl.h"

namespace {

constexpr int kExitInvalid = 3;

struct Failure {
    int code;
    std::string message;
};

void check(stablectl_status status)
{
    if (status != STABLECTL_OK) {
        const int code = status == STABLECTL_ERR_ARGUMENT ? kExitInvalid : static_cast<int>(status);
        throw Failure{code, stablectl_last_error()};
    }
}

struct FreeString {
    void operator()(char* s) const { stablectl_string_free(s); }
};
using Text = std::unique_ptr<char, FreeString>;

struct FreeInstance {
    void operator()(stablectl_instance* p) const { stablectl_instance_free(p); }
};
using InstancePtr = std::unique_ptr<stablectl_instance, FreeInstance>;

struct FreeQuery {
    void operator()(stablectl_query* p) const { stablectl_query_free(p); }
};
using QueryPtr = std::unique_ptr<stablectl_query, FreeQuery>;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kExitInvalid, "cannot read " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure{kExitInvalid, "cannot write " + path};
}

InstancePtr load_instance(const std::string& path)
{
    stablectl_instance* raw = nullptr;
    check(stablectl_instance_parse(read_file(path).c_str(), &raw));
    return InstancePtr(raw);
}

// STABLECTL_CAP replaces the built-in default; an explicit --cap wins.
std::size_t resolve_cap(std::optional<std::size_t> flag, std::size_t builtin)
{
    std::size_t cap = builtin;
    if (const char* env = std::getenv("STABLECTL_CAP"); env && *env) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (*end != '\0') throw Failure{kExitInvalid, "STABLECTL_CAP must be a non-negative integer"};
        cap = static_cast<std::size_t>(v);
    }
    if (flag) cap = *flag;
    if (cap > builtin) std::cerr << "warning: enumeration cap raised to " << cap << " (default " << builtin << ")\n";
    return cap;
}

int cmd_validate(const std::string& path)
{
    stablectl_instance* raw = nullptr;
    check(stablectl_instance_parse_unchecked(read_file(path).c_str(), &raw));
    InstancePtr inst(raw);
    std::size_t count = 0;
    char* report = nullptr;
    check(stablectl_instance_validate(inst.get(), &count, &report));
    Text text(report);
    if (count == 0) {
        std::cout << "ok\n";
        return 0;
    }
    std::cout << text.get();
    return kExitInvalid;
}

int cmd_stable(const std::string& path, bool enumerate, bool partition, std::optional<std::size_t> cap_flag)
{
    auto inst = load_instance(path);
    if (enumerate) {
        const auto cap = resolve_cap(cap_flag, STABLECTL_DEFAULT_MATCHING_CAP);
        std::size_t count = 0;
        char* listing = nullptr;
        check(stablectl_enumerate_stable(inst.get(), cap, &count, &listing));
        std::cout << Text(listing).get();
    } else {
        int found = 0;
        char* matching = nullptr;
        check(stablectl_stable_matching(inst.get(), &found, &matching));
        Text text(matching);
        std::cout << (found ? text.get() : "none\n");
    }
    if (partition) {
        char* listing = nullptr;
        check(stablectl_stable_partition(inst.get(), &listing));
        std::cout << Text(listing).get();
    }
    return 0;
}

struct SolveArgs {
    std::string path;
    std::string problem;
    std::optional<std::size_t> budget;
    std::string target_agent;
    std::string target_pair;
    std::string target_matching;
    std::string query;
    std::string method = "auto";
    std::optional<std::size_t> cap;
};

int cmd_solve(const SolveArgs& a)
{
    auto inst = load_instance(a.path);
    std::string descriptor;
    if (!a.query.empty()) descriptor = read_file(a.query) + "\n";
    if (!a.problem.empty()) descriptor += "problem: " + a.problem + "\n";
    if (a.budget) descriptor += "budget: " + std::to_string(*a.budget) + "\n";
    if (!a.target_agent.empty()) descriptor += "target-agent: " + a.target_agent + "\n";
    if (!a.target_pair.empty()) descriptor += "target-pair: " + a.target_pair + "\n";
    if (!a.target_matching.empty()) descriptor += read_file(a.target_matching) + "\n";

    stablectl_query* raw = nullptr;
    check(stablectl_query_create(inst.get(), descriptor.c_str(), &raw));
    QueryPtr q(raw);

    stablectl_method method = STABLECTL_METHOD_AUTO;
    if (a.method == "poly") method = STABLECTL_METHOD_POLY;
    else if (a.method == "exact") method = STABLECTL_METHOD_EXACT;
    const auto cap = method == STABLECTL_METHOD_POLY ? STABLECTL_DEFAULT_CANDIDATE_CAP
                                                     : resolve_cap(a.cap, STABLECTL_DEFAULT_CANDIDATE_CAP);

    int yes = 0;
    int64_t optimum = -1;
    char* actions = nullptr;
    check(stablectl_solve(q.get(), method, cap, &yes, &optimum, &actions));
    Text witness(actions);
    std::cout << "verdict: " << (yes ? "yes" : "no") << '\n';
    std::cout << "optimum: " << (optimum < 0 ? std::string("unknown") : std::to_string(optimum)) << '\n';
    std::cout << "actions:" << (*witness.get() ? " " : "") << witness.get() << '\n';
    return 0;
}

int cmd_reduce(const std::string& graph, const std::string& from, const std::string& to, std::size_t k,
               const std::string& out)
{
    stablectl_query* raw = nullptr;
    char* names = nullptr;
    check(stablectl_reduce(read_file(graph).c_str(), from.c_str(), to.c_str(), k, &raw, &names));
    QueryPtr q(raw);
    Text name_map(names);

    char* inst_text = nullptr;
    check(stablectl_query_instance(q.get(), &inst_text));
    Text instance(inst_text);
    char* desc_text = nullptr;
    check(stablectl_query_descriptor(q.get(), &desc_text));
    Text descriptor(desc_text);

    std::string sidecar = "# name map (gadget role -> agent)\n";
    std::istringstream lines(name_map.get());
    for (std::string line; std::getline(lines, line);) sidecar += "# " + line + "\n";
    sidecar += descriptor.get();

    write_file(out, instance.get());
    write_file(out + ".query", sidecar);
    std::cout << "instance: " << out << '\n' << "query: " << out << ".query\n";
    std::istringstream desc(descriptor.get());
    for (std::string line; std::getline(desc, line);)
        if (line.rfind("budget:", 0) == 0) std::cout << line << '\n';
    return 0;
}

struct GenArgs {
    std::optional<std::size_t> n, na, nb;
    double density = 0.5;
    std::uint64_t seed = 0;
    bool bipartite = false;
    std::string out;
};

int cmd_gen(const GenArgs& a)
{
    stablectl_instance* raw = nullptr;
    if (a.bipartite || a.na || a.nb) {
        const auto na = a.na.value_or(a.n.value_or(0));
        const auto nb = a.nb.value_or(a.n.value_or(0));
        check(stablectl_generate_sm(na, nb, a.density, a.seed, &raw));
    } else {
        check(stablectl_generate_sr(a.n.value_or(0), a.density, a.seed, &raw));
    }
    InstancePtr inst(raw);
    char* text = nullptr;
    check(stablectl_instance_serialize(inst.get(), &text));
    Text serialized(text);
    if (a.out.empty()) std::cout << serialized.get();
    else write_file(a.out, serialized.get());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Control problems for stable marriage and stable roommates instances"};
    app.require_subcommand(1);
    app.set_version_flag("--version", stablectl_version());

    std::string path;
    auto* validate = app.add_subcommand("validate", "check an instance file");
    validate->add_option("instance", path, "instance file")->required();

    bool enumerate = false;
    bool partition = false;
    std::optional<std::size_t> stable_cap;
    auto* stable = app.add_subcommand("stable", "print a stable matching or 'none'");
    stable->add_option("instance", path, "instance file")->required();
    stable->add_flag("--enumerate", enumerate, "list every stable matching");
    stable->add_flag("--partition", partition, "print the stable partition");
    stable->add_option("--cap", stable_cap, "maximum acceptable pairs for --enumerate");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "solve a control problem");
    solve->add_option("instance", solve_args.path, "instance file")->required();
    std::vector<std::string> problems;
    for (const char* a : {"addag", "delag", "delacc"})
        for (const char* g : {"ma", "mp", "ms", "esm", "epsm"}) problems.push_back(std::string(a) + "-" + g);
    solve->add_option("--problem", solve_args.problem, "<addag|delag|delacc>-<ma|mp|ms|esm|epsm>")
        ->check(CLI::IsMember(problems));
    solve->add_option("--budget", solve_args.budget, "maximum number of actions");
    solve->add_option("--target-agent", solve_args.target_agent, "agent for ma");
    solve->add_option("--target-pair", solve_args.target_pair, "pair a,b for mp");
    solve->add_option("--target-matching", solve_args.target_matching, "matching file for ms");
    solve->add_option("--query", solve_args.query, "query sidecar written by reduce");
    solve->add_option("--method", solve_args.method, "auto, poly or exact")
        ->check(CLI::IsMember({"auto", "poly", "exact"}));
    solve->add_option("--cap", solve_args.cap, "maximum candidate actions for the exact solver");

    std::string graph, from, to, out;
    std::size_t k = 0;
    auto* reduce = app.add_subcommand("reduce", "build a control query from a graph problem");
    reduce->add_option("graph", graph, "graph file")->required();
    reduce->add_option("--from", from, "clique or is")->required();
    reduce->add_option("--to", to, "target problem")->required();
    reduce->add_option("--k", k, "clique / independent set size")->required();
    reduce->add_option("--out", out, "instance file to write; the query goes to <out>.query")->required();

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--n", gen_args.n, "number of agents (per side with --bipartite)");
    gen->add_option("--na", gen_args.na, "side a agents");
    gen->add_option("--nb", gen_args.nb, "side b agents");
    gen->add_option("--density", gen_args.density, "probability that a pair is acceptable");
    gen->add_option("--seed", gen_args.seed, "random seed");
    gen->add_flag("--bipartite", gen_args.bipartite, "generate a marriage instance");
    gen->add_option("--out", gen_args.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*validate) return cmd_validate(path);
        if (*stable) return cmd_stable(path, enumerate, partition, stable_cap);
        if (*solve) {
            if (solve_args.problem.empty() && solve_args.query.empty())
                throw Failure{kExitInvalid, "solve needs --problem or --query"};
            return cmd_solve(solve_args);
        }
        if (*reduce) return cmd_reduce(graph, from, to, k, out);
        if (*gen) return cmd_gen(gen_args);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    }
    return 0;
}
