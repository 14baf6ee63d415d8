// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stablectl/classic.hpp"
#include "stablectl/control.hpp"
#include "stablectl/exact_solvers.hpp"
#include "stablectl/generators.hpp"
#include "stablectl/poly_solvers.hpp"
#include "stablectl/reductions.hpp"
#include "stablectl/stability.hpp"

using namespace stablectl;

namespace {

// Pinned limits. Every criterion has zero tolerance on mismatches.
constexpr double kLimitBlockingSeconds = 5.0;
constexpr double kLimitDelagMpSeconds = 120.0;
constexpr double kLimitPartitionSeconds = 60.0;
constexpr double kLimitCliqueSeconds = 300.0;
constexpr std::size_t kEnumerationCap = 64;  // n <= 8 complete has 28 pairs
constexpr std::size_t kTanOrders = 5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Tally {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::function<std::string()>& what)
    {
        ++checks;
        if (!ok && failures++ == 0) first_failure = what();
    }
};

// Criterion 10 bookkeeping shared by every exact solve.
Tally exact_audit;

ControlOutcome audited_exact(const ControlQuery& q)
{
    const auto r = solve_exact(q);
    if (r.yes) {
        const auto after = apply_actions(q, *r.witness);
        exact_audit.expect(r.witness->size() <= q.budget && goal_holds(after, q.goal, q.action), [&] {
            return "witness " + render_actions(*r.witness) + " fails for " + to_token(q.action) + "-" +
                   to_token(q.goal.kind);
        });
        auto next = q;
        next.budget = q.budget + 1;
        exact_audit.expect(solve_exact(next).yes, [&] {
            return "yes at budget " + std::to_string(q.budget) + " but no at " + std::to_string(next.budget);
        });
    }
    return r;
}

int failed = 0;

void report(int id, const std::string& title, const Tally& t, double elapsed, double limit = 0.0)
{
    bool ok = t.failures == 0 && t.checks > 0;
    std::string detail = std::to_string(t.checks) + " checks";
    if (t.failures) detail += ", " + std::to_string(t.failures) + " failed; first: " + t.first_failure;
    if (t.checks == 0) detail += " (nothing checked)";
    char timing[64];
    std::snprintf(timing, sizeof timing, ", %.2fs", elapsed);
    detail += timing;
    if (limit > 0.0) {
        std::snprintf(timing, sizeof timing, " (limit %.0fs)", limit);
        detail += timing;
        if (elapsed > limit) ok = false;
    }
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
}

Matching random_matching(const Instance& inst, std::mt19937_64& rng)
{
    auto pairs = inst.acceptable_pairs();
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::set<AgentId> used;
    std::vector<Pair> chosen;
    std::bernoulli_distribution keep(0.7);
    for (const auto& p : pairs) {
        if (used.contains(p.first) || used.contains(p.second) || !keep(rng)) continue;
        used.insert(p.first);
        used.insert(p.second);
        chosen.push_back(p);
    }
    return Matching(std::move(chosen));
}

std::multiset<std::set<AgentId>> odd_party_sets(const StablePartition& p)
{
    std::multiset<std::set<AgentId>> out;
    for (const auto& party : p.parties())
        if (party.odd()) out.insert(std::set<AgentId>(party.members.begin(), party.members.end()));
    return out;
}

std::vector<std::string> vertex_names(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i + 1));
    return out;
}

std::vector<std::pair<std::string, std::string>> vertex_pairs(const std::vector<std::string>& vs)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) out.emplace_back(vs[i], vs[j]);
    return out;
}

// Every labeled graph on 1..max_n vertices.
std::vector<UndirectedGraph> all_graphs(std::size_t max_n)
{
    std::vector<UndirectedGraph> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto vs = vertex_names(n);
        const auto slots = vertex_pairs(vs);
        for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
            std::vector<std::pair<std::string, std::string>> es;
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (mask >> i & 1) es.push_back(slots[i]);
            out.emplace_back(vs, es);
        }
    }
    return out;
}

UndirectedGraph random_graph(std::size_t n, std::mt19937_64& rng)
{
    const auto vs = vertex_names(n);
    std::vector<std::pair<std::string, std::string>> es;
    std::bernoulli_distribution coin(0.5);
    for (const auto& e : vertex_pairs(vs))
        if (coin(rng)) es.push_back(e);
    return UndirectedGraph(vs, es);
}

// Smallest adjacency bit string over all relabelings.
std::string canonical_form(const UndirectedGraph& g)
{
    const auto& vs = g.vertices();
    std::vector<std::size_t> perm(vs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::string best;
    do {
        std::string bits;
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) bits += g.adjacent(vs[perm[i]], vs[perm[j]]) ? '1' : '0';
        if (best.empty() || bits < best) best = bits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::to_string(vs.size()) + ":" + best;
}

std::string graph_label(const UndirectedGraph& g, std::size_t k)
{
    std::string s = "|V|=" + std::to_string(g.vertices().size()) + " E={";
    for (const auto& [u, v] : g.edges()) s += u + v + " ";
    return s + "} k=" + std::to_string(k);
}

// Criteria 2 and 3 share their instances.
std::vector<Instance> small_sr_family()
{
    std::vector<Instance> out;
    const double densities[] = {0.5, 0.75, 1.0};
    for (std::uint64_t seed = 0; seed < 300; ++seed)
        out.push_back(random_sr(2 + seed % 6, densities[seed % 3], 2000 + seed));
    return out;
}

void criterion_1()
{
    const auto start = Clock::now();
    Tally t;
    std::mt19937_64 rng(1);
    const double densities[] = {0.3, 0.6, 1.0};
    for (std::uint64_t i = 0; i < 300; ++i) {
        const auto inst = random_sr(1 + i % 10, densities[i % 3], 1000 + i);
        const auto m = random_matching(inst, rng);
        const auto count = blocking_pairs(inst, m).size();
        for (std::size_t budget = 0; budget <= 4; ++budget) {
            const auto r = solve_delacc_ms(inst, m, budget);
            t.expect(r.yes == (count <= budget), [&] { return "verdict mismatch on instance " + std::to_string(i); });
            if (r.yes)
                t.expect(is_stable(delete_pairs(inst, r.witness->pairs), m),
                         [&] { return "witness leaves M unstable on instance " + std::to_string(i); });
        }
    }
    report(1, "acceptability deletion for a given matching equals its blocking-pair count", t, seconds_since(start),
           kLimitBlockingSeconds);
}

void criterion_2(const std::vector<Instance>& family)
{
    const auto start = Clock::now();
    Tally t;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& inst = family[i];
        for (const auto& p : inst.acceptable_pairs())
            for (std::size_t budget = 0; budget <= 3; ++budget) {
                const auto poly = solve_delag_mp(inst, p, budget);
                const auto exact = audited_exact(ControlQuery{inst, Action::DelAg, Goal::match_pair(p), budget});
                t.expect(poly.yes == exact.yes && poly.optimum == exact.optimum, [&] {
                    return "instance " + std::to_string(i) + " pair {" + to_string(p) + "} budget " +
                           std::to_string(budget);
                });
            }
    }
    report(2, "agent deletion for a target pair: partition algorithm equals exact search", t, seconds_since(start),
           kLimitDelagMpSeconds);
}

void criterion_3(const std::vector<Instance>& family)
{
    const auto start = Clock::now();
    Tally t;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& inst = family[i];
        for (const auto& a : inst.agents())
            for (std::size_t budget = 0; budget <= 3; ++budget) {
                const auto poly = solve_delag_ma(inst, a, budget);
                const auto exact = audited_exact(ControlQuery{inst, Action::DelAg, Goal::match_agent(a), budget});
                t.expect(poly.yes == exact.yes && poly.optimum == exact.optimum, [&] {
                    return "instance " + std::to_string(i) + " agent " + a + " budget " + std::to_string(budget);
                });
            }
    }
    report(3, "agent deletion for a target agent: best partner equals exact search", t, seconds_since(start));
}

void criteria_4_and_5()
{
    const auto start = Clock::now();
    Tally t4, t5;
    std::mt19937_64 rng(4);
    const double densities[] = {0.3, 0.6, 1.0};
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto inst = random_sr(i % 9, densities[i % 3], 4000 + i);
        const auto label = [&] { return "instance " + std::to_string(i); };
        const auto stable = enumerate_stable_matchings(inst, kEnumerationCap);
        const auto irving = irving_stable_matching(inst);
        const auto partition = tan_stable_partition(inst);
        t4.expect(irving.has_value() == !stable.empty(), label);
        t4.expect((partition.odd_party_count() == 0) == !stable.empty(), label);
        t4.expect(validate_partition(inst, partition).empty(), label);
        if (irving) t4.expect(is_stable(inst, *irving), label);
        const auto reference = odd_party_sets(partition);
        for (std::size_t k = 0; k < kTanOrders; ++k) {
            TanOptions opt;
            opt.order = inst.agents();
            std::shuffle(opt.order.begin(), opt.order.end(), rng);
            const auto shuffled = tan_stable_partition(inst, opt);
            t4.expect(validate_partition(inst, shuffled).empty() && odd_party_sets(shuffled) == reference, label);
        }
        if (!stable.empty())
            for (const auto& m : stable) t5.expect(covered_agents(m) == covered_agents(stable.front()), label);
    }
    const double elapsed = seconds_since(start);
    report(4, "Irving, enumeration and stable partition agree; odd parties are order independent", t4, elapsed,
           kLimitPartitionSeconds);
    report(5, "all stable matchings cover the same agents", t5, elapsed);
}

void criterion_6()
{
    const auto start = Clock::now();
    Tally t;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto inst = random_sm(1 + i % 5, 1 + (i / 5) % 5, 0.4 + 0.3 * (i % 3), 6000 + i);
        const auto all = enumerate_stable_matchings(inst, kEnumerationCap);
        for (const Side side : {Side::A, Side::B}) {
            const auto gs = gale_shapley(inst, side);
            t.expect(is_stable(inst, gs), [&] { return "unstable output on instance " + std::to_string(i); });
            for (const auto& other : all)
                for (AgentIndex u = 0; u < inst.size(); ++u) {
                    if (inst.side(u) != side) continue;
                    const auto mine = gs.partner(inst.id(u));
                    const auto theirs = other.partner(inst.id(u));
                    if (!theirs) continue;
                    t.expect(mine && inst.rank(u, inst.index_of(*mine)) <= inst.rank(u, inst.index_of(*theirs)),
                             [&] { return "proposer " + inst.id(u) + " worse off on instance " + std::to_string(i); });
                }
        }
    }
    report(6, "Gale-Shapley is stable and proposer-optimal", t, seconds_since(start));
}

void criterion_7()
{
    const auto start = Clock::now();
    Tally t;
    std::set<std::string> classes_on_four;
    for (const auto& g : all_graphs(4)) {
        if (g.vertices().size() == 4) classes_on_four.insert(canonical_form(g));
        for (std::size_t k = 0; k <= g.vertices().size(); ++k)
            for (const auto goal : {GoalKind::MatchAgent, GoalKind::ExistsPerfectStable}) {
                const auto r = clique_to_csm_addag(g, k, goal);
                const bool budget_ok = r.query.budget == k + k * (k > 0 ? k - 1 : 0) / 2;
                const bool yes = audited_exact(r.query).yes;
                t.expect(budget_ok && yes == brute_clique(g, k),
                         [&] { return graph_label(g, k) + " goal " + to_token(goal); });
            }
    }
    t.expect(classes_on_four.size() == 11, [&] {
        return "expected 11 isomorphism classes on 4 vertices, saw " + std::to_string(classes_on_four.size());
    });
    report(7, "clique reduction round trip (all graphs on <= 4 vertices, " + std::to_string(classes_on_four.size()) +
                  " classes on 4)",
           t, seconds_since(start), kLimitCliqueSeconds);
}

void criterion_8()
{
    const auto start = Clock::now();
    Tally t;
    auto graphs = all_graphs(3);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) graphs.push_back(random_graph(4, rng));
    for (const auto& g : graphs)
        for (std::size_t k = 0; k <= g.vertices().size(); ++k) {
            const auto r = is_to_csr_addag_ms(g, k);
            const bool budget_ok = r.query.budget == 2 * g.vertices().size() - k;
            const bool yes = audited_exact(r.query).yes;
            t.expect(budget_ok && yes == brute_independent_set(g, k), [&] { return graph_label(g, k); });
        }
    report(8, "independent set to matching-set reduction round trip", t, seconds_since(start));
}

void criterion_9()
{
    const auto start = Clock::now();
    Tally t;
    std::vector<UndirectedGraph> graphs;
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto vs = vertex_names(n);
        const auto all = vertex_pairs(vs);
        std::vector<std::pair<std::string, std::string>> path, cycle, star;
        for (std::size_t i = 0; i + 1 < n; ++i) path.emplace_back(vs[i], vs[i + 1]);
        cycle = path;
        if (n >= 3) cycle.emplace_back(vs[0], vs[n - 1]);
        for (std::size_t i = 1; i < n; ++i) star.emplace_back(vs[0], vs[i]);
        for (const auto& es : {all, std::vector<std::pair<std::string, std::string>>{}, path, cycle, star})
            graphs.emplace_back(vs, es);
    }
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) graphs.push_back(random_graph(5, rng));

    for (const auto& g : graphs)
        for (std::size_t k = 0; k <= std::min<std::size_t>(g.vertices().size(), 3); ++k)
            for (const auto goal : {GoalKind::ExistsStable, GoalKind::ExistsPerfectStable}) {
                const auto r = is_to_csr_addag_existssm(g, k, goal);
                const auto out = audited_exact(r.query);
                t.expect(r.query.budget == k && out.yes == brute_independent_set(g, k),
                         [&] { return graph_label(g, k) + " goal " + to_token(goal); });
                if (out.yes) {
                    const auto after = apply_actions(r.query, *out.witness);
                    const auto m = irving_stable_matching(after);
                    t.expect(m && 2 * m->size() == after.size(),
                             [&] { return "non-perfect stable matching for " + graph_label(g, k); });
                }
            }
    report(9, "independent set to stable-matching existence reduction round trip", t, seconds_since(start));
}

}  // namespace

int main()
{
    const auto family = small_sr_family();
    criterion_1();
    criterion_2(family);
    criterion_3(family);
    criteria_4_and_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    report(10, "budget monotonicity and witness validity of every exact solve in 2, 3, 7-9", exact_audit, 0.0);
    std::printf("%d criterion/criteria failed\n", failed);
    return failed;
}
