#include "stablectl/stablectl.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "stablectl/classic.hpp"
#include "stablectl/control.hpp"
#include "stablectl/errors.hpp"
#include "stablectl/exact_solvers.hpp"
#include "stablectl/generators.hpp"
#include "stablectl/instance.hpp"
#include "stablectl/poly_solvers.hpp"
#include "stablectl/reductions.hpp"
#include "stablectl/stability.hpp"

struct stablectl_instance {
    stablectl::Instance value;
};

struct stablectl_query {
    stablectl::ControlQuery value;
};

namespace {

thread_local std::string last_error;

stablectl_status fail(stablectl_status status, const std::string& message)
{
    last_error = message;
    return status;
}

template <typename F>
stablectl_status guarded(F&& body)
{
    try {
        body();
        return STABLECTL_OK;
    } catch (const stablectl::Error& e) {
        return fail(static_cast<stablectl_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(STABLECTL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(STABLECTL_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s)
{
    auto* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

#define STABLECTL_REQUIRE(cond)                                                \
    do {                                                                       \
        if (!(cond)) return fail(STABLECTL_ERR_ARGUMENT, "null argument: " #cond); \
    } while (0)

}  // namespace

extern "C" {

const char* stablectl_last_error(void) { return last_error.c_str(); }

const char* stablectl_version(void) { return "0.1.0"; }

void stablectl_string_free(char* s) { delete[] s; }

stablectl_status stablectl_instance_parse(const char* text, stablectl_instance** out)
{
    STABLECTL_REQUIRE(text && out);
    return guarded([&] { *out = new stablectl_instance{stablectl::parse_instance(text)}; });
}

stablectl_status stablectl_instance_parse_unchecked(const char* text, stablectl_instance** out)
{
    STABLECTL_REQUIRE(text && out);
    return guarded([&] { *out = new stablectl_instance{stablectl::parse_instance_unchecked(text)}; });
}

void stablectl_instance_free(stablectl_instance* inst) { delete inst; }

stablectl_status stablectl_instance_serialize(const stablectl_instance* inst, char** out)
{
    STABLECTL_REQUIRE(inst && out);
    return guarded([&] { *out = dup(stablectl::serialize_instance(inst->value)); });
}

size_t stablectl_instance_agent_count(const stablectl_instance* inst) { return inst ? inst->value.size() : 0; }

stablectl_status stablectl_instance_validate(const stablectl_instance* inst, size_t* count, char** report)
{
    STABLECTL_REQUIRE(inst && count && report);
    return guarded([&] {
        const auto violations = stablectl::validate(inst->value);
        std::string text;
        for (const auto& v : violations) text += v + "\n";
        *count = violations.size();
        *report = dup(text);
    });
}

stablectl_status stablectl_stable_matching(const stablectl_instance* inst, int* found, char** matching)
{
    STABLECTL_REQUIRE(inst && found && matching);
    return guarded([&] {
        const auto m = stablectl::irving_stable_matching(inst->value);
        *found = m.has_value();
        *matching = dup(m ? stablectl::serialize_matching(*m) : "");
    });
}

stablectl_status stablectl_enumerate_stable(const stablectl_instance* inst, size_t cap, size_t* count, char** listing)
{
    STABLECTL_REQUIRE(inst && count && listing);
    return guarded([&] {
        const auto all = stablectl::enumerate_stable_matchings(inst->value, cap);
        std::ostringstream out;
        for (std::size_t i = 0; i < all.size(); ++i)
            out << "matching " << i + 1 << '\n' << stablectl::serialize_matching(all[i]);
        *count = all.size();
        *listing = dup(out.str());
    });
}

stablectl_status stablectl_stable_partition(const stablectl_instance* inst, char** listing)
{
    STABLECTL_REQUIRE(inst && listing);
    return guarded([&] {
        *listing = dup(stablectl::render_partition(stablectl::tan_stable_partition(inst->value)));
    });
}

stablectl_status stablectl_is_stable(const stablectl_instance* inst, const char* matching_text, int* stable)
{
    STABLECTL_REQUIRE(inst && matching_text && stable);
    return guarded([&] {
        *stable = stablectl::is_stable(inst->value, stablectl::parse_matching(matching_text));
    });
}

stablectl_status stablectl_query_create(const stablectl_instance* inst, const char* descriptor, stablectl_query** out)
{
    STABLECTL_REQUIRE(inst && descriptor && out);
    return guarded([&] {
        auto q = stablectl::parse_query_descriptor(descriptor, inst->value);
        stablectl::validate_query(q);
        *out = new stablectl_query{std::move(q)};
    });
}

void stablectl_query_free(stablectl_query* q) { delete q; }

stablectl_status stablectl_query_instance(const stablectl_query* q, char** instance_text)
{
    STABLECTL_REQUIRE(q && instance_text);
    return guarded([&] { *instance_text = dup(stablectl::serialize_instance(q->value.instance)); });
}

stablectl_status stablectl_query_descriptor(const stablectl_query* q, char** descriptor)
{
    STABLECTL_REQUIRE(q && descriptor);
    return guarded([&] { *descriptor = dup(stablectl::serialize_query_descriptor(q->value)); });
}

stablectl_status stablectl_solve(const stablectl_query* q, stablectl_method method, size_t cap, int* yes,
                                 int64_t* optimum, char** actions)
{
    STABLECTL_REQUIRE(q && yes && optimum && actions);
    return guarded([&] {
        const auto& query = q->value;
        const bool poly = stablectl::has_poly_solver(query.action, query.goal.kind);
        stablectl::ControlOutcome outcome;
        switch (method) {
        case STABLECTL_METHOD_POLY:
            outcome = stablectl::solve_poly(query);
            break;
        case STABLECTL_METHOD_EXACT:
            outcome = stablectl::solve_exact(query, cap);
            break;
        case STABLECTL_METHOD_AUTO:
            outcome = poly ? stablectl::solve_poly(query) : stablectl::solve_exact(query, cap);
            break;
        default:
            throw stablectl::InvalidInput("unknown solve method");
        }
        *yes = outcome.yes;
        *optimum = outcome.optimum ? static_cast<int64_t>(*outcome.optimum) : -1;
        *actions = dup(outcome.witness ? stablectl::render_actions(*outcome.witness) : "");
    });
}

int stablectl_has_poly_solver(const char* problem)
{
    if (!problem) return 0;
    try {
        const auto [action, goal] = stablectl::parse_problem(problem);
        return stablectl::has_poly_solver(action, goal);
    } catch (const std::exception&) {
        return 0;
    }
}

stablectl_status stablectl_reduce(const char* graph_text, const char* from, const char* to, size_t k,
                                  stablectl_query** out, char** name_map)
{
    STABLECTL_REQUIRE(graph_text && from && to && out && name_map);
    return guarded([&] {
        using stablectl::GoalKind;
        const auto g = stablectl::parse_graph(graph_text);
        const std::string src(from);
        const std::string dst(to);
        stablectl::ReductionResult r;
        if (src == "clique" && dst == "csm-addag-ma") r = stablectl::clique_to_csm_addag(g, k, GoalKind::MatchAgent);
        else if (src == "clique" && dst == "csm-addag-epsm")
            r = stablectl::clique_to_csm_addag(g, k, GoalKind::ExistsPerfectStable);
        else if (src == "is" && dst == "csr-addag-ms") r = stablectl::is_to_csr_addag_ms(g, k);
        else if (src == "is" && dst == "csr-addag-esm")
            r = stablectl::is_to_csr_addag_existssm(g, k, GoalKind::ExistsStable);
        else if (src == "is" && dst == "csr-addag-epsm")
            r = stablectl::is_to_csr_addag_existssm(g, k, GoalKind::ExistsPerfectStable);
        else throw stablectl::InvalidInput("no reduction from '" + src + "' to '" + dst + "'");
        std::string map_text;
        for (const auto& [role, id] : r.name_map) map_text += role + " -> " + id + "\n";
        *out = new stablectl_query{std::move(r.query)};
        *name_map = dup(map_text);
    });
}

stablectl_status stablectl_generate_sr(size_t n, double density, uint64_t seed, stablectl_instance** out)
{
    STABLECTL_REQUIRE(out);
    return guarded([&] { *out = new stablectl_instance{stablectl::random_sr(n, density, seed)}; });
}

stablectl_status stablectl_generate_sm(size_t na, size_t nb, double density, uint64_t seed, stablectl_instance** out)
{
    STABLECTL_REQUIRE(out);
    return guarded([&] { *out = new stablectl_instance{stablectl::random_sm(na, nb, density, seed)}; });
}

}  // extern "C"
