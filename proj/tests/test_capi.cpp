#include <string>

#include "doctest.h"
#include "stablectl/stablectl.h"

namespace {

const char* kCycle = "problem: sr\nagent a\nagent b\nagent c\npref a: b > c\npref b: c > a\npref c: a > b\n";

std::string take(char* s)
{
    std::string out = s ? s : "";
    stablectl_string_free(s);
    return out;
}

}  // namespace

TEST_SUITE("c_api") {

TEST_CASE("parse, serialize, validate")
{
    stablectl_instance* inst = nullptr;
    REQUIRE(stablectl_instance_parse(kCycle, &inst) == STABLECTL_OK);
    CHECK(stablectl_instance_agent_count(inst) == 3);
    char* text = nullptr;
    REQUIRE(stablectl_instance_serialize(inst, &text) == STABLECTL_OK);
    CHECK(take(text) == kCycle);
    stablectl_instance_free(inst);

    CHECK(stablectl_instance_parse("problem: sr\nagent a\nagent b\npref a: b\npref b:\n", &inst) ==
          STABLECTL_ERR_INVALID);
    CHECK(std::string(stablectl_last_error()).find("symmetry") != std::string::npos);
    CHECK(stablectl_instance_parse("nonsense\n", &inst) == STABLECTL_ERR_PARSE);
    CHECK(stablectl_instance_parse(nullptr, &inst) == STABLECTL_ERR_ARGUMENT);

    REQUIRE(stablectl_instance_parse_unchecked("problem: sr\nagent a\nagent b\npref a: b\npref b:\n", &inst) ==
            STABLECTL_OK);
    size_t count = 0;
    char* report = nullptr;
    REQUIRE(stablectl_instance_validate(inst, &count, &report) == STABLECTL_OK);
    CHECK(count == 1);
    CHECK(take(report).find("{a,b}") != std::string::npos);
    stablectl_instance_free(inst);
}

TEST_CASE("stability calls")
{
    stablectl_instance* inst = nullptr;
    REQUIRE(stablectl_instance_parse(kCycle, &inst) == STABLECTL_OK);
    int found = 1;
    char* m = nullptr;
    REQUIRE(stablectl_stable_matching(inst, &found, &m) == STABLECTL_OK);
    CHECK(found == 0);
    CHECK(take(m).empty());

    size_t count = 7;
    char* listing = nullptr;
    REQUIRE(stablectl_enumerate_stable(inst, 24, &count, &listing) == STABLECTL_OK);
    CHECK(count == 0);
    CHECK(take(listing).empty());
    CHECK(stablectl_enumerate_stable(inst, 2, &count, &listing) == STABLECTL_ERR_CAP);

    REQUIRE(stablectl_stable_partition(inst, &listing) == STABLECTL_OK);
    CHECK(take(listing) == "party (a b c) odd\n");

    int stable = 1;
    REQUIRE(stablectl_is_stable(inst, "match a b\n", &stable) == STABLECTL_OK);
    CHECK(stable == 0);
    stablectl_instance_free(inst);
}

TEST_CASE("solve")
{
    stablectl_instance* inst = nullptr;
    REQUIRE(stablectl_instance_parse(kCycle, &inst) == STABLECTL_OK);
    stablectl_query* q = nullptr;
    REQUIRE(stablectl_query_create(inst, "problem: delag-mp\nbudget: 1\ntarget-pair: a,b\n", &q) == STABLECTL_OK);
    for (auto method : {STABLECTL_METHOD_AUTO, STABLECTL_METHOD_POLY, STABLECTL_METHOD_EXACT}) {
        int yes = 0;
        int64_t optimum = -1;
        char* actions = nullptr;
        REQUIRE(stablectl_solve(q, method, 20, &yes, &optimum, &actions) == STABLECTL_OK);
        CHECK(yes == 1);
        CHECK(optimum == 1);
        CHECK(take(actions) == "c");
    }
    stablectl_query_free(q);

    REQUIRE(stablectl_query_create(inst, "problem: delag-esm\nbudget: 0\n", &q) == STABLECTL_OK);
    int yes = 1;
    int64_t optimum = -1;
    char* actions = nullptr;
    CHECK(stablectl_solve(q, STABLECTL_METHOD_POLY, 20, &yes, &optimum, &actions) == STABLECTL_ERR_INVALID);
    REQUIRE(stablectl_solve(q, STABLECTL_METHOD_AUTO, 20, &yes, &optimum, &actions) == STABLECTL_OK);
    CHECK(yes == 0);
    CHECK(optimum == 1);
    CHECK(take(actions).empty());
    CHECK(stablectl_solve(q, STABLECTL_METHOD_EXACT, 1, &yes, &optimum, &actions) == STABLECTL_ERR_CAP);
    stablectl_query_free(q);

    CHECK(stablectl_query_create(inst, "problem: delag-ma\ntarget-agent: zz\n", &q) == STABLECTL_ERR_INVALID);
    CHECK(stablectl_has_poly_solver("delacc-ms") == 1);
    CHECK(stablectl_has_poly_solver("addag-ms") == 0);
    CHECK(stablectl_has_poly_solver("junk") == 0);
    stablectl_instance_free(inst);
}

TEST_CASE("reduce and generate")
{
    stablectl_query* q = nullptr;
    char* names = nullptr;
    REQUIRE(stablectl_reduce("vertices x y z\nedge x y\nedge y z\nedge x z\n", "clique", "csm-addag-ma", 2, &q,
                             &names) == STABLECTL_OK);
    CHECK(take(names).find("w* -> wstar") != std::string::npos);
    char* desc = nullptr;
    REQUIRE(stablectl_query_descriptor(q, &desc) == STABLECTL_OK);
    CHECK(take(desc) == "problem: addag-ma\nbudget: 3\ntarget-agent: wstar\n");
    stablectl_query_free(q);
    CHECK(stablectl_reduce("vertices x\n", "clique", "csr-addag-ms", 1, &q, &names) == STABLECTL_ERR_INVALID);
    CHECK(stablectl_reduce("vertices x\n", "is", "csr-addag-ms", 2, &q, &names) == STABLECTL_ERR_INVALID);

    stablectl_instance* a = nullptr;
    stablectl_instance* b = nullptr;
    REQUIRE(stablectl_generate_sr(5, 0.5, 9, &a) == STABLECTL_OK);
    REQUIRE(stablectl_generate_sr(5, 0.5, 9, &b) == STABLECTL_OK);
    char* ta = nullptr;
    char* tb = nullptr;
    stablectl_instance_serialize(a, &ta);
    stablectl_instance_serialize(b, &tb);
    CHECK(take(ta) == take(tb));
    stablectl_instance_free(a);
    stablectl_instance_free(b);
    REQUIRE(stablectl_generate_sm(2, 3, 1.0, 1, &a) == STABLECTL_OK);
    CHECK(stablectl_instance_agent_count(a) == 5);
    stablectl_instance_free(a);
    CHECK(stablectl_generate_sr(2, 7.0, 1, &a) == STABLECTL_ERR_INVALID);
}

}
