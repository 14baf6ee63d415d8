#pragma once

// Clique and Independent Set reduced to agent-addition control queries,
// plus exhaustive Clique / Independent Set deciders for small graphs.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablectl/control.hpp"

namespace stablectl {

inline constexpr std::size_t kMaxBruteVertices = 12;

class UndirectedGraph {
public:
    UndirectedGraph() = default;
    // Throws InvalidInput on unknown, repeated or self-loop edges.
    UndirectedGraph(std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    // Normalized (u < v) and sorted.
    const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
    bool adjacent(const std::string& u, const std::string& v) const;
    std::vector<std::string> neighbors(const std::string& v) const;

private:
    std::vector<std::string> vertices_;
    std::vector<std::pair<std::string, std::string>> edges_;
};

// `vertices <v> ...` followed by `edge <u> <v>` lines; '#' comments.
UndirectedGraph parse_graph(std::string_view text);
std::string serialize_graph(const UndirectedGraph& g);

struct ReductionResult {
    ControlQuery query;
    std::map<std::string, AgentId> name_map;  // gadget role -> agent
};

// All constructions need at least one vertex and k <= |V|.
// Goal must be MatchAgent (target wstar is filled in) or ExistsPerfectStable.
ReductionResult clique_to_csm_addag(const UndirectedGraph& g, std::size_t k, GoalKind goal);
ReductionResult is_to_csr_addag_ms(const UndirectedGraph& g, std::size_t k);
// Goal must be ExistsStable or ExistsPerfectStable.
ReductionResult is_to_csr_addag_existssm(const UndirectedGraph& g, std::size_t k, GoalKind goal);

// Exhaustive; throws CapExceeded above kMaxBruteVertices vertices.
bool brute_clique(const UndirectedGraph& g, std::size_t k);
bool brute_independent_set(const UndirectedGraph& g, std::size_t k);

}  // namespace stablectl
