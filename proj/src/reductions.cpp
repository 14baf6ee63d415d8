#include "stablectl/reductions.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "stablectl/errors.hpp"
#include "text_util.hpp"

namespace stablectl {

UndirectedGraph::UndirectedGraph(std::vector<std::string> vertices,
                                 std::vector<std::pair<std::string, std::string>> edges)
    : vertices_(std::move(vertices))
{
    std::sort(vertices_.begin(), vertices_.end());
    for (const auto& v : vertices_) {
        if (!is_valid_token(v)) throw InvalidInput("invalid vertex id '" + v + "'");
    }
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw InvalidInput("duplicate vertex");
    std::set<std::pair<std::string, std::string>> seen;
    for (auto [u, v] : edges) {
        if (!std::binary_search(vertices_.begin(), vertices_.end(), u) ||
            !std::binary_search(vertices_.begin(), vertices_.end(), v))
            throw InvalidInput("edge " + u + " " + v + " names an unknown vertex");
        if (u == v) throw InvalidInput("self-loop at " + u);
        if (v < u) std::swap(u, v);
        if (!seen.emplace(u, v).second) throw InvalidInput("parallel edge " + u + " " + v);
    }
    edges_.assign(seen.begin(), seen.end());
}

bool UndirectedGraph::adjacent(const std::string& u, const std::string& v) const
{
    auto e = u < v ? std::pair(u, v) : std::pair(v, u);
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<std::string> UndirectedGraph::neighbors(const std::string& v) const
{
    std::vector<std::string> out;
    for (const auto& [x, y] : edges_) {
        if (x == v) out.push_back(y);
        if (y == v) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

UndirectedGraph parse_graph(std::string_view text)
{
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    bool have_vertices = false;
    std::size_t lineno = 0;
    for (auto raw : detail::split_lines(text)) {
        ++lineno;
        const auto words = detail::split_ws(detail::strip_comment(raw));
        if (words.empty()) continue;
        if (words[0] == "vertices") {
            if (have_vertices) throw ParseError(lineno, "second 'vertices' line");
            have_vertices = true;
            for (std::size_t i = 1; i < words.size(); ++i) vertices.emplace_back(words[i]);
        } else if (words[0] == "edge") {
            if (!have_vertices) throw ParseError(lineno, "'edge' before 'vertices'");
            if (words.size() != 3) throw ParseError(lineno, "expected 'edge <u> <v>'");
            edges.emplace_back(std::string(words[1]), std::string(words[2]));
        } else {
            throw ParseError(lineno, "unknown directive '" + std::string(words[0]) + "'");
        }
    }
    if (!have_vertices) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'vertices' line");
    return UndirectedGraph(std::move(vertices), std::move(edges));
}

std::string serialize_graph(const UndirectedGraph& g)
{
    std::ostringstream out;
    out << "vertices";
    for (const auto& v : g.vertices()) out << ' ' << v;
    out << '\n';
    for (const auto& [u, v] : g.edges()) out << "edge " << u << ' ' << v << '\n';
    return out.str();
}

namespace {

struct Builder {
    Kind kind;
    std::vector<AgentDecl> decls;
    std::map<AgentId, std::vector<AgentId>> prefs;

    void add(const AgentId& id, std::optional<Side> side, bool addable)
    {
        if (prefs.contains(id)) throw InvalidInput("gadget agent " + id + " collides with another agent name");
        decls.push_back({id, side, addable});
        prefs[id];
    }

    void list(const AgentId& id, std::initializer_list<std::vector<AgentId>> blocks)
    {
        auto& out = prefs.at(id);
        for (const auto& block : blocks) out.insert(out.end(), block.begin(), block.end());
    }

    Instance build() const { return Instance::build(kind, decls, prefs); }
};

std::vector<AgentId> sorted(std::vector<AgentId> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

void require_k(const UndirectedGraph& g, std::size_t k)
{
    // Without vertices there is nothing to add.
    if (g.vertices().empty()) throw InvalidInput("graph has no vertices");
    if (k > g.vertices().size())
        throw InvalidInput("k = " + std::to_string(k) + " exceeds the number of vertices");
}

std::string edge_id(const std::pair<std::string, std::string>& e) { return e.first + "-" + e.second; }

}  // namespace

ReductionResult clique_to_csm_addag(const UndirectedGraph& g, std::size_t k, GoalKind goal)
{
    require_k(g, k);
    if (goal != GoalKind::MatchAgent && goal != GoalKind::ExistsPerfectStable)
        throw InvalidInput("clique reduction supports the ma and epsm goals");

    const auto women = Side::A;
    const auto men = Side::B;
    const std::size_t selectors = k == 0 ? 0 : k * (k - 1) / 2;
    const std::size_t dummies = g.vertices().size() - k;

    ReductionResult r;
    Builder b{Kind::Marriage, {}, {}};
    auto wv = [](const std::string& v) { return "wv_" + v; };
    auto mv = [](const std::string& v) { return "mv'_" + v; };
    auto we = [](const std::string& e) { return "we_" + e; };
    auto me = [](const std::string& e) { return "me_" + e; };
    auto me2 = [](const std::string& e) { return "me'_" + e; };

    std::vector<AgentId> s_ids, d_ids, me_ids, wv_ids;
    for (std::size_t i = 1; i <= selectors; ++i) s_ids.push_back("s_" + std::to_string(i));
    for (std::size_t j = 1; j <= dummies; ++j) d_ids.push_back("d_" + std::to_string(j));

    b.add("wstar", women, false);
    b.add("mstar", men, false);
    r.name_map["w*"] = "wstar";
    r.name_map["m*"] = "mstar";
    for (std::size_t i = 0; i < s_ids.size(); ++i) {
        b.add(s_ids[i], women, false);
        r.name_map["s[" + std::to_string(i + 1) + "]"] = s_ids[i];
    }
    for (std::size_t j = 0; j < d_ids.size(); ++j) {
        b.add(d_ids[j], men, false);
        r.name_map["d[" + std::to_string(j + 1) + "]"] = d_ids[j];
    }
    for (const auto& v : g.vertices()) {
        b.add(wv(v), women, false);
        b.add(mv(v), men, true);
        wv_ids.push_back(wv(v));
        r.name_map["w_v[" + v + "]"] = wv(v);
        r.name_map["m'_v[" + v + "]"] = mv(v);
    }
    for (const auto& e : g.edges()) {
        const auto id = edge_id(e);
        b.add(we(id), women, false);
        b.add(me(id), men, false);
        b.add(me2(id), men, true);
        me_ids.push_back(me(id));
        r.name_map["w_e[" + id + "]"] = we(id);
        r.name_map["m_e[" + id + "]"] = me(id);
        r.name_map["m'_e[" + id + "]"] = me2(id);
    }
    me_ids = sorted(me_ids);
    wv_ids = sorted(wv_ids);

    b.list("mstar", {s_ids, {"wstar"}});
    b.list("wstar", {{"mstar"}});
    for (const auto& s : s_ids) b.list(s, {me_ids, {"mstar"}});
    for (const auto& e : g.edges()) {
        const auto id = edge_id(e);
        b.list(me(id), {{we(id)}, sorted({wv(e.first), wv(e.second)}), s_ids});
        b.list(we(id), {{me2(id), me(id)}});
        b.list(me2(id), {{we(id)}});
    }
    for (const auto& v : g.vertices()) {
        std::vector<AgentId> incident;
        for (const auto& e : g.edges())
            if (e.first == v || e.second == v) incident.push_back(me(edge_id(e)));
        b.list(wv(v), {{mv(v)}, sorted(incident), d_ids});
        b.list(mv(v), {{wv(v)}});
    }
    for (const auto& d : d_ids) b.list(d, {wv_ids});

    r.query.instance = b.build();
    r.query.action = Action::AddAg;
    r.query.goal = goal == GoalKind::MatchAgent ? Goal::match_agent("wstar") : Goal::exists_perfect_stable();
    r.query.budget = k + selectors;
    return r;
}

ReductionResult is_to_csr_addag_ms(const UndirectedGraph& g, std::size_t k)
{
    require_k(g, k);
    ReductionResult r;
    Builder b{Kind::Roommates, {}, {}};
    std::vector<Pair> target;
    for (const auto& v : g.vertices()) {
        for (const char* role : {"a", "b", "c"}) {
            const std::string base = std::string(role) + "_" + v;
            const std::string copy = std::string(role) + "'_" + v;
            b.add(base, std::nullopt, false);
            b.add(copy, std::nullopt, true);
            r.name_map[std::string(role) + "_v[" + v + "]"] = base;
            r.name_map[std::string(role) + "'_v[" + v + "]"] = copy;
            target.emplace_back(base, copy);
        }
    }
    for (const auto& v : g.vertices()) {
        std::vector<AgentId> nbr;
        for (const auto& u : g.neighbors(v)) nbr.push_back("a'_" + u);
        b.list("a_" + v, {{"a'_" + v, "b_" + v, "c_" + v}});
        b.list("a'_" + v, {sorted(nbr), {"a_" + v}});
        b.list("b_" + v, {{"b'_" + v, "a_" + v}});
        b.list("b'_" + v, {{"b_" + v}});
        b.list("c_" + v, {{"c'_" + v, "a_" + v}});
        b.list("c'_" + v, {{"c_" + v}});
    }
    r.query.instance = b.build();
    r.query.action = Action::AddAg;
    r.query.goal = Goal::match_set(Matching(std::move(target)));
    r.query.budget = 2 * g.vertices().size() - k;
    return r;
}

ReductionResult is_to_csr_addag_existssm(const UndirectedGraph& g, std::size_t k, GoalKind goal)
{
    require_k(g, k);
    if (goal != GoalKind::ExistsStable && goal != GoalKind::ExistsPerfectStable)
        throw InvalidInput("independent set reduction supports the esm and epsm goals");

    ReductionResult r;
    Builder b{Kind::Roommates, {}, {}};
    std::vector<AgentId> s_ids;
    for (const auto& v : g.vertices()) {
        b.add(v, std::nullopt, true);
        r.name_map["v[" + v + "]"] = v;
    }
    for (std::size_t i = 1; i <= k; ++i) {
        const auto n = std::to_string(i);
        b.add("s_" + n, std::nullopt, false);
        b.add("ai_" + n, std::nullopt, false);
        b.add("bi_" + n, std::nullopt, false);
        r.name_map["s[" + n + "]"] = "s_" + n;
        r.name_map["a[" + n + "]"] = "ai_" + n;
        r.name_map["b[" + n + "]"] = "bi_" + n;
        s_ids.push_back("s_" + n);
    }
    for (const auto& v : g.vertices()) b.list(v, {g.neighbors(v), s_ids});
    for (std::size_t i = 1; i <= k; ++i) {
        const auto n = std::to_string(i);
        b.list("s_" + n, {g.vertices(), {"ai_" + n, "bi_" + n}});
        b.list("ai_" + n, {{"bi_" + n, "s_" + n}});
        b.list("bi_" + n, {{"s_" + n, "ai_" + n}});
    }
    r.query.instance = b.build();
    r.query.action = Action::AddAg;
    r.query.goal = goal == GoalKind::ExistsStable ? Goal::exists_stable() : Goal::exists_perfect_stable();
    r.query.budget = k;
    return r;
}

namespace {

template <typename Pred>
bool some_subset(const UndirectedGraph& g, std::size_t k, Pred pairwise_ok)
{
    const auto& vs = g.vertices();
    if (vs.size() > kMaxBruteVertices) throw CapExceeded(vs.size(), kMaxBruteVertices);
    if (k > vs.size()) return false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << vs.size()); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
        bool ok = true;
        for (std::size_t i = 0; ok && i < vs.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            for (std::size_t j = i + 1; ok && j < vs.size(); ++j)
                if (mask >> j & 1) ok = pairwise_ok(vs[i], vs[j]);
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool brute_clique(const UndirectedGraph& g, std::size_t k)
{
    return some_subset(g, k, [&](const auto& u, const auto& v) { return g.adjacent(u, v); });
}

bool brute_independent_set(const UndirectedGraph& g, std::size_t k)
{
    return some_subset(g, k, [&](const auto& u, const auto& v) { return !g.adjacent(u, v); });
}

}  // namespace stablectl
