#include "stablectl/instance.hpp"

#include <algorithm>
#include <sstream>

#include "stablectl/errors.hpp"
#include "text_util.hpp"

namespace stablectl {

bool is_valid_token(std::string_view token)
{
    if (token.empty()) return false;
    for (char c : token) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == ',' || c == '>' || c == '#')
            return false;
    }
    return true;
}

Pair::Pair(AgentId u, AgentId v)
{
    if (u == v) throw InvalidInput("pair endpoints must be distinct: " + u);
    if (v < u) std::swap(u, v);
    first = std::move(u);
    second = std::move(v);
}

std::string to_string(const Pair& p) { return p.first + "," + p.second; }

Pair parse_pair(std::string_view text)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) throw InvalidInput("expected <id>,<id> but got '" + std::string(text) + "'");
    const auto u = detail::trim(text.substr(0, comma));
    const auto v = detail::trim(text.substr(comma + 1));
    if (!is_valid_token(u) || !is_valid_token(v))
        throw InvalidInput("invalid agent id in pair '" + std::string(text) + "'");
    return Pair(std::string(u), std::string(v));
}

Matching::Matching(std::vector<Pair> pairs) : pairs_(std::move(pairs))
{
    std::sort(pairs_.begin(), pairs_.end());
    for (const auto& p : pairs_) {
        for (const auto* end : {&p.first, &p.second}) {
            if (partner_.contains(*end)) throw InvalidInput("agent " + *end + " appears in two pairs of a matching");
        }
        partner_.emplace(p.first, p.second);
        partner_.emplace(p.second, p.first);
    }
}

bool Matching::contains(const Pair& p) const
{
    return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

std::optional<AgentId> Matching::partner(const AgentId& x) const
{
    auto it = partner_.find(x);
    if (it == partner_.end()) return std::nullopt;
    return it->second;
}

Instance Instance::build(Kind kind, std::vector<AgentDecl> agents,
                         const std::map<AgentId, std::vector<AgentId>>& prefs)
{
    std::sort(agents.begin(), agents.end(), [](const AgentDecl& x, const AgentDecl& y) { return x.id < y.id; });

    Instance inst;
    inst.kind_ = kind;
    const std::size_t n = agents.size();
    inst.ids_.reserve(n);
    inst.sides_.reserve(n);
    inst.addable_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& decl = agents[i];
        if (!is_valid_token(decl.id)) throw InvalidInput("invalid agent id '" + decl.id + "'");
        if (!inst.index_.emplace(decl.id, i).second) throw InvalidInput("duplicate agent " + decl.id);
        inst.ids_.push_back(decl.id);
        inst.sides_.push_back(decl.side);
        inst.addable_.push_back(decl.addable);
    }

    inst.prefs_.assign(n, {});
    inst.rank_.assign(n * n, -1);
    for (const auto& [owner, list] : prefs) {
        const AgentIndex u = inst.index_of(owner);
        auto& out = inst.prefs_[u];
        out.reserve(list.size());
        for (const auto& entry : list) {
            const AgentIndex v = inst.index_of(entry);
            if (inst.rank_[u * n + v] < 0) inst.rank_[u * n + v] = static_cast<int>(out.size());
            out.push_back(v);
        }
    }
    return inst;
}

std::optional<AgentIndex> Instance::find(const AgentId& id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

AgentIndex Instance::index_of(const AgentId& id) const
{
    auto found = find(id);
    if (!found) throw InvalidInput("unknown agent " + id);
    return *found;
}

std::vector<AgentId> Instance::pref_ids(const AgentId& u) const
{
    std::vector<AgentId> out;
    for (AgentIndex v : prefs(index_of(u))) out.push_back(ids_[v]);
    return out;
}

bool Instance::acceptable(const Pair& p) const
{
    auto u = find(p.first);
    auto v = find(p.second);
    return u && v && acceptable(*u, *v);
}

std::optional<Side> Instance::side(AgentIndex u) const { return sides_[u]; }

std::vector<AgentId> Instance::addable_agents() const
{
    std::vector<AgentId> out;
    for (AgentIndex u = 0; u < size(); ++u)
        if (addable_[u]) out.push_back(ids_[u]);
    return out;
}

bool Instance::has_addable() const
{
    return std::find(addable_.begin(), addable_.end(), true) != addable_.end();
}

std::vector<Pair> Instance::acceptable_pairs() const
{
    std::vector<Pair> out;
    for (AgentIndex u = 0; u < size(); ++u) {
        for (AgentIndex v : prefs_[u]) {
            if (u < v && lists(v, u)) out.emplace_back(ids_[u], ids_[v]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<AgentDecl> Instance::declarations() const
{
    std::vector<AgentDecl> out;
    out.reserve(size());
    for (AgentIndex u = 0; u < size(); ++u) out.push_back({ids_[u], sides_[u], addable_[u]});
    return out;
}

Instance Instance::restricted(const std::vector<char>& keep,
                              const std::vector<std::pair<AgentIndex, AgentIndex>>& dropped_pairs,
                              bool clear_addable) const
{
    const std::size_t n = size();
    std::vector<AgentIndex> remap(n, kNoAgent);
    Instance out;
    out.kind_ = kind_;
    for (AgentIndex u = 0; u < n; ++u) {
        if (!keep[u]) continue;
        remap[u] = out.ids_.size();
        out.index_.emplace(ids_[u], out.ids_.size());
        out.ids_.push_back(ids_[u]);
        out.sides_.push_back(sides_[u]);
        out.addable_.push_back(clear_addable ? false : addable_[u]);
    }

    std::vector<char> drop;
    if (!dropped_pairs.empty()) {
        drop.assign(n * n, 0);
        for (auto [u, v] : dropped_pairs) {
            drop[u * n + v] = 1;
            drop[v * n + u] = 1;
        }
    }

    const std::size_t m = out.ids_.size();
    out.prefs_.assign(m, {});
    out.rank_.assign(m * m, -1);
    for (AgentIndex u = 0; u < n; ++u) {
        if (remap[u] == kNoAgent) continue;
        auto& list = out.prefs_[remap[u]];
        for (AgentIndex v : prefs_[u]) {
            if (remap[v] == kNoAgent) continue;
            if (!drop.empty() && drop[u * n + v]) continue;
            int& r = out.rank_[remap[u] * m + remap[v]];
            if (r < 0) r = static_cast<int>(list.size());
            list.push_back(remap[v]);
        }
    }
    return out;
}

bool Instance::operator==(const Instance& other) const
{
    return kind_ == other.kind_ && ids_ == other.ids_ && prefs_ == other.prefs_ && sides_ == other.sides_ &&
           addable_ == other.addable_;
}

std::vector<std::string> validate(const Instance& inst)
{
    std::vector<std::string> out;
    const bool marriage = inst.kind() == Kind::Marriage;
    for (AgentIndex u = 0; u < inst.size(); ++u) {
        const auto& uid = inst.id(u);
        if (marriage && !inst.side(u)) out.push_back("agent " + uid + " has no side in a marriage instance");
        if (!marriage && inst.side(u)) out.push_back("agent " + uid + " has a side in a roommates instance");
    }
    for (AgentIndex u = 0; u < inst.size(); ++u) {
        const auto& uid = inst.id(u);
        std::vector<char> seen(inst.size(), 0);
        for (AgentIndex v : inst.prefs(u)) {
            const auto& vid = inst.id(v);
            if (v == u) {
                out.push_back("agent " + uid + " lists itself");
                continue;
            }
            if (seen[v]++) {
                if (seen[v] == 2) out.push_back("agent " + uid + " lists " + vid + " more than once");
                continue;
            }
            if (!inst.lists(v, u)) {
                out.push_back("symmetry violated for {" + uid + "," + vid + "}: " + uid + " lists " + vid +
                              " but " + vid + " does not list " + uid);
            }
            if (marriage && inst.side(u) && inst.side(u) == inst.side(v) && (u < v || !inst.lists(v, u))) {
                const auto& lo = u < v ? uid : vid;
                const auto& hi = u < v ? vid : uid;
                out.push_back("bipartiteness violated for {" + lo + "," + hi + "}: both on side " +
                              (*inst.side(u) == Side::A ? "a" : "b"));
            }
        }
    }
    return out;
}

namespace {

struct PrefLine {
    std::size_t line;
    std::vector<AgentId> entries;
};

Instance parse_raw(std::string_view text)
{
    std::optional<Kind> kind;
    std::vector<AgentDecl> decls;
    std::map<AgentId, std::size_t> decl_line;
    std::map<AgentId, PrefLine> prefs;

    std::size_t lineno = 0;
    for (auto raw : detail::split_lines(text)) {
        ++lineno;
        auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;

        if (!kind) {
            if (!line.starts_with("problem:")) throw ParseError(lineno, "expected 'problem: sr' or 'problem: sm'");
            auto value = detail::trim(line.substr(8));
            if (value == "sr") kind = Kind::Roommates;
            else if (value == "sm") kind = Kind::Marriage;
            else throw ParseError(lineno, "unknown problem kind '" + std::string(value) + "'");
            continue;
        }

        auto words = detail::split_ws(line);
        if (words[0] == "agent") {
            if (words.size() < 2) throw ParseError(lineno, "agent line without id");
            AgentDecl decl;
            decl.id = std::string(words[1]);
            if (!is_valid_token(decl.id)) throw ParseError(lineno, "invalid agent id '" + decl.id + "'");
            for (std::size_t i = 2; i < words.size(); ++i) {
                if (words[i] == "addable") {
                    decl.addable = true;
                } else if (words[i] == "side=a") {
                    decl.side = Side::A;
                } else if (words[i] == "side=b") {
                    decl.side = Side::B;
                } else {
                    throw ParseError(lineno, "unknown agent attribute '" + std::string(words[i]) + "'");
                }
            }
            if (*kind == Kind::Marriage && !decl.side) throw ParseError(lineno, "agent " + decl.id + " needs side=a|b");
            if (*kind == Kind::Roommates && decl.side)
                throw ParseError(lineno, "side= is only allowed in 'problem: sm' instances");
            if (!decl_line.emplace(decl.id, lineno).second) throw ParseError(lineno, "duplicate agent " + decl.id);
            decls.push_back(std::move(decl));
        } else if (words[0] == "pref") {
            const auto colon = line.find(':');
            if (colon == std::string_view::npos) throw ParseError(lineno, "pref line without ':'");
            auto head = detail::split_ws(line.substr(0, colon));
            if (head.size() != 2) throw ParseError(lineno, "expected 'pref <id>:'");
            AgentId owner(head[1]);
            PrefLine pl{lineno, {}};
            auto body = detail::trim(line.substr(colon + 1));
            if (!body.empty()) {
                for (auto item : detail::split(body, '>')) {
                    auto token = detail::trim(item);
                    if (!is_valid_token(token)) throw ParseError(lineno, "invalid entry '" + std::string(token) + "'");
                    pl.entries.emplace_back(token);
                }
            }
            if (!prefs.emplace(owner, std::move(pl)).second) throw ParseError(lineno, "second pref line for " + owner);
        } else {
            throw ParseError(lineno, "unknown directive '" + std::string(words[0]) + "'");
        }
    }
    if (!kind) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'problem:' header");

    std::map<AgentId, std::vector<AgentId>> lists;
    for (auto& [owner, pl] : prefs) {
        if (!decl_line.contains(owner)) throw ParseError(pl.line, "pref line for undeclared agent " + owner);
        for (const auto& e : pl.entries) {
            if (!decl_line.contains(e)) throw ParseError(pl.line, "unknown agent " + e);
        }
        lists.emplace(owner, std::move(pl.entries));
    }
    for (const auto& [id, line] : decl_line) {
        if (!prefs.contains(id)) throw ParseError(line, "missing pref line for agent " + id);
    }
    return Instance::build(*kind, std::move(decls), lists);
}

}  // namespace

Instance parse_instance_unchecked(std::string_view text) { return parse_raw(text); }

Instance parse_instance(std::string_view text)
{
    Instance inst = parse_raw(text);
    auto violations = validate(inst);
    if (!violations.empty()) {
        std::string msg = "invalid instance: " + violations.front();
        if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
        throw InvalidInput(msg);
    }
    return inst;
}

std::string serialize_instance(const Instance& inst)
{
    std::ostringstream out;
    out << "problem: " << (inst.kind() == Kind::Marriage ? "sm" : "sr") << '\n';
    for (AgentIndex u = 0; u < inst.size(); ++u) {
        out << "agent " << inst.id(u);
        if (auto s = inst.side(u)) out << (*s == Side::A ? " side=a" : " side=b");
        if (inst.addable(u)) out << " addable";
        out << '\n';
    }
    for (AgentIndex u = 0; u < inst.size(); ++u) {
        out << "pref " << inst.id(u) << ':';
        bool first = true;
        for (AgentIndex v : inst.prefs(u)) {
            out << (first ? " " : " > ") << inst.id(v);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

Matching parse_matching(std::string_view text)
{
    std::vector<Pair> pairs;
    std::size_t lineno = 0;
    for (auto raw : detail::split_lines(text)) {
        ++lineno;
        auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;
        auto words = detail::split_ws(line);
        if (words[0] != "match") continue;  // other key: value lines (e.g. query sidecars) are skipped
        if (words.size() != 3) throw ParseError(lineno, "expected 'match <id> <id>'");
        if (!is_valid_token(words[1]) || !is_valid_token(words[2])) throw ParseError(lineno, "invalid agent id");
        if (words[1] == words[2]) throw ParseError(lineno, "agent matched with itself");
        pairs.emplace_back(std::string(words[1]), std::string(words[2]));
    }
    try {
        return Matching(std::move(pairs));
    } catch (const InvalidInput& e) {
        throw ParseError(lineno, e.what());
    }
}

std::string serialize_matching(const Matching& m)
{
    std::string out;
    for (const auto& p : m.pairs()) out += "match " + p.first + " " + p.second + "\n";
    return out;
}

Instance delete_agents(const Instance& inst, const std::set<AgentId>& removed)
{
    std::vector<char> keep(inst.size(), 1);
    for (const auto& id : removed) keep[inst.index_of(id)] = 0;
    return inst.restricted(keep, {}, false);
}

Instance delete_pairs(const Instance& inst, const std::vector<Pair>& removed)
{
    std::vector<std::pair<AgentIndex, AgentIndex>> drop;
    drop.reserve(removed.size());
    for (const auto& p : removed) {
        if (!inst.acceptable(p)) throw InvalidInput("pair {" + to_string(p) + "} is not acceptable");
        drop.emplace_back(inst.index_of(p.first), inst.index_of(p.second));
    }
    std::vector<char> keep(inst.size(), 1);
    return inst.restricted(keep, drop, false);
}

Instance induce_with_added(const Instance& inst, const std::set<AgentId>& added)
{
    std::vector<char> keep(inst.size(), 1);
    for (const auto& id : added) {
        if (!inst.addable(inst.index_of(id))) throw InvalidInput("agent " + id + " is not addable");
    }
    for (AgentIndex u = 0; u < inst.size(); ++u) {
        if (inst.addable(u) && !added.contains(inst.id(u))) keep[u] = 0;
    }
    return inst.restricted(keep, {}, true);
}

Instance with_addable(const Instance& inst, const std::set<AgentId>& addable)
{
    auto decls = inst.declarations();
    for (auto& d : decls) d.addable = addable.contains(d.id);
    for (const auto& id : addable) inst.index_of(id);
    std::map<AgentId, std::vector<AgentId>> prefs;
    for (const auto& id : inst.agents()) prefs.emplace(id, inst.pref_ids(id));
    return Instance::build(inst.kind(), std::move(decls), prefs);
}

}  // namespace stablectl
