#pragma once

// Fixtures, a hand-rolled seeded instance generator and naive oracles that
// work on plain string maps, independent of the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stablectl/instance.hpp"

namespace testing {

using Prefs = std::map<std::string, std::vector<std::string>>;
using Partner = std::map<std::string, std::string>;  // both directions; absent = unmatched

inline std::string sr_text(const Prefs& prefs, const std::set<std::string>& addable = {})
{
    std::string text = "problem: sr\n";
    for (const auto& [id, list] : prefs) text += "agent " + id + (addable.contains(id) ? " addable" : "") + "\n";
    for (const auto& [id, list] : prefs) {
        text += "pref " + id + ":";
        for (std::size_t i = 0; i < list.size(); ++i) text += (i ? " > " : " ") + list[i];
        text += "\n";
    }
    return text;
}

inline stablectl::Instance sr(const Prefs& prefs, const std::set<std::string>& addable = {})
{
    return stablectl::parse_instance(sr_text(prefs, addable));
}

inline stablectl::Instance sm(const Prefs& prefs, const std::set<std::string>& side_a)
{
    std::string text = "problem: sm\n";
    for (const auto& [id, list] : prefs) text += "agent " + id + (side_a.contains(id) ? " side=a" : " side=b") + "\n";
    for (const auto& [id, list] : prefs) {
        text += "pref " + id + ":";
        for (std::size_t i = 0; i < list.size(); ++i) text += (i ? " > " : " ") + list[i];
        text += "\n";
    }
    return stablectl::parse_instance(text);
}

inline Prefs prefs_of(const stablectl::Instance& inst)
{
    Prefs out;
    for (const auto& id : inst.agents()) out[id] = inst.pref_ids(id);
    return out;
}

inline Prefs mutual_pair_prefs() { return {{"a", {"b"}}, {"b", {"a"}}}; }
inline Prefs three_cycle_prefs() { return {{"a", {"b", "c"}}, {"b", {"c", "a"}}, {"c", {"a", "b"}}}; }
inline Prefs sm2x2_prefs()
{
    return {{"m1", {"w1", "w2"}}, {"m2", {"w1", "w2"}}, {"w1", {"m2", "m1"}}, {"w2", {"m2", "m1"}}};
}
inline Prefs irving4_prefs()
{
    return {{"a", {"b", "c", "d"}}, {"b", {"c", "a", "d"}}, {"c", {"a", "b", "d"}}, {"d", {"a", "b", "c"}}};
}

inline stablectl::Instance mutual_pair() { return sr(mutual_pair_prefs()); }
inline stablectl::Instance three_cycle() { return sr(three_cycle_prefs()); }
inline stablectl::Instance sm2x2() { return sm(sm2x2_prefs(), {"m1", "m2"}); }

// SplitMix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }
    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t state_;
};

inline std::string agent_name(std::size_t i) { return "x" + std::string(i < 10 ? "0" : "") + std::to_string(i); }

inline Prefs random_prefs(Rng& rng, std::size_t n, double density)
{
    Prefs p;
    for (std::size_t i = 0; i < n; ++i) p[agent_name(i)];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.chance(density)) {
                p[agent_name(i)].push_back(agent_name(j));
                p[agent_name(j)].push_back(agent_name(i));
            }
    for (auto& [id, list] : p) rng.shuffle(list);
    return p;
}

// Side a: x00..x(na-1), side b: the rest.
inline Prefs random_bipartite_prefs(Rng& rng, std::size_t na, std::size_t nb, double density)
{
    Prefs p;
    for (std::size_t i = 0; i < na + nb; ++i) p[agent_name(i)];
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = na; j < na + nb; ++j)
            if (rng.chance(density)) {
                p[agent_name(i)].push_back(agent_name(j));
                p[agent_name(j)].push_back(agent_name(i));
            }
    for (auto& [id, list] : p) rng.shuffle(list);
    return p;
}

namespace oracle {

inline int pos(const Prefs& p, const std::string& u, const std::string& v)
{
    const auto& l = p.at(u);
    const auto it = std::find(l.begin(), l.end(), v);
    return it == l.end() ? -1 : static_cast<int>(it - l.begin());
}

inline bool acceptable(const Prefs& p, const std::string& u, const std::string& v)
{
    return pos(p, u, v) >= 0 && pos(p, v, u) >= 0;
}

// u would rather have v than its situation under `partner`.
inline bool wants(const Prefs& p, const Partner& partner, const std::string& u, const std::string& v)
{
    const auto it = partner.find(u);
    if (it == partner.end()) return true;
    return pos(p, u, v) < pos(p, u, it->second);
}

inline std::vector<std::pair<std::string, std::string>> blocking(const Prefs& p, const Partner& partner)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [u, lu] : p)
        for (const auto& v : lu) {
            if (!(u < v) || !acceptable(p, u, v)) continue;
            const auto it = partner.find(u);
            if (it != partner.end() && it->second == v) continue;
            if (wants(p, partner, u, v) && wants(p, partner, v, u)) out.emplace_back(u, v);
        }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> edges(const Prefs& p)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [u, lu] : p)
        for (const auto& v : lu)
            if (u < v && acceptable(p, u, v)) out.emplace_back(u, v);
    return out;
}

inline std::vector<Partner> all_matchings(const Prefs& p)
{
    const auto es = edges(p);
    std::vector<Partner> out;
    std::function<void(std::size_t, Partner&)> go = [&](std::size_t i, Partner& m) {
        if (i == es.size()) {
            out.push_back(m);
            return;
        }
        go(i + 1, m);
        const auto& [u, v] = es[i];
        if (!m.contains(u) && !m.contains(v)) {
            m[u] = v;
            m[v] = u;
            go(i + 1, m);
            m.erase(u);
            m.erase(v);
        }
    };
    Partner m;
    go(0, m);
    return out;
}

inline std::vector<Partner> stable_matchings(const Prefs& p)
{
    std::vector<Partner> out;
    for (auto& m : all_matchings(p))
        if (blocking(p, m).empty()) out.push_back(std::move(m));
    return out;
}

inline std::set<std::pair<std::string, std::string>> pair_set(const Partner& m)
{
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [u, v] : m)
        if (u < v) out.emplace(u, v);
    return out;
}

inline Prefs remove_agents(const Prefs& p, const std::set<std::string>& gone)
{
    Prefs out;
    for (const auto& [u, lu] : p) {
        if (gone.contains(u)) continue;
        auto& l = out[u];
        for (const auto& v : lu)
            if (!gone.contains(v)) l.push_back(v);
    }
    return out;
}

inline Prefs remove_pairs(const Prefs& p, const std::set<std::pair<std::string, std::string>>& gone)
{
    Prefs out;
    for (const auto& [u, lu] : p) {
        auto& l = out[u];
        for (const auto& v : lu)
            if (!gone.contains({std::min(u, v), std::max(u, v)})) l.push_back(v);
    }
    return out;
}

// Stable partition axioms checked literally; succ must be a permutation.
inline bool is_stable_partition(const Prefs& p, const std::map<std::string, std::string>& succ)
{
    std::map<std::string, std::string> pred;
    for (const auto& [x, y] : succ) pred[y] = x;
    if (pred.size() != succ.size()) return false;
    for (const auto& [x, y] : succ)
        if (x != y && pos(p, x, y) < 0) return false;
    // rank with self (fixed point) worst
    auto rank = [&](const std::string& x, const std::string& y) {
        return x == y ? 1 << 20 : pos(p, x, y);
    };
    for (const auto& [x, y] : succ) {
        const auto& w = pred.at(x);
        if (y != w && !(rank(x, y) < rank(x, w))) return false;
    }
    for (const auto& [x, lx] : p)
        for (const auto& y : lx) {
            if (!acceptable(p, x, y)) continue;
            if (rank(x, y) < rank(x, pred.at(x)) && rank(y, x) < rank(y, pred.at(y))) return false;
        }
    return true;
}

inline std::vector<std::map<std::string, std::string>> all_stable_partitions(const Prefs& p)
{
    std::vector<std::string> ids;
    for (const auto& [id, l] : p) ids.push_back(id);
    auto image = ids;
    std::vector<std::map<std::string, std::string>> out;
    do {
        std::map<std::string, std::string> succ;
        for (std::size_t i = 0; i < ids.size(); ++i) succ[ids[i]] = image[i];
        if (is_stable_partition(p, succ)) out.push_back(succ);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

// Sorted member sets of the odd cycles of length >= 3.
inline std::multiset<std::set<std::string>> odd_cycles(const std::map<std::string, std::string>& succ)
{
    std::multiset<std::set<std::string>> out;
    std::set<std::string> seen;
    for (const auto& [x, y] : succ) {
        if (seen.contains(x)) continue;
        std::set<std::string> cyc;
        for (auto z = x; !cyc.contains(z); z = succ.at(z)) cyc.insert(z);
        seen.insert(cyc.begin(), cyc.end());
        if (cyc.size() >= 3 && cyc.size() % 2 == 1) out.insert(cyc);
    }
    return out;
}

// The fixing pair set written out from its definition, over all pairs.
inline std::set<std::pair<std::string, std::string>> fixing_pairs(const Prefs& p, const std::string& a,
                                                                   const std::string& b)
{
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [x, lx] : p)
        for (const auto& y : lx) {
            if (!acceptable(p, x, y)) continue;
            const bool in_a = pos(p, a, x) >= 0 && pos(p, a, x) < pos(p, a, b);
            const bool in_b = pos(p, b, x) >= 0 && pos(p, b, x) < pos(p, b, a);
            const bool hit_a = in_a && (y == a || pos(p, x, a) < pos(p, x, y));
            const bool hit_b = in_b && (y == b || pos(p, x, b) < pos(p, x, y));
            if (hit_a || hit_b) out.emplace(std::min(x, y), std::max(x, y));
        }
    return out;
}

// Smallest number of deleted agents (outside `keep`) after which pred holds.
inline std::optional<std::size_t> min_deletions(const Prefs& p, const std::set<std::string>& keep,
                                                const std::function<bool(const Prefs&)>& pred)
{
    std::vector<std::string> cand;
    for (const auto& [id, l] : p)
        if (!keep.contains(id)) cand.push_back(id);
    std::optional<std::size_t> best;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cand.size()); ++mask) {
        std::set<std::string> gone;
        for (std::size_t i = 0; i < cand.size(); ++i)
            if (mask >> i & 1) gone.insert(cand[i]);
        if ((!best || gone.size() < *best) && pred(remove_agents(p, gone))) best = gone.size();
    }
    return best;
}

inline bool pair_in_some_stable(const Prefs& p, const std::string& a, const std::string& b)
{
    for (const auto& m : stable_matchings(p)) {
        const auto it = m.find(a);
        if (it != m.end() && it->second == b) return true;
    }
    return false;
}

}  // namespace oracle

}  // namespace testing
