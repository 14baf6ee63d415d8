#pragma once

// Stable Roommates / Stable Marriage instances, pairs and matchings.
//
// An Instance is an immutable value. Agents are kept sorted by id (byte
// order) and addressed internally by their position in that order; every
// mutation returns a fresh Instance, so indices are only meaningful
// relative to the instance they came from. Ids are the stable key across
// instances.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stablectl {

using AgentId = std::string;
using AgentIndex = std::size_t;
inline constexpr AgentIndex kNoAgent = static_cast<AgentIndex>(-1);

enum class Kind { Roommates, Marriage };
enum class Side { A, B };

// True for a non-empty token without whitespace and without any of ":,>#".
bool is_valid_token(std::string_view token);

// Unordered pair of distinct agents, stored with first < second.
struct Pair {
    AgentId first;
    AgentId second;

    Pair() = default;
    Pair(AgentId u, AgentId v);

    bool contains(const AgentId& x) const { return first == x || second == x; }
    const AgentId& other(const AgentId& x) const { return x == first ? second : first; }

    auto operator<=>(const Pair&) const = default;
};

std::string to_string(const Pair& p);  // "a,b"
Pair parse_pair(std::string_view text);

// Set of pairwise disjoint pairs. Acceptability is checked against an
// instance separately (see check_matching in stability.hpp).
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<Pair> pairs);

    const std::vector<Pair>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    bool contains(const Pair& p) const;
    bool covers(const AgentId& x) const { return partner_.contains(x); }
    std::optional<AgentId> partner(const AgentId& x) const;

    bool operator==(const Matching& other) const { return pairs_ == other.pairs_; }

private:
    std::vector<Pair> pairs_;
    std::map<AgentId, AgentId> partner_;
};

struct AgentDecl {
    AgentId id;
    std::optional<Side> side;
    bool addable = false;
};

class Instance {
public:
    Instance() = default;

    // Structural construction only: ids must be unique valid tokens and every
    // preference entry must name a declared agent. Semantic invariants
    // (symmetry, bipartiteness, no self entries, no duplicates) are reported
    // by validate(), not enforced here.
    static Instance build(Kind kind, std::vector<AgentDecl> agents,
                          const std::map<AgentId, std::vector<AgentId>>& prefs);

    Kind kind() const { return kind_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    const std::vector<AgentId>& agents() const { return ids_; }
    const AgentId& id(AgentIndex i) const { return ids_[i]; }
    std::optional<AgentIndex> find(const AgentId& id) const;
    AgentIndex index_of(const AgentId& id) const;  // throws InvalidInput
    bool has_agent(const AgentId& id) const { return find(id).has_value(); }

    std::span<const AgentIndex> prefs(AgentIndex u) const { return prefs_[u]; }
    std::vector<AgentId> pref_ids(const AgentId& u) const;

    // Position of v on u's list, or -1.
    int rank(AgentIndex u, AgentIndex v) const { return rank_[u * ids_.size() + v]; }
    bool lists(AgentIndex u, AgentIndex v) const { return rank(u, v) >= 0; }
    bool acceptable(AgentIndex u, AgentIndex v) const { return lists(u, v) && lists(v, u); }
    bool acceptable(const Pair& p) const;

    // v strictly preferred by u to w; w == kNoAgent stands for "unmatched".
    bool prefers(AgentIndex u, AgentIndex v, AgentIndex w) const {
        const int rv = rank(u, v);
        if (rv < 0) return false;
        return w == kNoAgent || rv < rank(u, w);
    }

    std::optional<Side> side(AgentIndex u) const;
    bool addable(AgentIndex u) const { return addable_[u]; }
    std::vector<AgentId> addable_agents() const;
    bool has_addable() const;

    // Mutually acceptable pairs, sorted.
    std::vector<Pair> acceptable_pairs() const;
    std::vector<AgentDecl> declarations() const;

    // Index-level restriction used by the mutation functions: keeps agents
    // with keep[u] != 0, drops the listed pairs in both directions and
    // optionally clears every addable mark.
    Instance restricted(const std::vector<char>& keep,
                        const std::vector<std::pair<AgentIndex, AgentIndex>>& dropped_pairs,
                        bool clear_addable) const;

    bool operator==(const Instance& other) const;

private:
    Kind kind_ = Kind::Roommates;
    std::vector<AgentId> ids_;
    std::unordered_map<AgentId, AgentIndex> index_;
    std::vector<std::vector<AgentIndex>> prefs_;
    std::vector<int> rank_;
    std::vector<std::optional<Side>> sides_;
    std::vector<bool> addable_;
};

// Empty when every invariant holds.
std::vector<std::string> validate(const Instance& inst);

// Instance text format:
//   problem: sr|sm
//   agent <id> [side=a|b] [addable]
//   pref <id>: <id> > <id> > ...
Instance parse_instance(std::string_view text);            // validated
Instance parse_instance_unchecked(std::string_view text);  // syntax only
std::string serialize_instance(const Instance& inst);

// Matching text format: one `match <id> <id>` line per pair.
Matching parse_matching(std::string_view text);
std::string serialize_matching(const Matching& m);

Instance delete_agents(const Instance& inst, const std::set<AgentId>& removed);
Instance delete_pairs(const Instance& inst, const std::vector<Pair>& removed);
// Keeps the addable agents in `added`, drops the other addable agents and
// clears the addable marks.
Instance induce_with_added(const Instance& inst, const std::set<AgentId>& added);

Instance with_addable(const Instance& inst, const std::set<AgentId>& addable);

}  // namespace stablectl
