#include "stablectl/classic.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>

#include "stablectl/errors.hpp"
#include "stablectl/stability.hpp"

namespace stablectl {

Matching gale_shapley(const Instance& inst, Side proposing)
{
    if (inst.kind() != Kind::Marriage) throw InvalidInput("Gale-Shapley needs a marriage (sm) instance");

    const std::size_t n = inst.size();
    std::vector<std::size_t> next(n, 0);
    PartnerTable partner(n, kNoAgent);
    std::deque<AgentIndex> free;
    for (AgentIndex u = 0; u < n; ++u)
        if (inst.side(u) == proposing) free.push_back(u);

    while (!free.empty()) {
        const AgentIndex u = free.front();
        free.pop_front();
        const auto list = inst.prefs(u);
        while (next[u] < list.size()) {
            const AgentIndex v = list[next[u]++];
            const AgentIndex held = partner[v];
            if (held == kNoAgent || inst.prefers(v, u, held)) {
                partner[v] = u;
                partner[u] = v;
                if (held != kNoAgent) {
                    partner[held] = kNoAgent;
                    free.push_back(held);
                }
                break;
            }
        }
    }
    return to_matching(inst, partner);
}

StablePartition::StablePartition(std::map<AgentId, AgentId> successor) : successor_(std::move(successor))
{
    for (const auto& [x, y] : successor_) {
        if (!successor_.contains(y)) throw InvalidInput("successor of " + x + " is not part of the partition");
        if (!predecessor_.emplace(y, x).second) throw InvalidInput("successor map is not a permutation at " + y);
    }
}

const AgentId& StablePartition::successor(const AgentId& x) const
{
    auto it = successor_.find(x);
    if (it == successor_.end()) throw InvalidInput("agent " + x + " is not in the partition");
    return it->second;
}

const AgentId& StablePartition::predecessor(const AgentId& x) const
{
    auto it = predecessor_.find(x);
    if (it == predecessor_.end()) throw InvalidInput("agent " + x + " is not in the partition");
    return it->second;
}

std::vector<Party> StablePartition::parties() const
{
    std::vector<Party> out;
    std::map<AgentId, bool> seen;
    for (const auto& [start, _] : successor_) {
        if (seen[start]) continue;
        Party party;
        AgentId x = start;
        do {
            seen[x] = true;
            party.members.push_back(x);
            x = successor_.at(x);
        } while (x != start);
        out.push_back(std::move(party));
    }
    return out;
}

std::size_t StablePartition::odd_party_count() const
{
    auto all = parties();
    return static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [](const Party& p) { return p.odd(); }));
}

std::vector<AgentId> StablePartition::singletons() const
{
    std::vector<AgentId> out;
    for (const auto& [x, y] : successor_)
        if (x == y) out.push_back(x);
    return out;
}

namespace {

// Reduced preference table for Tan's algorithm. Entries are never
// re-inserted except by rolling back a failed rotation elimination.
class Table {
public:
    explicit Table(const Instance& inst) : inst_(inst), n_(inst.size()), alive_(n_), head_(n_, 0), tail_(n_), stamp_(n_, 0)
    {
        for (AgentIndex x = 0; x < n_; ++x) {
            const auto deg = inst.prefs(x).size();
            alive_[x].assign(deg, 1);
            tail_[x] = static_cast<long>(deg) - 1;
        }
    }

    bool empty(AgentIndex x) { return normalize(x), head_[x] > tail_[x]; }

    AgentIndex first(AgentIndex x)
    {
        normalize(x);
        return head_[x] > tail_[x] ? kNoAgent : entry(x, head_[x]);
    }

    AgentIndex last(AgentIndex x)
    {
        normalize(x);
        return head_[x] > tail_[x] ? kNoAgent : entry(x, tail_[x]);
    }

    AgentIndex second(AgentIndex x)
    {
        normalize(x);
        for (long i = head_[x] + 1; i <= tail_[x]; ++i)
            if (alive_[x][i]) return entry(x, i);
        return kNoAgent;
    }

    bool has(AgentIndex x, AgentIndex y) const
    {
        const int r = inst_.rank(x, y);
        return r >= 0 && alive_[x][r];
    }

    // Removes y from x's list and x from y's list.
    void remove(AgentIndex x, AgentIndex y)
    {
        touch(x);
        touch(y);
        kill(x, inst_.rank(x, y));
        kill(y, inst_.rank(y, x));
    }

    // x removes every entry it ranks below y; returns the removed agents.
    std::vector<AgentIndex> truncate_after(AgentIndex x, AgentIndex y)
    {
        std::vector<AgentIndex> removed;
        normalize(x);
        for (long i = tail_[x]; i > inst_.rank(x, y); --i) {
            if (!alive_[x][i]) continue;
            const AgentIndex z = entry(x, i);
            remove(x, z);
            removed.push_back(z);
        }
        return removed;
    }

    void begin()
    {
        ++epoch_;
        killed_.clear();
        saved_.clear();
    }

    void rollback()
    {
        for (auto [x, pos] : killed_) alive_[x][pos] = 1;
        for (auto [x, h, t] : saved_) {
            head_[x] = h;
            tail_[x] = t;
        }
        killed_.clear();
        saved_.clear();
    }

    const std::vector<std::tuple<AgentIndex, long, long>>& touched() const { return saved_; }

private:
    AgentIndex entry(AgentIndex x, long pos) const { return inst_.prefs(x)[static_cast<std::size_t>(pos)]; }

    void normalize(AgentIndex x)
    {
        touch(x);
        shrink(x);
    }

    void shrink(AgentIndex x)
    {
        while (head_[x] <= tail_[x] && !alive_[x][head_[x]]) ++head_[x];
        while (tail_[x] >= head_[x] && !alive_[x][tail_[x]]) --tail_[x];
    }

    // Saved bounds are normalized, so head <= tail means "non-empty when the
    // transaction started".
    void touch(AgentIndex x)
    {
        if (stamp_[x] == epoch_) return;
        stamp_[x] = epoch_;
        shrink(x);
        saved_.emplace_back(x, head_[x], tail_[x]);
    }

    void kill(AgentIndex x, int pos)
    {
        if (alive_[x][pos]) {
            alive_[x][pos] = 0;
            killed_.emplace_back(x, pos);
        }
    }

    const Instance& inst_;
    std::size_t n_;
    std::vector<std::vector<char>> alive_;
    std::vector<long> head_;
    std::vector<long> tail_;
    std::vector<std::size_t> stamp_;
    std::size_t epoch_ = 1;
    std::vector<std::pair<AgentIndex, int>> killed_;
    std::vector<std::tuple<AgentIndex, long, long>> saved_;
};

std::vector<AgentIndex> processing_order(const Instance& inst, const TanOptions& options)
{
    std::vector<AgentIndex> order;
    if (options.order.empty()) {
        for (AgentIndex u = 0; u < inst.size(); ++u) order.push_back(u);
        return order;
    }
    std::vector<char> seen(inst.size(), 0);
    for (const auto& id : options.order) {
        const auto u = inst.index_of(id);
        if (seen[u]++) throw InvalidInput("processing order lists " + id + " twice");
        order.push_back(u);
    }
    if (order.size() != inst.size()) throw InvalidInput("processing order must list every agent");
    return order;
}

// Proposal phase: every agent proposes down its list; a receiver holding a
// proposal drops everyone it ranks below the proposer.
void phase_one(Table& table, const std::vector<AgentIndex>& order, std::size_t n)
{
    std::vector<AgentIndex> holding(n, kNoAgent);
    std::deque<AgentIndex> queue(order.begin(), order.end());
    table.begin();
    while (!queue.empty()) {
        const AgentIndex x = queue.front();
        queue.pop_front();
        const AgentIndex y = table.first(x);
        if (y == kNoAgent) continue;
        const AgentIndex previous = holding[y];
        holding[y] = x;
        for (AgentIndex z : table.truncate_after(y, x)) {
            if (z == previous) queue.push_back(z);
        }
    }
}

// Tries to eliminate the rotation exposed by `cycle`. Returns false (with the
// table untouched) when elimination would empty a list or when a pair it
// relies on has already gone, which marks the cycle as an odd party.
bool eliminate(Table& table, const std::vector<AgentIndex>& cycle)
{
    std::vector<AgentIndex> seconds;
    seconds.reserve(cycle.size());
    for (AgentIndex p : cycle) seconds.push_back(table.second(p));

    table.begin();
    std::vector<AgentIndex> nonempty;
    bool ok = true;
    for (std::size_t i = 0; i < cycle.size() && ok; ++i) {
        const AgentIndex p = cycle[i];
        const AgentIndex q = seconds[i];
        if (!table.has(q, p)) {
            ok = false;
            break;
        }
        table.truncate_after(q, p);
    }
    if (ok) {
        for (const auto& [x, h, t] : table.touched()) {
            if (h <= t && table.empty(x)) {
                ok = false;
                break;
            }
        }
    }
    if (!ok) table.rollback();
    return ok;
}

}  // namespace

StablePartition tan_stable_partition(const Instance& inst, const TanOptions& options)
{
    const std::size_t n = inst.size();
    const auto order = processing_order(inst, options);
    Table table(inst);
    phase_one(table, order, n);

    std::vector<char> frozen(n, 0);
    std::vector<long> position(n, -1);
    while (true) {
        AgentIndex start = kNoAgent;
        for (AgentIndex x : order) {
            if (!frozen[x] && table.second(x) != kNoAgent) {
                start = x;
                break;
            }
        }
        if (start == kNoAgent) break;

        std::vector<AgentIndex> trail;
        AgentIndex p = start;
        while (position[p] < 0) {
            position[p] = static_cast<long>(trail.size());
            trail.push_back(p);
            const AgentIndex q = table.second(p);
            if (q == kNoAgent) throw InternalError("rotation trace reached an agent with a single entry");
            p = table.last(q);
            if (p == kNoAgent) throw InternalError("rotation trace reached an empty list");
        }
        std::vector<AgentIndex> cycle(trail.begin() + position[p], trail.end());
        for (AgentIndex x : trail) position[x] = -1;

        if (!eliminate(table, cycle)) {
            for (AgentIndex x : cycle) frozen[x] = 1;
        }
    }

    std::map<AgentId, AgentId> successor;
    for (AgentIndex x = 0; x < n; ++x) {
        const AgentIndex y = table.first(x);
        successor.emplace(inst.id(x), inst.id(y == kNoAgent ? x : y));
    }
    try {
        return StablePartition(std::move(successor));
    } catch (const InvalidInput& e) {
        throw InternalError(std::string("stable partition construction failed: ") + e.what());
    }
}

std::vector<std::string> validate_partition(const Instance& inst, const StablePartition& p)
{
    std::vector<std::string> out;
    const auto& succ = p.successors();
    if (succ.size() != inst.size()) out.push_back("partition does not cover exactly the agents of the instance");
    for (const auto& [x, y] : succ) {
        if (!inst.has_agent(x)) out.push_back("partition names unknown agent " + x);
    }
    if (!out.empty()) return out;

    const std::size_t n = inst.size();
    std::vector<AgentIndex> next(n), prev(n);
    for (AgentIndex x = 0; x < n; ++x) {
        next[x] = inst.index_of(succ.at(inst.id(x)));
        prev[next[x]] = x;
    }
    auto pred_or_none = [&](AgentIndex x) { return prev[x] == x ? kNoAgent : prev[x]; };

    for (AgentIndex x = 0; x < n; ++x) {
        if (next[x] != x && !inst.acceptable(x, next[x]))
            out.push_back("successor " + inst.id(next[x]) + " of " + inst.id(x) + " is not acceptable");
    }
    if (!out.empty()) return out;

    for (AgentIndex x = 0; x < n; ++x) {
        if (next[x] != prev[x] && !inst.prefers(x, next[x], prev[x]))
            out.push_back(inst.id(x) + " does not prefer its successor " + inst.id(next[x]) + " to its predecessor " +
                          inst.id(prev[x]));
    }
    for (AgentIndex x = 0; x < n; ++x) {
        for (AgentIndex y : inst.prefs(x)) {
            if (y <= x || !inst.lists(y, x)) continue;
            if (inst.prefers(x, y, pred_or_none(x)) && inst.prefers(y, x, pred_or_none(y)))
                out.push_back("{" + inst.id(x) + "," + inst.id(y) + "} blocks the partition");
        }
    }
    return out;
}

PartitionMatching partition_to_matching(const Instance& inst, const StablePartition& p)
{
    const auto violations = validate_partition(inst, p);
    if (!violations.empty()) throw InvalidInput("invalid stable partition: " + violations.front());

    PartitionMatching out;
    std::vector<Pair> pairs;
    for (const auto& party : p.parties()) {
        const auto& m = party.members;
        std::size_t begin = 0;
        if (party.odd()) {
            out.deleted.push_back(m.front());
            begin = 1;
        } else if (party.singleton()) {
            continue;
        }
        for (std::size_t i = begin; i + 1 < m.size(); i += 2) pairs.emplace_back(m[i], m[i + 1]);
    }
    std::sort(out.deleted.begin(), out.deleted.end());
    out.matching = Matching(std::move(pairs));
    return out;
}

std::optional<Matching> irving_stable_matching(const Instance& inst)
{
    const auto partition = tan_stable_partition(inst);
    if (partition.odd_party_count() > 0) return std::nullopt;
    return partition_to_matching(inst, partition).matching;
}

std::string render_partition(const StablePartition& p)
{
    std::ostringstream out;
    for (const auto& party : p.parties()) {
        out << "party (";
        for (std::size_t i = 0; i < party.members.size(); ++i) out << (i ? " " : "") << party.members[i];
        out << ')';
        if (party.odd()) out << " odd";
        else if (party.singleton()) out << " singleton";
        out << '\n';
    }
    return out.str();
}

}  // namespace stablectl
