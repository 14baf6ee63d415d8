#include "stablectl/exact_solvers.hpp"

#include <numeric>
#include <vector>

#include "stablectl/errors.hpp"

namespace stablectl {

namespace {

struct Hit {
    std::size_t size = 0;
    ActionSet actions;
};

ActionSet pick(const ActionSet& universe, const std::vector<std::size_t>& chosen)
{
    ActionSet out;
    for (auto i : chosen) {
        if (i < universe.agents.size()) out.agents.push_back(universe.agents[i]);
        else out.pairs.push_back(universe.pairs[i - universe.agents.size()]);
    }
    return out;
}

// Advances `c` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n)
{
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::optional<Hit> smallest_success(const ControlQuery& q, std::size_t cap)
{
    validate_query(q);
    const auto universe = candidate_actions(q);
    const std::size_t n = universe.size();
    if (n > cap) throw CapExceeded(n, cap);

    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> c(k);
        std::iota(c.begin(), c.end(), std::size_t{0});
        do {
            auto actions = pick(universe, c);
            if (goal_holds(apply_actions(q, actions), q.goal, q.action)) return Hit{k, std::move(actions)};
        } while (next_combination(c, n));
    }
    return std::nullopt;
}

}  // namespace

ControlOutcome solve_exact(const ControlQuery& q, std::size_t cap)
{
    ControlOutcome out;
    auto hit = smallest_success(q, cap);
    if (!hit) return out;
    out.optimum = hit->size;
    out.yes = hit->size <= q.budget;
    if (out.yes) out.witness = std::move(hit->actions);
    return out;
}

std::optional<std::size_t> min_control_cost(const ControlQuery& q, std::size_t cap)
{
    const auto hit = smallest_success(q, cap);
    if (!hit) return std::nullopt;
    return hit->size;
}

}  // namespace stablectl
