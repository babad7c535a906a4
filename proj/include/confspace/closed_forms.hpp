#pragma once

// Closed-form Betti numbers of configuration spaces of stars, trees and
// one-connected graphs. All arithmetic is exact and overflow-checked.

#include "confspace/checked_int.hpp"
#include "confspace/error.hpp"
#include "confspace/graph.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace confspace {

namespace detail {
inline void require_hub(std::int64_t e) {
    if (e < 3)
        throw InvalidInput("hub degree must be at least 3");
}
inline void require_nonneg(std::int64_t n) {
    if (n < 0)
        throw InvalidInput("particle count must be nonnegative");
}
} // namespace detail

/// beta_1 of D_n(S) for a star with E arms.
inline std::int64_t beta1_star(std::int64_t e, std::int64_t n) {
    detail::require_hub(e);
    detail::require_nonneg(n);
    if (n < 2)
        return 0;
    using namespace arith;
    return add(sub(mul(binomial(n + e - 2, e - 1), e - 2), binomial(n + e - 2, e - 2)), 1);
}

/// beta_1 of the ordered space: 1 + (nE - 2n - E + 1) (n+E-2)!/(E-1)!.
inline std::int64_t beta1_star_ordered(std::int64_t e, std::int64_t n) {
    detail::require_hub(e);
    detail::require_nonneg(n);
    if (n < 2)
        return 0;
    using namespace arith;
    std::int64_t falling = 1;
    for (std::int64_t j = e; j <= n + e - 2; ++j)
        falling = mul(falling, j);
    std::int64_t lead = add(sub(sub(mul(n, e), mul(2, n)), e), 1);
    return add(1, mul(lead, falling));
}

namespace detail {
inline void check_two_particle(std::int64_t b2_1, std::int64_t b2_2, std::int64_t b1_1, std::int64_t b1_2,
                               std::int64_t mu_1, std::int64_t mu_2) {
    if (b2_1 < 0 || b2_2 < 0 || b1_1 < 0 || b1_2 < 0 || mu_1 < 0 || mu_2 < 0)
        throw InvalidInput("component Betti numbers must be nonnegative");
    if (mu_1 > b1_1 || mu_2 > b1_2)
        throw InvalidInput("trim loss cannot exceed the component's first Betti number");
}
} // namespace detail

/// beta_2 of D_2 for a graph with one cut vertex and two components.
inline std::int64_t beta2_two_particle(std::int64_t b2_1, std::int64_t b2_2, std::int64_t b1_1, std::int64_t b1_2,
                                       std::int64_t mu_1, std::int64_t mu_2) {
    detail::check_two_particle(b2_1, b2_2, b1_1, b1_2, mu_1, mu_2);
    using namespace arith;
    return add(add(b2_1, b2_2), sub(mul(b1_1, b1_2), mul(mu_1, mu_2)));
}

inline std::int64_t beta2_two_particle_ordered(std::int64_t b2_1, std::int64_t b2_2, std::int64_t b1_1,
                                               std::int64_t b1_2, std::int64_t mu_1, std::int64_t mu_2) {
    detail::check_two_particle(b2_1, b2_2, b1_1, b1_2, mu_1, mu_2);
    using namespace arith;
    return add(add(b2_1, b2_2), mul(2, sub(mul(b1_1, b1_2), mul(mu_1, mu_2))));
}

/// Per-component data at a cut vertex: beta_2 of its two-particle space,
/// its beta_1 and the loss mu from trimming.
struct ComponentBetti {
    std::int64_t b2 = 0;
    std::int64_t b1 = 0;
    std::int64_t mu = 0;
};

inline std::int64_t beta2_two_particle_multi(const std::vector<ComponentBetti>& cs,
                                             bool ordered = false) {
    if (cs.size() < 2)
        throw InvalidInput("at least two components are required");
    using namespace arith;
    std::int64_t base = 0, pairs = 0;
    for (const auto& c : cs) {
        detail::check_two_particle(c.b2, 0, c.b1, 0, c.mu, 0);
        base = add(base, c.b2);
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            pairs = add(pairs, sub(mul(cs[i].b1, cs[j].b1), mul(cs[i].mu, cs[j].mu)));
    return add(base, ordered ? mul(2, pairs) : pairs);
}

/// beta_2 of D_n for a tree with two essential vertices of degrees E and E'.
inline std::int64_t beta2_tree_pair(std::int64_t e1, std::int64_t e2, std::int64_t n) {
    detail::require_hub(e1);
    detail::require_hub(e2);
    detail::require_nonneg(n);
    using namespace arith;
    std::int64_t sum = 0;
    for (std::int64_t l = 2; l <= n - 2; ++l)
        sum = add(sum, mul(sub(beta1_star(e1, l), beta1_star(e1, l - 1)), beta1_star(e2, n - l)));
    return sum;
}

/// beta_m of a tree with exactly m essential vertices, peeling off the first
/// star and recursing on the rest.
inline std::int64_t betam_tree_recursive(const std::vector<std::int64_t>& degrees, std::int64_t n, std::int64_t m) {
    if (m < 1)
        throw InvalidInput("homology order must be at least 1");
    if (static_cast<std::int64_t>(degrees.size()) != m)
        throw InvalidInput("star count must equal the homology order");
    detail::require_nonneg(n);
    if (m == 1)
        return beta1_star(degrees[0], n);
    detail::require_hub(degrees[0]);
    std::vector<std::int64_t> rest(degrees.begin() + 1, degrees.end());
    using namespace arith;
    std::int64_t sum = 0;
    for (std::int64_t l = 2; l <= n - 2; ++l) {
        std::int64_t d = sub(beta1_star(degrees[0], l), beta1_star(degrees[0], l - 1));
        if (d != 0)
            sum = add(sum, mul(d, betam_tree_recursive(rest, n - l, m - 1)));
    }
    return sum;
}

/// Same quantity as an inclusion-exclusion over compositions of n.
inline std::int64_t betam_tree_closed(const std::vector<std::int64_t>& degrees, std::int64_t n, std::int64_t m) {
    if (m < 1)
        throw InvalidInput("homology order must be at least 1");
    if (static_cast<std::int64_t>(degrees.size()) != m)
        throw InvalidInput("star count must equal the homology order");
    detail::require_nonneg(n);
    for (auto e : degrees)
        detail::require_hub(e);
    using namespace arith;
    // Sum over l_1 + ... + l_m = total with every l_j >= 2.
    std::function<std::int64_t(std::size_t, std::int64_t)> compositions = [&](std::size_t j,
                                                                                std::int64_t left) -> std::int64_t {
        if (j + 1 == degrees.size())
            return left >= 2 ? beta1_star(degrees[j], left) : 0;
        std::int64_t s = 0;
        const std::int64_t reserve = 2 * static_cast<std::int64_t>(degrees.size() - j - 1);
        for (std::int64_t l = 2; l + reserve <= left; ++l)
            s = add(s, mul(beta1_star(degrees[j], l), compositions(j + 1, left - l)));
        return s;
    };
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < m; ++i) {
        std::int64_t term = mul(binomial(m - 1, i), compositions(0, n - i));
        total = i % 2 == 0 ? add(total, term) : sub(total, term);
    }
    return total;
}

/// beta_m of D_n for any tree: the closed form summed over every choice of m
/// essential vertices.
inline std::int64_t betam_tree_general(const std::vector<std::int64_t>& degrees, std::int64_t n, std::int64_t m) {
    if (m < 1)
        throw InvalidInput("homology order must be at least 1");
    detail::require_nonneg(n);
    const auto s = static_cast<std::int64_t>(degrees.size());
    if (m > s)
        return 0;
    std::vector<std::int64_t> pick;
    std::int64_t total = 0;
    std::function<void(std::int64_t)> choose = [&](std::int64_t from) {
        if (static_cast<std::int64_t>(pick.size()) == m) {
            total = arith::add(total, betam_tree_closed(pick, n, m));
            return;
        }
        for (std::int64_t i = from; i < s; ++i) {
            pick.push_back(degrees[static_cast<std::size_t>(i)]);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(0);
    return total;
}

inline std::vector<std::int64_t> hub_degrees(const TreeShape& shape) {
    std::vector<std::int64_t> out;
    for (auto d : shape.degrees())
        out.push_back(static_cast<std::int64_t>(d));
    return out;
}

inline std::int64_t betam_tree_recursive(const TreeShape& shape, std::int64_t n, std::int64_t m) {
    return betam_tree_recursive(hub_degrees(shape), n, m);
}
inline std::int64_t betam_tree_general(const TreeShape& shape, std::int64_t n, std::int64_t m) {
    return betam_tree_general(hub_degrees(shape), n, m);
}

/// First Betti numbers indexed by (graph label, particle count).
class BettiTable {
public:
    void set(const std::string& label, std::int64_t k, std::int64_t value) {
        if (value < 0)
            throw InvalidInput("Betti numbers are nonnegative");
        table_[{label, k}] = value;
    }
    std::int64_t at(const std::string& label, std::int64_t k) const {
        auto it = table_.find({label, k});
        if (it == table_.end())
            throw InvalidInput("missing Betti entry for " + label + " at k=" + std::to_string(k));
        return it->second;
    }
    bool contains(const std::string& label, std::int64_t k) const { return table_.contains({label, k}); }
    /// beta_1^(0..n) for one graph.
    std::vector<std::int64_t> row(const std::string& label, std::int64_t n) const {
        std::vector<std::int64_t> out;
        for (std::int64_t k = 0; k <= n; ++k)
            out.push_back(at(label, k));
        return out;
    }

private:
    std::map<std::pair<std::string, std::int64_t>, std::int64_t> table_;
};

/// A formula value whose derivation rests on an unproven hypothesis.
struct ConditionalValue {
    std::int64_t value = 0;
    bool conjecture_conditional = false;
};

/// beta_2 of D_n for two graphs joined through a valence-two vertex. The
/// sequences hold beta_1^(k) for k = 0..n; entry 0 is ignored and taken as 0.
inline ConditionalValue beta2_single_edge(const std::vector<std::int64_t>& b1_seq_1,
                                          const std::vector<std::int64_t>& b1_seq_2, std::int64_t b2_n_1,
                                          std::int64_t b2_n_2, std::int64_t n) {
    detail::require_nonneg(n);
    if (static_cast<std::int64_t>(b1_seq_1.size()) < n + 1 || static_cast<std::int64_t>(b1_seq_2.size()) < n + 1)
        throw InvalidInput("Betti sequences must cover k = 0..n");
    auto b1 = [&](const std::vector<std::int64_t>& s, std::int64_t k) {
        return k == 0 ? std::int64_t{0} : s[static_cast<std::size_t>(k)];
    };
    using namespace arith;
    std::int64_t v = add(b2_n_1, b2_n_2);
    for (std::int64_t k = 1; k <= n; ++k)
        v = add(v, mul(sub(b1(b1_seq_1, k), b1(b1_seq_1, k - 1)), b1(b1_seq_2, n - k)));
    return {v, true};
}

} // namespace confspace
