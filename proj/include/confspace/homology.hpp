#pragma once

#include "confspace/chain_complex.hpp"
#include "confspace/reduction.hpp"
#include "confspace/smith.hpp"

#include <vector>

namespace confspace {

struct HomologyResult {
    std::vector<std::int64_t> betti;
    std::vector<std::vector<std::int64_t>> torsion;
    /// False in rank-only mode, where torsion lists are left empty.
    bool torsion_known = true;

    std::int64_t betti_at(int k) const {
        return k >= 0 && static_cast<std::size_t>(k) < betti.size() ? betti[static_cast<std::size_t>(k)] : 0;
    }
    std::vector<std::int64_t> torsion_at(int k) const {
        return k >= 0 && static_cast<std::size_t>(k) < torsion.size() ? torsion[static_cast<std::size_t>(k)]
                                                                         : std::vector<std::int64_t>{};
    }
    bool torsion_free() const {
        for (const auto& t : torsion)
            if (!t.empty())
                return false;
        return true;
    }
    bool operator==(const HomologyResult&) const = default;
};

enum class Method { snf, reduce };

struct HomologyOptions {
    Arithmetic arithmetic = Arithmetic::automatic;
    bool rank_only = false;
    /// Highest homology dimension reported; negative means all.
    int max_dim = -1;
    Method method = Method::snf;
};

namespace detail {

inline HomologyResult homology_from_smith(const ChainComplex& c, int max_dim, const SmithOptions& so,
                                          std::int64_t extra_b0) {
    const int top = c.top_dimension();
    const int last = max_dim < 0 ? top : std::min(max_dim, top);
    // rank[k] = rank of d_k for k = 0..last+1
    std::vector<std::int64_t> rank(static_cast<std::size_t>(last) + 2, 0);
    std::vector<std::vector<std::int64_t>> factors(static_cast<std::size_t>(last) + 2);
    for (int k = 1; k <= last + 1 && k <= top; ++k) {
        SmithForm f = smith_normal_form(c.boundary_ref(k), so);
        rank[k] = static_cast<std::int64_t>(f.rank);
        factors[k] = f.nonunit_factors();
    }
    HomologyResult r;
    r.torsion_known = !so.rank_only;
    for (int k = 0; k <= last; ++k) {
        r.betti.push_back(static_cast<std::int64_t>(c.cell_count(k)) - rank[k] - rank[k + 1]);
        r.torsion.push_back(factors[k + 1]);
    }
    if (!r.betti.empty())
        r.betti[0] += extra_b0;
    return r;
}

} // namespace detail

template <CellView V>
HomologyResult homology_of_view(const V& view, HomologyOptions opt = {}, ReductionStats* stats = nullptr);

/// Integer homology by Smith normal form of the boundary matrices, or by
/// coreduction followed by Smith normal form of the residual.
inline HomologyResult homology(const ChainComplex& c, HomologyOptions opt = {}) {
    SmithOptions so{opt.arithmetic, opt.rank_only};
    if (opt.method == Method::snf)
        return detail::homology_from_smith(c, opt.max_dim, so, 0);
    return homology_of_view(ExplicitView(c), opt);
}

/// Homology of any cell view by coreduction; never materialises the full
/// boundary matrices.
template <CellView V>
HomologyResult homology_of_view(const V& view, HomologyOptions opt, ReductionStats* stats) {
    SmithOptions so{opt.arithmetic, opt.rank_only};
    const int top = view.top_dimension();
    int cut = opt.max_dim < 0 ? -1 : opt.max_dim + 1;
    ReducedComplex red = coreduce(view, cut);
    if (stats)
        *stats = red.stats;
    const int last = opt.max_dim < 0 ? top : std::min(opt.max_dim, top);
    HomologyResult r = detail::homology_from_smith(red.complex, last, so, static_cast<std::int64_t>(red.bases));
    r.betti.resize(static_cast<std::size_t>(last) + 1, 0);
    r.torsion.resize(r.betti.size());
    return r;
}

/// Homology of a configuration space; `Method::reduce` works implicitly and
/// scales to complexes far beyond explicit storage.
inline HomologyResult homology(std::shared_ptr<const ConfigurationSpace> space, HomologyOptions opt = {}) {
    if (opt.method == Method::reduce)
        return homology_of_view(*space, opt);
    return homology(build_complex(std::move(space)), opt);
}

inline std::vector<std::int64_t> betti_vector(const ChainComplex& c, HomologyOptions opt = {}) {
    return homology(c, opt).betti;
}

} // namespace confspace
