#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "bitset.hpp"
#include "config.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "homomorphism.hpp"

namespace hcol {

/// Tightness certificate for the non-adjacency witness number q(G): a q-set with
/// no common neighbour all of whose (q-1)-subsets do have one.
struct WitnessCertificate {
    int q = 0;
    VertexSet witness_set;
    int checked_up_to = 0; // largest set size the search covered
};

/// True iff t has no common neighbour while every (|t|-1)-subset has one.
inline bool is_critical_set(const Graph& g, const VertexSet& t)
{
    if (common_neighbors_bits(g, t).any())
        return false;
    for (std::size_t skip = 0; skip < t.size(); ++skip) {
        Bitset cn = g.all_vertices();
        for (std::size_t i = 0; i < t.size(); ++i)
            if (i != skip)
                cn &= g.neighbors(t[i]);
        if (cn.none())
            return false;
    }
    return true;
}

namespace detail {

class CriticalSetSearch {
public:
    CriticalSetSearch(const Graph& g, int max_size) : g_(g), max_size_(max_size) {}

    void run()
    {
        std::vector<Bitset> prefix_cn{g_.all_vertices()};
        extend(0, prefix_cn);
    }

    int best_size = 0;
    std::vector<Vertex> best;

private:
    // Sets are grown in increasing vertex order, so sets of equal size are
    // visited lexicographically and the first one of maximum size is kept.
    void extend(Vertex from, std::vector<Bitset>& cn_stack)
    {
        const auto depth = static_cast<int>(current_.size());
        if (depth >= max_size_)
            return;
        for (Vertex w = from; w < g_.order(); ++w) {
            Bitset cn = cn_stack.back() & g_.neighbors(w);
            current_.push_back(w);
            if (cn.none()) {
                if (depth + 1 > best_size && is_minimal())
                    record();
            } else {
                cn_stack.push_back(std::move(cn));
                extend(w + 1, cn_stack);
                cn_stack.pop_back();
            }
            current_.pop_back();
        }
    }

    // The set without its last vertex has a common neighbour by construction;
    // check the other one-vertex deletions.
    bool is_minimal() const
    {
        const std::size_t k = current_.size();
        for (std::size_t skip = 0; skip + 1 < k; ++skip) {
            Bitset cn = g_.all_vertices();
            for (std::size_t i = 0; i < k; ++i)
                if (i != skip)
                    cn &= g_.neighbors(current_[i]);
            if (cn.none())
                return false;
        }
        return true;
    }

    void record()
    {
        best_size = static_cast<int>(current_.size());
        best = current_;
    }

    const Graph& g_;
    int max_size_;
    std::vector<Vertex> current_;
};

} // namespace detail

/// Exact q(G): the maximum size of an inclusion-minimal vertex set with no common
/// neighbour. Depth-first over sets with a nonempty common neighbourhood, so the
/// cost is bounded by sum over v of 2^deg(v). Set sizes never exceed
/// min(n, maxdeg + 1) because any maxdeg + 1 vertices lack a common neighbour.
inline WitnessCertificate witness_number(const Graph& g, const Ceilings& c = default_ceilings())
{
    require(g.order() > 0, "witness_number: graph must be nonempty");
    check_ceiling(g.size(), c.witness_vertices, "witness_number vertex count");
    const int bound = std::min(g.order(), max_degree(g) + 1);
    detail::CriticalSetSearch search(g, bound);
    search.run();
    if (search.best_size == 0)
        throw InvariantViolation("witness_number: V(G) has no common neighbour, a critical set must exist");
    return WitnessCertificate{search.best_size, VertexSet(search.best), bound};
}

// ---------------------------------------------------------------------------
// Obstruction graphs B_{m,l}

/// B_{m,l}: vertices u_1..u_m are ids 0..m-1, v_1..v_l are ids m..m+l-1.
/// v_i ~ u_j for j != i; for i > l, u_i ~ u_j for all j != i.
inline Graph make_b_ml(int m, int l)
{
    require(m >= 1 && l >= 0 && l <= m, "make_b_ml: need m >= 1 and 0 <= l <= m");
    std::vector<Edge> e;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < m; ++j)
            if (j != i)
                e.emplace_back(m + i, j);
    for (int i = l; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (j != i && (j < l || j > i))
                e.emplace_back(i, j);
    return Graph(m + l, e);
}

/// Closed-form edge count of B_{m,l}: (m^2 - l^2 + 2ml - m - l) / 2.
inline long long b_ml_edge_count(long long m, long long l) { return (m * m - l * l + 2 * m * l - m - l) / 2; }

/// Injective map of B_{m,l} into g realising all of its edges (not necessarily
/// induced), or nothing.
inline std::optional<std::vector<Vertex>> find_b_ml_copy(const Graph& g, int m, int l, const Ceilings& c = default_ceilings())
{
    require(m >= 1 && l >= 0 && l <= m, "find_b_ml_copy: need m >= 1 and 0 <= l <= m");
    check_ceiling(static_cast<std::size_t>(m), c.bml_m, "find_b_ml_copy m");
    if (m + l > g.order())
        return std::nullopt;
    HomOptions opts;
    opts.injective = true;
    auto hom = find_homomorphism(make_b_ml(m, l), g, opts);
    if (!hom)
        return std::nullopt;
    return hom->assignment;
}

/// True iff g contains no B_{q,l} for any 0 <= l <= q, which certifies q(g) <= q-1.
inline bool witness_bound_via_b(const Graph& g, int q, const Ceilings& c = default_ceilings())
{
    require(q >= 1, "witness_bound_via_b: q must be positive");
    for (int l = 0; l <= q; ++l)
        if (find_b_ml_copy(g, q, l, c))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Structural invariants

/// Smallest d such that every subgraph has a vertex of degree <= d (min-degree peeling).
inline int degeneracy(const Graph& g)
{
    require(g.order() > 0, "degeneracy: graph must be nonempty");
    const auto core = core_numbers(g);
    return *std::max_element(core.begin(), core.end());
}

namespace detail {

inline void clique_branch(const Graph& g, Bitset& candidates, int size, int& best)
{
    if (candidates.none()) {
        best = std::max(best, size);
        return;
    }
    if (size + static_cast<int>(candidates.count()) <= best)
        return;
    while (candidates.any()) {
        if (size + static_cast<int>(candidates.count()) <= best)
            return;
        const std::size_t v = candidates.first();
        candidates.reset(v);
        Bitset next = candidates & g.neighbors(static_cast<Vertex>(v));
        clique_branch(g, next, size + 1, best);
    }
}

} // namespace detail

/// Exact clique number by branch and bound with the candidate-count bound.
inline int clique_number(const Graph& g, const Ceilings& c = default_ceilings())
{
    require(g.order() > 0, "clique_number: graph must be nonempty");
    check_ceiling(g.size(), c.clique_vertices, "clique_number vertex count");
    Bitset all = g.all_vertices();
    int best = 0;
    detail::clique_branch(g, all, 0, best);
    return best;
}

} // namespace hcol
