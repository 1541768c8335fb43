#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace hcol {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free list of vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}
    explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids))
    {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    static VertexSet from_bitset(const Bitset& b) { return VertexSet(b.to_vector()); }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    Vertex operator[](std::size_t i) const { return ids_[i]; }
    const std::vector<Vertex>& ids() const { return ids_; }

    bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

    bool operator==(const VertexSet&) const = default;
    auto operator<=>(const VertexSet&) const = default;

private:
    std::vector<Vertex> ids_;
};

/// Simple undirected loopless graph with dense bitset adjacency rows.
class Graph {
public:
    Graph() = default;

    /// Builds a graph on n vertices. Rejects self-loops and out-of-range endpoints;
    /// parallel edges collapse.
    Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels = {}) : n_(n), labels_(std::move(labels))
    {
        require(n >= 0, "vertex count must be non-negative");
        require(labels_.empty() || labels_.size() == static_cast<std::size_t>(n), "label count must equal vertex count");
        rows_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
        for (auto [u, v] : edges) {
            require(u >= 0 && v >= 0 && u < n && v < n, "edge endpoint out of range");
            require(u != v, "self-loops are not supported");
            rows_[u].set(v);
            rows_[v].set(u);
        }
    }
    Graph(int n, std::initializer_list<Edge> edges) : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    int order() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_); }

    bool adjacent(Vertex u, Vertex v) const { return rows_[u].test(v); }
    const Bitset& neighbors(Vertex v) const { return rows_[v]; }
    int degree(Vertex v) const { return static_cast<int>(rows_[v].count()); }

    std::size_t edge_count() const
    {
        std::size_t c = 0;
        for (const auto& r : rows_)
            c += r.count();
        return c / 2;
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            rows_[u].for_each([&](std::size_t v) {
                if (static_cast<int>(v) > u)
                    out.emplace_back(u, static_cast<int>(v));
            });
        return out;
    }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(Vertex v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

    Bitset all_vertices() const
    {
        Bitset b(size());
        b.set_all();
        return b;
    }

    /// Adjacency and labels; two graphs with different labels compare unequal.
    bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_ && labels_ == o.labels_; }
    bool same_adjacency(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

private:
    int n_ = 0;
    std::vector<Bitset> rows_;
    std::vector<std::string> labels_;
};

/// Incremental construction for the kernel and reduction outputs.
class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(int n) : n_(n) {}

    Vertex add_vertex(std::string label = {})
    {
        if (!label.empty() || !labels_.empty()) {
            labels_.resize(static_cast<std::size_t>(n_));
            labels_.push_back(std::move(label));
        }
        return n_++;
    }

    /// Appends a copy of g with ids shifted; returns the offset of its vertex 0.
    Vertex add_graph(const Graph& g)
    {
        const Vertex off = n_;
        for (Vertex v = 0; v < g.order(); ++v)
            add_vertex(g.has_labels() ? g.label(v) : std::string{});
        for (auto [u, v] : g.edges())
            add_edge(u + off, v + off);
        return off;
    }

    void add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }
    void set_label(Vertex v, std::string label)
    {
        labels_.resize(static_cast<std::size_t>(n_));
        labels_[v] = std::move(label);
    }

    int order() const { return n_; }

    Graph build() const
    {
        std::vector<std::string> labels = labels_;
        if (!labels.empty()) {
            labels.resize(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v)
                if (labels[v].empty())
                    labels[v] = std::to_string(v);
        }
        return Graph(n_, edges_, std::move(labels));
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
};

inline bool is_subset_of_vertices(const Graph& g, const VertexSet& s)
{
    return s.empty() || (s[0] >= 0 && s[s.size() - 1] < g.order());
}

inline Bitset to_bitset(const Graph& g, const VertexSet& s)
{
    Bitset b(g.size());
    for (Vertex v : s)
        b.set(v);
    return b;
}

/// Vertices adjacent to every vertex of t; all of V(G) for empty t.
inline Bitset common_neighbors_bits(const Graph& g, const VertexSet& t)
{
    Bitset cn = g.all_vertices();
    for (Vertex v : t)
        cn &= g.neighbors(v);
    return cn;
}

inline VertexSet common_neighbors(const Graph& g, const VertexSet& t)
{
    require(is_subset_of_vertices(g, t), "common_neighbors: set not within the graph");
    return VertexSet::from_bitset(common_neighbors_bits(g, t));
}

inline int max_degree(const Graph& g)
{
    int d = 0;
    for (Vertex v = 0; v < g.order(); ++v)
        d = std::max(d, g.degree(v));
    return d;
}

/// Subgraph induced by s; vertex i of the result is s[i]. Labels carry over.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s)
{
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j]))
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    std::vector<std::string> labels;
    if (g.has_labels())
        for (Vertex v : s)
            labels.push_back(g.label(v));
    return Graph(static_cast<int>(s.size()), edges, std::move(labels));
}

inline bool is_vertex_cover(const Graph& g, const VertexSet& x)
{
    const Bitset in = to_bitset(g, x);
    for (auto [u, v] : g.edges())
        if (!in.test(u) && !in.test(v))
            return false;
    return true;
}

/// Maximal-matching 2-approximation of a minimum vertex cover. Offered as an
/// explicit helper; the kernels never repair an invalid cover on their own.
inline VertexSet approximate_vertex_cover(const Graph& g)
{
    Bitset in(g.size());
    for (auto [u, v] : g.edges())
        if (!in.test(u) && !in.test(v)) {
            in.set(u);
            in.set(v);
        }
    return VertexSet::from_bitset(in);
}

// ---------------------------------------------------------------------------
// Standard families

/// Core number of every vertex (largest k with the vertex in the k-core), by
/// the bucket peeling algorithm in O(n + m).
inline std::vector<int> core_numbers(const Graph& g)
{
    const std::size_t n = g.size();
    std::vector<int> deg(n), core(n, 0);
    int maxd = 0;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = g.degree(static_cast<Vertex>(v));
        maxd = std::max(maxd, deg[v]);
    }
    std::vector<std::vector<Vertex>> bucket(static_cast<std::size_t>(maxd) + 1);
    for (std::size_t v = 0; v < n; ++v)
        bucket[static_cast<std::size_t>(deg[v])].push_back(static_cast<Vertex>(v));
    std::vector<bool> removed(n, false);
    int k = 0;
    for (std::size_t done = 0, d = 0; done < n;) {
        if (bucket[d].empty()) {
            ++d;
            continue;
        }
        const Vertex v = bucket[d].back();
        bucket[d].pop_back();
        if (removed[static_cast<std::size_t>(v)] || deg[static_cast<std::size_t>(v)] != static_cast<int>(d))
            continue; // stale entry
        removed[static_cast<std::size_t>(v)] = true;
        ++done;
        k = std::max(k, static_cast<int>(d));
        core[static_cast<std::size_t>(v)] = k;
        g.neighbors(v).for_each([&](std::size_t u) {
            if (!removed[u] && deg[u] > 0) {
                --deg[u];
                bucket[static_cast<std::size_t>(deg[u])].push_back(static_cast<Vertex>(u));
                if (static_cast<std::size_t>(deg[u]) < d)
                    d = static_cast<std::size_t>(deg[u]);
            }
        });
    }
    return core;
}

inline Graph make_edgeless(int n) { return Graph(n, std::span<const Edge>{}); }

inline Graph make_complete(int m)
{
    require(m >= 1, "make_complete: m must be positive");
    std::vector<Edge> e;
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            e.emplace_back(u, v);
    return Graph(m, e);
}

inline Graph make_cycle(int m)
{
    require(m >= 3, "make_cycle: m must be at least 3");
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i)
        e.emplace_back(i, (i + 1) % m);
    return Graph(m, e);
}

/// Path on m vertices 0 - 1 - ... - (m-1).
inline Graph make_path(int m)
{
    require(m >= 1, "make_path: m must be positive");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < m; ++i)
        e.emplace_back(i, i + 1);
    return Graph(m, e);
}

/// All r-subsets of {1..m} in lexicographic order.
inline std::vector<std::vector<int>> r_subsets(int m, int r)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        cur[i] = i + 1;
    if (r > m)
        return out;
    for (;;) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[i] == m - r + i + 1)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < r; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline std::string subset_label(const std::vector<int>& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(s[i]);
    }
    return out + "}";
}

/// Kneser graph K(m, r): r-subsets of [m] in lexicographic order, adjacent when
/// disjoint. Vertices are labelled by their subsets.
inline Graph make_kneser(int m, int r)
{
    require(r >= 1 && m >= 2 * r, "make_kneser: need m >= 2r >= 2");
    const auto subsets = r_subsets(m, r);
    std::vector<std::uint64_t> masks;
    std::vector<std::string> labels;
    for (const auto& s : subsets) {
        std::uint64_t mask = 0;
        for (int x : s)
            mask |= std::uint64_t{1} << x;
        masks.push_back(mask);
        labels.push_back(subset_label(s));
    }
    std::vector<Edge> e;
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = i + 1; j < masks.size(); ++j)
            if ((masks[i] & masks[j]) == 0)
                e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return Graph(static_cast<int>(subsets.size()), e, std::move(labels));
}

/// G(n, 1/2); deterministic in seed.
inline Graph make_random(int n, std::uint64_t seed)
{
    require(n >= 0, "make_random: n must be non-negative");
    Rng rng(seed);
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                e.emplace_back(u, v);
    return Graph(n, e);
}

/// G(n, num/den) drawn from an existing generator.
inline Graph random_graph(int n, std::uint64_t num, std::uint64_t den, Rng& rng)
{
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (bernoulli(rng, num, den))
                e.emplace_back(u, v);
    return Graph(n, e);
}

/// Disjoint union; vertices of b follow those of a.
inline Graph disjoint_union(const Graph& a, const Graph& b)
{
    GraphBuilder gb;
    gb.add_graph(a);
    gb.add_graph(b);
    return gb.build();
}

} // namespace hcol
