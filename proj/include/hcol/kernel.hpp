#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "homomorphism.hpp"
#include "poly.hpp"
#include "representation.hpp"
#include "rng.hpp"
#include "witness.hpp"

namespace hcol {

/// Exact binomial coefficient; throws when it does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > ~std::uint64_t{0})
            throw CeilingExceeded("binomial: C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows");
    }
    return static_cast<std::uint64_t>(r);
}

/// sum_{i=1..q} C(k, i)
inline std::uint64_t subsets_up_to(std::uint64_t k, std::uint64_t q)
{
    std::uint64_t s = 0;
    for (std::uint64_t i = 1; i <= q && i <= k; ++i)
        s += binomial(k, i);
    return s;
}

inline std::uint64_t ceil_log2(std::uint64_t x)
{
    std::uint64_t b = 0;
    while ((std::uint64_t{1} << b) < x)
        ++b;
    return b;
}

struct VertexCoverInstance {
    Graph graph;
    VertexSet cover;

    std::size_t k() const { return cover.size(); }

    void validate() const
    {
        require(is_subset_of_vertices(graph, cover), "instance: cover contains vertices outside the graph");
        require(is_vertex_cover(graph, cover), "instance: X is not a vertex cover");
    }

    bool operator==(const VertexCoverInstance&) const = default;
};

/// n vertices, cover X = a uniform k-subset, and every pair meeting X joined
/// independently with probability num/den. Outside vertices stay independent.
inline VertexCoverInstance random_cover_instance(int n, int k, std::uint64_t num, std::uint64_t den, Rng& rng)
{
    require(n >= 0 && k >= 0 && k <= n && den > 0 && num <= den, "random_cover_instance: bad parameters");
    std::vector<Vertex> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ids[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(ids[static_cast<std::size_t>(i)], ids[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    std::vector<bool> in_x(static_cast<std::size_t>(n), false);
    for (int i = 0; i < k; ++i)
        in_x[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] = true;
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((in_x[static_cast<std::size_t>(u)] || in_x[static_cast<std::size_t>(v)]) && bernoulli(rng, num, den))
                edges.emplace_back(u, v);
    std::vector<Vertex> x(ids.begin(), ids.begin() + k);
    return {Graph(n, edges), VertexSet(std::move(x))};
}

enum class KernelMode { Combinatorial, Algebraic };

inline std::string to_string(KernelMode m) { return m == KernelMode::Combinatorial ? "combinatorial" : "algebraic"; }

struct KernelStats {
    KernelMode mode = KernelMode::Combinatorial;
    int parameter = 0;                  // q, or d for the algebraic kernel
    std::uint64_t k = 0;
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t vertex_bound = 0;     // closed form
    std::uint64_t bit_size_estimate = 0;
    std::uint64_t y_count = 0;          // sets of size d (algebraic)
    std::uint64_t y_bound = 0;          // C(k(d-1), d-1) (algebraic)
    std::uint64_t basis_kept = 0;
    std::uint64_t basis_dropped = 0;
    double elapsed_ms = 0.0;

    bool operator==(const KernelStats& o) const
    {
        // elapsed time is deliberately not part of equality
        return mode == o.mode && parameter == o.parameter && k == o.k && vertices == o.vertices && edges == o.edges && vertex_bound == o.vertex_bound && bit_size_estimate == o.bit_size_estimate && y_count == o.y_count && y_bound == o.y_bound && basis_kept == o.basis_kept && basis_dropped == o.basis_dropped;
    }
};

/// Basis-selection evidence for the algebraic kernel. Sets are in kernel ids
/// of the combinatorial stage, lexicographic; selection refers to this order.
struct AlgebraicCertificate {
    FieldSpec field;
    int d = 0;
    std::vector<VertexSet> y_sets;
    BasisSelection selection;
};

/// Kernel output. Vertex i < k is the i-th cover vertex (origin[i] in the input);
/// every later vertex v_S has neighbourhood exactly provenance[v_S] = S.
struct KernelResult {
    Graph graph;
    VertexSet cover;
    std::vector<Vertex> origin;
    std::map<Vertex, VertexSet> provenance;
    KernelStats stats;
    std::optional<AlgebraicCertificate> certificate;

    VertexCoverInstance instance() const { return {graph, cover}; }
};

/// Rejects targets for which kernelization is vacuous and returns q(H).
inline int target_witness_number(const Graph& h, const Ceilings& c = default_ceilings())
{
    require(h.order() > 0, "target graph must be nonempty");
    if (h.edge_count() == 0)
        throw InvalidArgument("target graph has no edges (q = 1): H-colouring is trivial, refusing to kernelize");
    return witness_number(h, c).q;
}

namespace detail {

inline void check_provenance(const KernelResult& r)
{
    for (const auto& [v, s] : r.provenance)
        if (VertexSet::from_bitset(r.graph.neighbors(v)) != s)
            throw InvariantViolation("kernel: neighbourhood of an added vertex differs from its set");
    if (!is_vertex_cover(r.graph, r.cover))
        throw InvariantViolation("kernel: X is not a vertex cover of the output");
}

} // namespace detail

/// G' = G[X] plus one vertex v_S adjacent to S for every nonempty S of size at
/// most q contained in N(v) for some v outside X. Subsets are enumerated per
/// outside vertex and deduplicated; added vertices follow in lexicographic S.
inline KernelResult combinatorial_kernel(const VertexCoverInstance& inst, int q, const Ceilings& c = default_ceilings())
{
    const auto start = std::chrono::steady_clock::now();
    require(q >= 1, "combinatorial_kernel: q must be positive");
    inst.validate();
    const Graph& g = inst.graph;
    const std::size_t k = inst.k();
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < k; ++i)
        pos[inst.cover[i]] = static_cast<int>(i);

    std::uint64_t enumerated = 0;
    std::set<VertexSet> sets;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (pos[v] >= 0)
            continue;
        std::vector<Vertex> nb;
        g.neighbors(v).for_each([&](std::size_t w) { nb.push_back(pos[w]); });
        enumerated += subsets_up_to(nb.size(), static_cast<std::uint64_t>(q));
        check_ceiling(enumerated, c.subset_count, "combinatorial_kernel subset enumeration");
        for (int size = 1; size <= q && size <= static_cast<int>(nb.size()); ++size)
            for (const auto& idx : r_subsets(static_cast<int>(nb.size()), size)) {
                std::vector<Vertex> s;
                for (int i : idx)
                    s.push_back(nb[static_cast<std::size_t>(i - 1)]);
                sets.insert(VertexSet(std::move(s)));
            }
    }

    GraphBuilder b(static_cast<int>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (g.adjacent(inst.cover[i], inst.cover[j]))
                b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    KernelResult r;
    for (const auto& s : sets) {
        const Vertex v = b.add_vertex();
        for (Vertex x : s)
            b.add_edge(v, x);
        r.provenance.emplace(v, s);
    }
    r.graph = b.build();
    std::vector<Vertex> cover_ids(k);
    for (std::size_t i = 0; i < k; ++i)
        cover_ids[i] = static_cast<Vertex>(i);
    r.cover = VertexSet(std::move(cover_ids));
    r.origin = inst.cover.ids();

    auto& st = r.stats;
    st.mode = KernelMode::Combinatorial;
    st.parameter = q;
    st.k = k;
    st.vertices = static_cast<std::uint64_t>(r.graph.order());
    st.edges = r.graph.edge_count();
    st.vertex_bound = k + subsets_up_to(k, static_cast<std::uint64_t>(q));
    st.bit_size_estimate = binomial(k, 2) + subsets_up_to(k, static_cast<std::uint64_t>(q));
    detail::check_provenance(r);
    st.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Sharper kernel from a faithful d-dimensional independent representation of H
/// with unit first entries over a field larger than V(H): among the v_S with
/// |S| = d, keep only those whose determinant polynomials p_S are selected by
/// greedy basis selection in lexicographic S order.
inline KernelResult algebraic_kernel(const VertexCoverInstance& inst, const Graph& h, const Representation& rep, const Ceilings& c = default_ceilings())
{
    const auto start = std::chrono::steady_clock::now();
    rep.validate();
    const int d = rep.d;
    require(rep.kind == RepKind::Independent, "algebraic_kernel: independent representation required");
    require(rep.graph.same_adjacency(h), "algebraic_kernel: representation belongs to a different graph");
    require(d >= 3, "algebraic_kernel: d must be at least 3 (d <= 2 means H is bipartite)");
    require(rep.field->order() > h.size(), "algebraic_kernel: field order must exceed |V(H)|");
    require(rep.unit_first_entries(), "algebraic_kernel: representation must have unit first entries (normalize it first)");
    if (auto bad = check_faithful(rep); !bad)
        throw InvalidArgument("algebraic_kernel: representation is not faithful: " + bad.violation->message);

    KernelResult full = combinatorial_kernel(inst, d, c);
    const std::size_t k = inst.k();

    AlgebraicCertificate cert{rep.field, d, {}, {}};
    std::vector<Vertex> y_vertices;
    std::vector<SparsePoly> polys;
    for (const auto& [v, s] : full.provenance)
        if (static_cast<int>(s.size()) == d) {
            cert.y_sets.push_back(s);
            y_vertices.push_back(v);
            polys.push_back(det_poly(s.ids(), d, rep.field));
        }
    cert.selection = poly_basis_select(polys);

    Bitset keep = full.graph.all_vertices();
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (cert.selection.coordinates[i])
            keep.reset(static_cast<std::size_t>(y_vertices[i]));
    const VertexSet kept_vertices = VertexSet::from_bitset(keep);

    KernelResult r;
    r.graph = induced_subgraph(full.graph, kept_vertices);
    r.cover = full.cover; // the first k vertices are all kept, in order
    r.origin = full.origin;
    for (std::size_t i = 0; i < kept_vertices.size(); ++i) {
        auto it = full.provenance.find(kept_vertices[i]);
        if (it != full.provenance.end())
            r.provenance.emplace(static_cast<Vertex>(i), it->second);
    }

    auto& st = r.stats;
    st.mode = KernelMode::Algebraic;
    st.parameter = d;
    st.k = k;
    st.vertices = static_cast<std::uint64_t>(r.graph.order());
    st.edges = r.graph.edge_count();
    st.y_count = polys.size();
    st.y_bound = binomial(k * static_cast<std::uint64_t>(d - 1), static_cast<std::uint64_t>(d - 1));
    st.basis_kept = cert.selection.kept.size();
    st.basis_dropped = cert.selection.dropped_count();
    st.vertex_bound = k + subsets_up_to(k, static_cast<std::uint64_t>(d - 1)) + st.y_bound;
    st.bit_size_estimate = binomial(k, 2) + (st.vertices - k) * static_cast<std::uint64_t>(d) * std::max<std::uint64_t>(1, ceil_log2(k));
    if (st.basis_kept > st.y_bound)
        throw InvariantViolation("algebraic_kernel: kept more polynomials than the dimension bound allows");
    r.certificate = std::move(cert);
    detail::check_provenance(r);
    st.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Re-derives every dropped p_S from the certificate coordinates.
inline bool verify_algebraic_certificate(const AlgebraicCertificate& cert)
{
    std::vector<SparsePoly> polys;
    for (const auto& s : cert.y_sets)
        polys.push_back(det_poly(s.ids(), cert.d, cert.field));
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (cert.selection.coordinates[i] && reconstruct(polys, cert.selection.kept, *cert.selection.coordinates[i]) != polys[i])
            return false;
    return true;
}

struct EquivalenceReport {
    bool original_colorable = false;
    bool kernel_colorable = false;
    bool agree() const { return original_colorable == kernel_colorable; }
};

/// Runs the homomorphism oracle on both sides. Exponential; tests only.
inline EquivalenceReport verify_kernel_equivalence(const VertexCoverInstance& original, const KernelResult& result, const Graph& h, const Ceilings& c = default_ceilings())
{
    return {is_h_colorable(original.graph, h, c), is_h_colorable(result.graph, h, c)};
}

struct SizeReport {
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t vertex_bound = 0;
    std::uint64_t bit_size_estimate = 0;
    std::uint64_t bit_bound = 0;
    double ratio = 0.0; // vertices / vertex_bound
    bool within_bound = true;
};

/// Closed-form accounting. For the combinatorial kernel exponent is q; for the
/// algebraic kernel it is d.
inline SizeReport kernel_size_report(const KernelResult& r, std::uint64_t k, int exponent)
{
    require(exponent >= 1, "kernel_size_report: exponent must be positive");
    const auto e = static_cast<std::uint64_t>(exponent);
    SizeReport s;
    s.vertices = static_cast<std::uint64_t>(r.graph.order());
    s.edges = r.graph.edge_count();
    if (r.stats.mode == KernelMode::Combinatorial) {
        s.vertex_bound = k + subsets_up_to(k, e);
        s.bit_bound = binomial(k, 2) + subsets_up_to(k, e);
    } else {
        const std::uint64_t yb = binomial(k * (e - 1), e - 1);
        s.vertex_bound = k + subsets_up_to(k, e - 1) + yb;
        s.bit_bound = binomial(k, 2) + (s.vertex_bound - k) * e * std::max<std::uint64_t>(1, ceil_log2(k));
    }
    s.bit_size_estimate = r.stats.bit_size_estimate;
    s.ratio = s.vertex_bound ? static_cast<double>(s.vertices) / static_cast<double>(s.vertex_bound) : 0.0;
    s.within_bound = s.vertices <= s.vertex_bound && s.bit_size_estimate <= s.bit_bound;
    return s;
}

} // namespace hcol
