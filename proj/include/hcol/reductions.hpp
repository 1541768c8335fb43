#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnf.hpp"
#include "config.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "homomorphism.hpp"
#include "kernel.hpp"
#include "witness.hpp"

namespace hcol {

/// F with marked a, b such that F -> H pinning (a, b) to (u, v) exists iff u != v.
struct EdgeGadget {
    Graph f;
    Vertex a = 0;
    Vertex b = 1;
    std::string family; // "edge", "path", "enumerated" or "pinned-copy"

    bool operator==(const EdgeGadget&) const = default;
};

/// First ordered pair of H-vertices on which the gadget property fails.
struct GadgetViolation {
    Vertex u;
    Vertex v;
    bool extends; // whether a homomorphism with (a, b) -> (u, v) exists
};

namespace detail {

inline bool pinned_extends(const Graph& h, const Graph& f, Vertex a, Vertex b, Vertex u, Vertex v)
{
    ListAssignment lists(f.size());
    lists[static_cast<std::size_t>(a)] = VertexSet{u};
    lists[static_cast<std::size_t>(b)] = VertexSet{v};
    return find_list_homomorphism(f, h, lists).has_value();
}

} // namespace detail

/// Checks every ordered pair, diagonal pairs first since they fail most often.
inline std::optional<GadgetViolation> edge_gadget_violation(const Graph& h, const Graph& f, Vertex a, Vertex b, const Ceilings& c = default_ceilings())
{
    require(a >= 0 && b >= 0 && a < f.order() && b < f.order() && a != b, "edge gadget: a and b must be distinct vertices of F");
    check_ceiling(f.size(), c.oracle_vertices, "edge gadget verification source size");
    for (Vertex u = 0; u < h.order(); ++u)
        if (detail::pinned_extends(h, f, a, b, u, u))
            return GadgetViolation{u, u, true};
    for (Vertex u = 0; u < h.order(); ++u)
        for (Vertex v = 0; v < h.order(); ++v)
            if (u != v && !detail::pinned_extends(h, f, a, b, u, v))
                return GadgetViolation{u, v, false};
    return std::nullopt;
}

inline bool verify_edge_gadget(const Graph& h, const Graph& f, Vertex a, Vertex b, const Ceilings& c = default_ceilings())
{
    return !edge_gadget_violation(h, f, a, b, c);
}

/// The only way to obtain a gadget from outside the search: verified on entry.
inline EdgeGadget make_edge_gadget(const Graph& h, Graph f, Vertex a, Vertex b, std::string family, const Ceilings& c = default_ceilings())
{
    if (auto bad = edge_gadget_violation(h, f, a, b, c))
        throw InvalidArgument("not an edge gadget: pinning (a,b) to (" + h.label(bad->u) + "," + h.label(bad->v) + ") " + (bad->extends ? "extends" : "does not extend"));
    return EdgeGadget{std::move(f), a, b, std::move(family)};
}

enum class GadgetStatus { Found, NotFoundWithinCeiling };

inline std::string to_string(GadgetStatus s) { return s == GadgetStatus::Found ? "found" : "not-found-within-ceiling"; }

/// NotFoundWithinCeiling only means the bounded search came up empty; it says
/// nothing about whether a gadget exists.
struct GadgetSearchResult {
    GadgetStatus status = GadgetStatus::NotFoundWithinCeiling;
    std::optional<EdgeGadget> gadget;
    std::uint64_t candidates_verified = 0;
};

namespace detail {

/// Small graphs on n <= 8 vertices as adjacency bitmasks.
struct SmallGraph {
    int n = 0;
    std::array<std::uint8_t, 8> adj{};

    Graph to_graph() const
    {
        std::vector<Edge> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (adj[static_cast<std::size_t>(u)] >> v & 1u)
                    e.emplace_back(u, v);
        return Graph(n, e);
    }
};

/// Edge slots for a gadget on n vertices with a = 0, b = 1 non-adjacent.
inline std::vector<std::pair<int, int>> gadget_slots(int n)
{
    std::vector<std::pair<int, int>> s;
    for (int u = 0; u < n; ++u)
        for (int v = std::max(u + 1, 2); v < n; ++v)
            s.emplace_back(u, v);
    return s;
}

inline bool connected(const SmallGraph& g)
{
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (int v = 0; v < g.n; ++v)
            if (frontier >> v & 1u)
                next |= g.adj[static_cast<std::size_t>(v)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (1u << g.n) - 1;
}

/// Whether mask is the smallest code among its images under permutations of
/// the internal vertices combined with optionally swapping a and b.
inline bool is_canonical(std::uint64_t mask, const SmallGraph& g, const std::vector<std::pair<int, int>>& slots, std::vector<std::vector<int>>& perms)
{
    for (const auto& p : perms) {
        std::uint64_t code = 0;
        for (std::size_t i = slots.size(); i-- > 0;) {
            const auto [u, v] = slots[i];
            code = code << 1 | (g.adj[static_cast<std::size_t>(p[static_cast<std::size_t>(u)])] >> p[static_cast<std::size_t>(v)] & 1u);
        }
        if (code < mask)
            return false;
    }
    return true;
}

} // namespace detail

/// Searches for an edge gadget for H in this order: a single edge, even paths,
/// every connected graph on at most max_gadget_vertices vertices up to
/// isomorphism fixing {a, b}, and finally a pinned copy of H: the copy plus a
/// joined to N(c0) and b joined to a small set Z of copy vertices, for
/// |Z| <= 3 in lexicographic order. Every returned gadget is verified.
inline GadgetSearchResult find_edge_gadget(const Graph& h, int max_gadget_vertices, const Ceilings& c = default_ceilings(), bool allow_pinned_copy = true)
{
    require(h.order() >= 2 && h.edge_count() > 0, "find_edge_gadget: H must have an edge");
    require(max_gadget_vertices >= 2, "find_edge_gadget: at least two gadget vertices are needed");
    GadgetSearchResult out;
    auto attempt = [&](const Graph& f, Vertex a, Vertex b, const char* family) {
        ++out.candidates_verified;
        if (!verify_edge_gadget(h, f, a, b, c))
            return false;
        out.status = GadgetStatus::Found;
        out.gadget = EdgeGadget{f, a, b, family};
        return true;
    };

    if (attempt(make_path(2), 0, 1, "edge"))
        return out;
    for (int len = 4; len <= max_gadget_vertices; len += 2)
        if (attempt(make_path(len), 0, len - 1, "path"))
            return out;

    const int limit = std::min<int>(max_gadget_vertices, static_cast<int>(std::min<std::size_t>(c.gadget_vertices, 8)));
    for (int n = 3; n <= limit; ++n) {
        const auto slots = detail::gadget_slots(n);
        std::vector<std::vector<int>> perms;
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        do {
            perms.push_back(p);
            auto q = p;
            std::swap(q[0], q[1]);
            perms.push_back(q);
        } while (std::next_permutation(p.begin() + 2, p.end()));

        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            detail::SmallGraph g{n, {}};
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (mask >> i & 1u) {
                    const auto [u, v] = slots[i];
                    g.adj[static_cast<std::size_t>(u)] |= static_cast<std::uint8_t>(1u << v);
                    g.adj[static_cast<std::size_t>(v)] |= static_cast<std::uint8_t>(1u << u);
                }
            // an internal vertex of degree <= 1 can be dropped without changing anything
            bool pendant = false;
            for (int v = 2; v < n && !pendant; ++v)
                pendant = __builtin_popcount(g.adj[static_cast<std::size_t>(v)]) <= 1;
            if (pendant || !detail::connected(g))
                continue;
            // identifying a with b must leave no homomorphism at all
            detail::SmallGraph merged{n - 1, {}};
            for (int v = 1; v < n; ++v) {
                std::uint8_t row = 0;
                const std::uint8_t src = v == 1 ? static_cast<std::uint8_t>(g.adj[0] | g.adj[1]) : g.adj[static_cast<std::size_t>(v)];
                for (int w = 0; w < n; ++w)
                    if (src >> w & 1u)
                        row |= static_cast<std::uint8_t>(1u << (w <= 1 ? 0 : w - 1));
                merged.adj[static_cast<std::size_t>(v - 1)] |= row;
            }
            for (int v = 0; v < n - 1; ++v)
                merged.adj[static_cast<std::size_t>(v)] &= static_cast<std::uint8_t>(~(1u << v));
            if (find_homomorphism(merged.to_graph(), h))
                continue;
            if (!detail::is_canonical(mask, g, slots, perms))
                continue;
            if (attempt(g.to_graph(), 0, 1, "enumerated"))
                return out;
        }
    }

    if (allow_pinned_copy && h.size() + 2 <= c.oracle_vertices) {
        const Vertex c0 = 0;
        for (int size = 1; size <= std::min(3, h.order()); ++size)
            for (const auto& z : r_subsets(h.order(), size)) {
                GraphBuilder b;
                b.add_graph(h);
                const Vertex a = b.add_vertex();
                const Vertex bv = b.add_vertex();
                h.neighbors(c0).for_each([&](std::size_t w) { b.add_edge(a, static_cast<Vertex>(w)); });
                for (int w : z)
                    b.add_edge(bv, w - 1);
                Graph f = b.build();
                if (attempt(Graph(f.order(), f.edges()), a, bv, "pinned-copy"))
                    return out;
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// List H-colouring to H-colouring

/// G, then a copy of H, then for every v and every h outside L(v) (ascending)
/// the internal vertices of a copy of F with a glued to v and b to the copy of h.
/// H must be a core for the two instances to be equivalent.
inline Graph reduce_list_to_plain(const Graph& g, const ListAssignment& lists, const Graph& h, const EdgeGadget& gadget, const Ceilings& c = default_ceilings())
{
    require(lists.size() == g.size(), "reduce_list_to_plain: one list entry per vertex of G required");
    for (const auto& l : lists)
        if (l)
            require(is_subset_of_vertices(h, *l), "reduce_list_to_plain: list contains a vertex outside H");
    const Graph& f = gadget.f;
    std::uint64_t copies = 0;
    for (const auto& l : lists)
        copies += l ? h.size() - l->size() : 0;
    check_ceiling(g.size() + h.size() + copies * (f.size() - 2), c.oracle_vertices, "reduce_list_to_plain output size");

    GraphBuilder b;
    b.add_graph(Graph(g.order(), g.edges()));
    const Vertex h0 = b.add_graph(Graph(h.order(), h.edges()));
    auto glue = [&](Vertex at_a, Vertex at_b) {
        std::vector<Vertex> id(f.size());
        for (Vertex x = 0; x < f.order(); ++x)
            id[static_cast<std::size_t>(x)] = x == gadget.a ? at_a : x == gadget.b ? at_b : b.add_vertex();
        for (auto [x, y] : f.edges())
            b.add_edge(id[static_cast<std::size_t>(x)], id[static_cast<std::size_t>(y)]);
    };
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto& l = lists[static_cast<std::size_t>(v)];
        if (!l)
            continue;
        for (Vertex x = 0; x < h.order(); ++x)
            if (!l->contains(x))
                glue(v, h0 + x);
    }
    return b.build();
}

// ---------------------------------------------------------------------------
// NAE-SAT to H-colouring

/// Lexicographically first critical set of maximum size, sorted by id.
inline VertexSet find_tight_witness_set(const Graph& h, const Ceilings& c = default_ceilings()) { return witness_number(h, c).witness_set; }

struct NaeReduction {
    VertexCoverInstance instance;
    std::uint64_t x_formula = 0; // closed form for |X|
    Vertex t_base = 0;           // t_{i,j} = t_base + 2((i-1)q + (j-1)), f_{i,j} one above
    Vertex clause_base = 0;      // clause vertices are the last m ids
    std::uint64_t gadget_copies = 0;
};

/// Copy of H; t_{i,j}, f_{i,j} for every variable i and position j (cyclic);
/// gadget copies on (t_ij, f_ij), (t_ij, t_i,j+1), (t_ij, h) and (f_ij, h) for
/// every h other than a_j, a_{j+1}; one clause vertex per clause joined to t_ij
/// for a positive j-th literal x_i and to f_ij for a negative one. X is every
/// vertex except the clause vertices.
inline NaeReduction reduce_naesat_to_hcol(const CnfFormula& phi, const Graph& h, const VertexSet& t, const EdgeGadget& gadget, const Ceilings& c = default_ceilings())
{
    const int q = static_cast<int>(t.size());
    require(q >= 3, "reduce_naesat_to_hcol: the witness set needs at least 3 vertices");
    require(is_subset_of_vertices(h, t), "reduce_naesat_to_hcol: witness set outside H");
    require(is_critical_set(h, t), "reduce_naesat_to_hcol: witness set is not tight");
    phi.validate(q);
    const std::uint64_t n = static_cast<std::uint64_t>(phi.n_vars);
    const std::uint64_t vh = h.size(), vf = gadget.f.size();
    const std::uint64_t qq = static_cast<std::uint64_t>(q);
    const std::uint64_t copies = 2 * qq * (vh - 1) * n;
    const std::uint64_t x_formula = vh + 2 * qq * n + copies * (vf - 2);
    check_ceiling(x_formula + phi.clauses.size(), c.oracle_vertices, "reduce_naesat_to_hcol output size");

    NaeReduction r;
    r.x_formula = x_formula;
    GraphBuilder b;
    b.add_graph(Graph(h.order(), h.edges()));
    r.t_base = b.order();
    for (std::uint64_t i = 0; i < 2 * qq * n; ++i)
        b.add_vertex();
    auto tv = [&](int i, int j) { return r.t_base + 2 * ((i - 1) * q + (j - 1)); };
    auto a_of = [&](int j) { return t[static_cast<std::size_t>((j - 1) % q)]; };
    auto glue = [&](Vertex at_a, Vertex at_b) {
        std::vector<Vertex> id(gadget.f.size());
        for (Vertex x = 0; x < gadget.f.order(); ++x)
            id[static_cast<std::size_t>(x)] = x == gadget.a ? at_a : x == gadget.b ? at_b : b.add_vertex();
        for (auto [x, y] : gadget.f.edges())
            b.add_edge(id[static_cast<std::size_t>(x)], id[static_cast<std::size_t>(y)]);
        ++r.gadget_copies;
    };
    for (int i = 1; i <= phi.n_vars; ++i)
        for (int j = 1; j <= q; ++j) {
            const Vertex tij = tv(i, j), fij = tij + 1;
            glue(tij, fij);
            glue(tij, tv(i, j % q + 1));
            for (Vertex x = 0; x < h.order(); ++x)
                if (x != a_of(j) && x != a_of(j + 1)) {
                    glue(tij, x);
                    glue(fij, x);
                }
        }
    r.clause_base = b.order();
    for (const auto& cl : phi.clauses) {
        const Vertex cv = b.add_vertex();
        for (int j = 1; j <= q; ++j) {
            const int lit = cl[static_cast<std::size_t>(j - 1)];
            b.add_edge(cv, tv(std::abs(lit), j) + (lit > 0 ? 0 : 1));
        }
    }
    std::vector<Vertex> x(static_cast<std::size_t>(r.clause_base));
    std::iota(x.begin(), x.end(), 0);
    r.instance = VertexCoverInstance{b.build(), VertexSet(std::move(x))};
    if (r.gadget_copies != copies || r.instance.k() != x_formula)
        throw InvariantViolation("reduce_naesat_to_hcol: |X| differs from the closed form");
    if (!is_vertex_cover(r.instance.graph, r.instance.cover))
        throw InvariantViolation("reduce_naesat_to_hcol: clause vertices are not independent");
    return r;
}

} // namespace hcol
