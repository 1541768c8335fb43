#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "config.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace hcol {

/// Total map from source vertices to target vertices.
struct Homomorphism {
    std::vector<Vertex> assignment;

    Vertex operator()(Vertex v) const { return assignment[v]; }
    bool operator==(const Homomorphism&) const = default;
};

/// Per-source-vertex allowed target sets; an absent entry means all of V(H).
using ListAssignment = std::vector<std::optional<VertexSet>>;

struct HomOptions {
    const ListAssignment* lists = nullptr;
    bool injective = false;
};

/// Edge preservation and list membership check for an arbitrary map.
inline bool is_homomorphism(const Graph& g, const Graph& h, const std::vector<Vertex>& f, const ListAssignment* lists = nullptr)
{
    if (f.size() != g.size())
        return false;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (f[v] < 0 || f[v] >= h.order())
            return false;
        if (lists && v < static_cast<Vertex>(lists->size()) && (*lists)[v] && !(*lists)[v]->contains(f[v]))
            return false;
    }
    for (auto [u, v] : g.edges())
        if (!h.adjacent(f[u], f[v]))
            return false;
    return true;
}

namespace detail {

/// Exhaustive backtracking over source vertices with forward checking of the
/// neighbour constraints. Vertices whose domain is down to one value go first,
/// then descending degree, then smaller domain, then id; values are tried in
/// increasing target id. Results are therefore deterministic.
///
/// The existence search additionally splits the unassigned vertices into
/// connected components after each assignment and solves them independently,
/// smallest first, so a failing component never re-enumerates the solutions of
/// another one. It also branches on higher core numbers first and, on large
/// unlisted instances, tries one value per orbit of the automorphisms of H that
/// fix every value already in use (any such automorphism maps extensions of the
/// current partial map to extensions). Without these, outputs of the gadget
/// reductions (thousands of small gadget copies around one copy of H) thrash.
class HomSearch {
public:
    HomSearch(const Graph& g, const Graph& h, const HomOptions& opts) : g_(g), h_(h), injective_(opts.injective)
    {
        const std::size_t n = g.size();
        domain_.assign(n, h.all_vertices());
        if (opts.lists) {
            const auto& lists = *opts.lists;
            require(lists.size() <= n, "list assignment longer than the vertex set");
            for (std::size_t v = 0; v < lists.size(); ++v)
                if (lists[v]) {
                    require(is_subset_of_vertices(h, *lists[v]), "list is not a subset of V(H)");
                    domain_[v] = to_bitset(h, *lists[v]);
                }
        }
        dsize_.resize(n);
        degree_.resize(n);
        core_ = core_numbers(g);
        use_count_.assign(h.size(), 0);
        symmetric_ = !opts.lists && !opts.injective;
        for (std::size_t v = 0; v < n; ++v) {
            dsize_[v] = domain_[v].count();
            degree_[v] = g.degree(static_cast<Vertex>(v));
        }
        value_.assign(n, -1);
    }

    /// Existence only; on success the assignment is left in solution().
    bool exists()
    {
        for (std::size_t v = 0; v < g_.size(); ++v)
            if (dsize_[v] == 0)
                return false;
        if (symmetric_ && g_.size() >= symmetry_min_source)
            load_automorphisms();
        return solve_all();
    }

    const std::vector<Vertex>& solution() const { return value_; }

    /// Calls visit for each homomorphism until it returns false. Returns whether
    /// the enumeration was stopped by visit.
    bool run(const std::function<bool(const std::vector<Vertex>&)>& visit)
    {
        const std::size_t n = g_.size();
        for (std::size_t v = 0; v < n; ++v)
            if (dsize_[v] == 0)
                return false;
        if (n == 0)
            return !visit(value_);

        struct Frame {
            Vertex var;
            Bitset candidates;
            std::size_t mark;
        };
        std::vector<Frame> stack;
        std::size_t assigned = 0;

        auto open = [&]() {
            const Vertex v = choose();
            stack.push_back(Frame{v, domain_[v], trail_.size()});
        };
        open();

        while (!stack.empty()) {
            Frame& fr = stack.back();
            undo(fr.mark);
            if (value_[fr.var] >= 0) {
                value_[fr.var] = -1;
                --assigned;
            }
            bool placed = false;
            while (fr.candidates.any()) {
                const auto h = static_cast<Vertex>(fr.candidates.first());
                fr.candidates.reset(static_cast<std::size_t>(h));
                value_[fr.var] = h;
                ++assigned;
                if (propagate(fr.var, h)) {
                    placed = true;
                    break;
                }
                undo(fr.mark);
                value_[fr.var] = -1;
                --assigned;
            }
            if (!placed) {
                stack.pop_back();
                continue;
            }
            if (assigned == n) {
                if (!visit(value_))
                    return true;
                continue; // next candidate for the same frame
            }
            open();
        }
        return false;
    }

private:
    bool better(Vertex v, Vertex best) const
    {
        if (best < 0)
            return true;
        const bool fv = dsize_[v] == 1, fb = dsize_[best] == 1;
        if (fv != fb)
            return fv;
        if (core_[v] != core_[best])
            return core_[v] > core_[best];
        if (degree_[v] != degree_[best])
            return degree_[v] > degree_[best];
        return dsize_[v] < dsize_[best];
    }

    Vertex choose() const
    {
        Vertex best = -1;
        for (Vertex v = 0; v < g_.order(); ++v)
            if (value_[v] < 0 && better(v, best))
                best = v;
        return best;
    }

    Vertex choose_in(const Bitset& part) const
    {
        Vertex best = -1;
        part.for_each([&](std::size_t vv) {
            if (better(static_cast<Vertex>(vv), best))
                best = static_cast<Vertex>(vv);
        });
        return best;
    }

    // Connected components of the subgraph induced by part, ordered by least
    // vertex. With injectivity required everything counts as one component.
    std::vector<Bitset> components(Bitset part) const
    {
        std::vector<Bitset> out;
        if (injective_) {
            out.push_back(std::move(part));
            return out;
        }
        while (part.any()) {
            Bitset comp(g_.size());
            Bitset frontier(g_.size());
            const std::size_t s = part.first();
            frontier.set(s);
            part.reset(s);
            while (frontier.any()) {
                comp |= frontier;
                Bitset next(g_.size());
                frontier.for_each([&](std::size_t v) { next |= g_.neighbors(static_cast<Vertex>(v)); });
                next &= part;
                part.subtract(next);
                frontier = std::move(next);
            }
            out.push_back(std::move(comp));
        }
        std::stable_sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) { return a.count() < b.count(); });
        return out;
    }

    // AND/OR search with an explicit stack. A Group solves independent
    // components one after another; a Chain assigns the vertices of one
    // connected component and opens a nested Group once the unassigned rest
    // of it falls apart.
    bool solve_all()
    {
        struct Choice {
            Vertex v;
            Bitset candidates;
            std::size_t mark;
        };
        struct Node {
            bool group;
            std::vector<Bitset> comps; // group
            std::size_t next = 0;      // group
            std::size_t mark = 0;      // group
            Bitset remaining;          // chain
            std::vector<Choice> choices; // chain
        };
        enum class Signal { None, Success, Fail };

        std::vector<Node> stack;
        stack.push_back(Node{true, components(g_.all_vertices()), 0, trail_.size(), {}, {}});
        Signal signal = Signal::None;

        while (!stack.empty()) {
            Node& top = stack.back();
            if (top.group) {
                if (signal == Signal::Fail) {
                    undo(top.mark);
                    for (std::size_t i = 0; i < top.next; ++i)
                        top.comps[i].for_each([&](std::size_t u) { set_value(static_cast<Vertex>(u), -1); });
                    stack.pop_back();
                    continue;
                }
                if (signal == Signal::Success)
                    ++top.next;
                if (top.next == top.comps.size()) {
                    stack.pop_back();
                    signal = Signal::Success;
                    continue;
                }
                Bitset part = top.comps[top.next];
                stack.push_back(Node{false, {}, 0, 0, std::move(part), {}});
                signal = Signal::None;
                continue;
            }

            // chain
            if (signal == Signal::Success) {
                stack.pop_back();
                continue;
            }
            if (signal == Signal::None) {
                const Vertex v = choose_in(top.remaining);
                top.remaining.reset(static_cast<std::size_t>(v));
                top.choices.push_back(Choice{v, candidates_for(v), trail_.size()});
            }
            // Place the next candidate of the innermost choice, backing up
            // through earlier choices of this chain when one runs dry.
            bool placed = false;
            while (!top.choices.empty()) {
                Choice& c = top.choices.back();
                undo(c.mark);
                set_value(c.v, -1);
                while (c.candidates.any()) {
                    const auto h = static_cast<Vertex>(c.candidates.first());
                    c.candidates.reset(static_cast<std::size_t>(h));
                    set_value(c.v, h);
                    if (propagate(c.v, h)) {
                        placed = true;
                        break;
                    }
                    undo(c.mark);
                    set_value(c.v, -1);
                }
                if (placed)
                    break;
                top.remaining.set(static_cast<std::size_t>(c.v));
                top.choices.pop_back();
            }
            if (!placed) {
                stack.pop_back();
                signal = Signal::Fail;
                continue;
            }
            const Vertex v = top.choices.back().v;
            if (top.remaining.none()) {
                stack.pop_back();
                signal = Signal::Success;
                continue;
            }
            // Removing a vertex with at most one neighbour left in a connected
            // set cannot disconnect it.
            if (injective_ || (g_.neighbors(v) & top.remaining).count() <= 1) {
                signal = Signal::None;
                continue;
            }
            auto comps = components(top.remaining);
            if (comps.size() == 1) {
                signal = Signal::None;
                continue;
            }
            stack.push_back(Node{true, std::move(comps), 0, trail_.size(), {}, {}});
            signal = Signal::None;
        }
        return signal == Signal::Success;
    }

    void set_value(Vertex v, Vertex h)
    {
        if (value_[v] >= 0)
            --use_count_[static_cast<std::size_t>(value_[v])];
        value_[v] = h;
        if (h >= 0)
            ++use_count_[static_cast<std::size_t>(h)];
    }

    void load_automorphisms()
    {
        HomOptions opts;
        opts.injective = true;
        HomSearch all(h_, h_, opts);
        all.run([&](const std::vector<Vertex>& a) {
            autos_.push_back(a);
            return autos_.size() <= symmetry_max_group;
        });
        if (autos_.size() <= 1 || autos_.size() > symmetry_max_group)
            autos_.clear();
    }

    // Domain of v thinned to one value per orbit of the automorphisms fixing
    // every value in use. Domains stay invariant under those automorphisms,
    // since forward checking only intersects with neighbourhoods of used values.
    Bitset candidates_for(Vertex v) const
    {
        const Bitset& dom = domain_[v];
        if (autos_.empty())
            return dom;
        std::vector<const std::vector<Vertex>*> alive;
        for (const auto& a : autos_) {
            bool fixes = true;
            for (std::size_t w = 0; w < use_count_.size() && fixes; ++w)
                fixes = use_count_[w] == 0 || a[w] == static_cast<Vertex>(w);
            if (fixes)
                alive.push_back(&a);
        }
        if (alive.size() <= 1)
            return dom;
        Bitset out(h_.size()), seen(h_.size());
        dom.for_each([&](std::size_t x) {
            if (seen.test(x))
                return;
            out.set(x);
            for (const auto* a : alive)
                seen.set(static_cast<std::size_t>((*a)[x]));
        });
        return out;
    }

    void restrict_domain(Vertex u, const Bitset& allowed)
    {
        trail_.emplace_back(u, domain_[u]);
        domain_[u] &= allowed;
        dsize_[u] = domain_[u].count();
    }

    void remove_value(Vertex u, Vertex h)
    {
        trail_.emplace_back(u, domain_[u]);
        domain_[u].reset(static_cast<std::size_t>(h));
        --dsize_[u];
    }

    bool propagate(Vertex v, Vertex h)
    {
        bool ok = true;
        const Bitset& nh = h_.neighbors(h);
        g_.neighbors(v).for_each([&](std::size_t uu) {
            if (!ok)
                return;
            const auto u = static_cast<Vertex>(uu);
            if (value_[u] >= 0) {
                if (!nh.test(static_cast<std::size_t>(value_[u])))
                    ok = false;
                return;
            }
            if (!domain_[u].is_subset_of(nh)) {
                restrict_domain(u, nh);
                if (dsize_[u] == 0)
                    ok = false;
            }
        });
        if (ok && injective_) {
            for (Vertex u = 0; u < g_.order() && ok; ++u) {
                if (value_[u] >= 0) {
                    if (u != v && value_[u] == h)
                        ok = false;
                    continue;
                }
                if (domain_[u].test(static_cast<std::size_t>(h))) {
                    remove_value(u, h);
                    if (dsize_[u] == 0)
                        ok = false;
                }
            }
        }
        return ok;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            auto& [u, old] = trail_.back();
            domain_[u] = std::move(old);
            dsize_[u] = domain_[u].count();
            trail_.pop_back();
        }
    }

    const Graph& g_;
    const Graph& h_;
    bool injective_;
    std::vector<Bitset> domain_;
    std::vector<std::size_t> dsize_;
    std::vector<int> degree_;
    std::vector<int> core_;
    std::vector<int> use_count_;
    bool symmetric_ = false;
    std::vector<std::vector<Vertex>> autos_;
    static constexpr std::size_t symmetry_min_source = 64;
    static constexpr std::size_t symmetry_max_group = 5040;
    std::vector<Vertex> value_;
    std::vector<std::pair<Vertex, Bitset>> trail_;
};

} // namespace detail

/// Enumerates (list-respecting, optionally injective) homomorphisms g -> h in a
/// deterministic order, calling visit until it returns false.
inline void for_each_homomorphism(const Graph& g, const Graph& h, const HomOptions& opts,
    const std::function<bool(const std::vector<Vertex>&)>& visit)
{
    detail::HomSearch search(g, h, opts);
    search.run(visit);
}

/// Exact: returns a homomorphism g -> h respecting the lists if one exists.
inline std::optional<Homomorphism> find_homomorphism(const Graph& g, const Graph& h, const HomOptions& opts = {})
{
    detail::HomSearch search(g, h, opts);
    if (!search.exists())
        return std::nullopt;
    Homomorphism out{search.solution()};
    if (!is_homomorphism(g, h, out.assignment, opts.lists))
        throw InvariantViolation("find_homomorphism: solver returned an invalid map");
    return out;
}

inline std::optional<Homomorphism> find_list_homomorphism(const Graph& g, const Graph& h, const ListAssignment& lists)
{
    HomOptions opts;
    opts.lists = &lists;
    return find_homomorphism(g, h, opts);
}

/// Guarded variant used wherever the oracle is part of a verification path.
inline bool is_h_colorable(const Graph& g, const Graph& h, const Ceilings& c = default_ceilings())
{
    check_ceiling(g.size(), c.oracle_vertices, "homomorphism oracle source size");
    return find_homomorphism(g, h).has_value();
}

/// Counts homomorphisms; exponential, for tests and small graphs.
inline std::size_t count_homomorphisms(const Graph& g, const Graph& h)
{
    std::size_t count = 0;
    for_each_homomorphism(g, h, {}, [&](const std::vector<Vertex>&) {
        ++count;
        return true;
    });
    return count;
}

/// A graph is a core iff every endomorphism is an automorphism. For finite simple
/// graphs a bijective endomorphism is an automorphism, so it suffices to check
/// bijectivity of each enumerated endomorphism.
inline bool is_core(const Graph& g)
{
    bool core = true;
    for_each_homomorphism(g, g, {}, [&](const std::vector<Vertex>& f) {
        Bitset seen(g.size());
        for (Vertex x : f)
            seen.set(static_cast<std::size_t>(x));
        if (seen.count() != g.size()) {
            core = false;
            return false;
        }
        return true;
    });
    return core;
}

/// Vertex set of the core of g: the lexicographically first smallest S such
/// that g maps to g[S]. Exponential in |V(g)|; guarded by core_vertices.
inline VertexSet core_vertex_set(const Graph& g, const Ceilings& c = default_ceilings())
{
    require(g.order() > 0, "compute_core: graph must be nonempty");
    check_ceiling(g.size(), c.core_vertices, "compute_core vertex count");
    const bool has_edge = g.edge_count() > 0;
    const int n = g.order();
    for (int s = 1; s <= n; ++s) {
        for (const auto& subset : r_subsets(n, s)) {
            std::vector<Vertex> ids;
            for (int x : subset)
                ids.push_back(x - 1);
            VertexSet vs(std::move(ids));
            Graph sub = induced_subgraph(g, vs);
            if (has_edge && sub.edge_count() == 0)
                continue;
            if (find_homomorphism(g, sub))
                return vs;
        }
    }
    throw InvariantViolation("compute_core: no retract found, the full vertex set must qualify");
}

inline Graph compute_core(const Graph& g, const Ceilings& c = default_ceilings())
{
    return induced_subgraph(g, core_vertex_set(g, c));
}

/// Brute-force isomorphism test by permutation search (small graphs only).
inline std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a, const Graph& b)
{
    if (a.order() != b.order() || a.edge_count() != b.edge_count())
        return std::nullopt;
    std::optional<std::vector<Vertex>> out;
    HomOptions opts;
    opts.injective = true;
    for_each_homomorphism(a, b, opts, [&](const std::vector<Vertex>& f) {
        // injective + equal edge counts => edge bijection
        out = f;
        return false;
    });
    return out;
}

} // namespace hcol
