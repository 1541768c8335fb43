#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "field.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace hcol {

enum class RepKind { Orthogonal, Independent };

inline std::string to_string(RepKind k) { return k == RepKind::Orthogonal ? "orthogonal" : "independent"; }

/// One d-dimensional vector per vertex of graph, over field.
struct Representation {
    Graph graph;
    FieldSpec field;
    int d = 0;
    std::vector<FieldVector> vectors;
    RepKind kind = RepKind::Independent;

    void validate() const
    {
        require(field != nullptr, "representation: missing field");
        require(d >= 1, "representation: dimension must be positive");
        require(vectors.size() == graph.size(), "representation: one vector per vertex required");
        for (const auto& x : vectors) {
            require(x.size() == static_cast<std::size_t>(d), "representation: vector length differs from d");
            for (auto e : x)
                require(e.code < field->order(), "representation: entry outside the field");
        }
    }

    bool unit_first_entries() const
    {
        for (const auto& x : vectors)
            if (x.empty() || x[0] != field->one())
                return false;
        return true;
    }

    bool operator==(const Representation& o) const
    {
        return graph == o.graph && *field == *o.field && d == o.d && vectors == o.vectors && kind == o.kind;
    }
};

/// First pair (u, v) breaking faithfulness. For the independent kind, u == v
/// means x_v lies in the span of its own neighbourhood; otherwise in_span says
/// whether x_u was found in span N(v) while adjacency said the opposite. For the
/// orthogonal kind, u == v flags a self-orthogonal vector.
struct FaithfulnessViolation {
    Vertex u;
    Vertex v;
    bool in_span;
    std::string message;
};

struct FaithfulnessReport {
    std::optional<FaithfulnessViolation> violation;
    explicit operator bool() const { return !violation; }
};

inline FaithfulnessReport check_faithful(const Representation& rep)
{
    rep.validate();
    const Graph& g = rep.graph;
    const Field& f = *rep.field;
    if (rep.kind == RepKind::Orthogonal) {
        for (Vertex u = 0; u < g.order(); ++u) {
            if (f.is_zero(dot(f, rep.vectors[u], rep.vectors[u])))
                return {FaithfulnessViolation{u, u, false, "vector of " + g.label(u) + " is self-orthogonal"}};
            for (Vertex v = u + 1; v < g.order(); ++v) {
                const bool orth = f.is_zero(dot(f, rep.vectors[u], rep.vectors[v]));
                if (orth != g.adjacent(u, v))
                    return {FaithfulnessViolation{u, v, orth,
                        orth ? g.label(u) + " and " + g.label(v) + " are orthogonal but not adjacent"
                             : g.label(u) + " and " + g.label(v) + " are adjacent but not orthogonal"}};
            }
        }
        return {};
    }
    for (Vertex v = 0; v < g.order(); ++v) {
        SpanBasis span(rep.field, static_cast<std::size_t>(rep.d));
        g.neighbors(v).for_each([&](std::size_t w) { span.insert(rep.vectors[w]); });
        for (Vertex u = 0; u < g.order(); ++u) {
            const bool in = span.contains(rep.vectors[u]);
            if (in != g.adjacent(u, v)) {
                std::string msg = in ? "x_" + g.label(u) + " lies in span N(" + g.label(v) + ") but they are not adjacent"
                                     : "x_" + g.label(u) + " lies outside span N(" + g.label(v) + ") but they are adjacent";
                return {FaithfulnessViolation{u, v, in, std::move(msg)}};
            }
        }
    }
    return {};
}

/// Same vectors read as an independent representation. A faithful orthogonal
/// representation stays faithful under this reading.
inline Representation as_independent(Representation rep)
{
    rep.kind = RepKind::Independent;
    return rep;
}

// ---------------------------------------------------------------------------
// Constructions

/// x_i = (1, a_i, ..., a_i^{d-1}) with d = maxdeg + 1 and a_i the i-th field
/// element. Any d such vectors form an invertible Vandermonde matrix, which
/// makes the representation faithful.
inline Representation vandermonde_rep(const Graph& g, const FieldSpec& f)
{
    if (f->order() < g.size())
        throw Infeasible("vandermonde_rep: field " + f->name() + " has fewer elements than the graph has vertices (" + std::to_string(g.order()) + ")");
    Representation rep{g, f, max_degree(g) + 1, {}, RepKind::Independent};
    for (Vertex v = 0; v < g.order(); ++v) {
        const FieldElement a = f->element(static_cast<std::uint64_t>(v));
        FieldVector x;
        FieldElement p = f->one();
        for (int i = 0; i < rep.d; ++i) {
            x.push_back(p);
            p = f->mul(p, a);
        }
        rep.vectors.push_back(std::move(x));
    }
    return rep;
}

namespace detail {

inline FieldVector random_vector(const Field& f, std::size_t d, Rng& rng)
{
    FieldVector y(d);
    for (auto& e : y)
        e = f.element(uniform_below(rng, f.order()));
    return y;
}

} // namespace detail

/// Moves a faithful independent representation into K = the smallest extension
/// with |K| > |V| and applies an invertible A whose first row y is not
/// orthogonal to any vector, then scales each vector to first entry 1. y = e_1
/// is tried first, then seeded random vectors up to the retry cap.
inline Representation normalize_first_entry(const Representation& rep, std::uint64_t seed, const Ceilings& c = default_ceilings())
{
    require(rep.kind == RepKind::Independent, "normalize_first_entry: independent representation required");
    if (auto bad = check_faithful(rep); !bad)
        throw InvalidArgument("normalize_first_entry: input is not faithful: " + bad.violation->message);
    const FieldSpec k = field_extension_above(rep.field, std::max<std::uint64_t>(rep.graph.size(), 1), c);
    const auto emb = embedding(rep.field, k);
    const std::size_t d = static_cast<std::size_t>(rep.d);
    std::vector<FieldVector> xs;
    for (const auto& x : rep.vectors) {
        FieldVector y;
        for (auto e : x)
            y.push_back((*emb)(e));
        xs.push_back(std::move(y));
    }

    auto acceptable = [&](const FieldVector& y) {
        for (const auto& x : xs)
            if (k->is_zero(dot(*k, y, x)))
                return false;
        return true;
    };
    FieldVector y(d, k->zero());
    y[0] = k->one();
    if (!acceptable(y)) {
        Rng rng(seed);
        bool found = false;
        for (std::size_t attempt = 0; attempt < c.retry_cap && !found; ++attempt) {
            y = detail::random_vector(*k, d, rng);
            found = acceptable(y);
        }
        if (!found)
            throw Infeasible("normalize_first_entry: no admissible first row after " + std::to_string(c.retry_cap) + " attempts (seed " + std::to_string(seed) + ")");
    }

    // A = [y; e_i for i != j] with j the first nonzero index of y, so det A = +-y_j.
    std::size_t j = 0;
    while (k->is_zero(y[j]))
        ++j;
    Matrix a(k, d, d);
    for (std::size_t col = 0; col < d; ++col)
        a(0, col) = y[col];
    std::size_t row = 1;
    for (std::size_t i = 0; i < d; ++i)
        if (i != j)
            a(row++, i) = k->one();

    Representation out{rep.graph, k, rep.d, {}, RepKind::Independent};
    for (const auto& x : xs) {
        FieldVector z = a.apply(x);
        const FieldElement s = k->inv(z[0]);
        for (auto& e : z)
            e = k->mul(e, s);
        out.vectors.push_back(std::move(z));
    }
    if (auto bad = check_faithful(out); !bad)
        throw InvariantViolation("normalize_first_entry: output lost faithfulness: " + bad.violation->message);
    return out;
}

// ---------------------------------------------------------------------------
// Kneser graphs

/// Size bound from the general-position argument: with t = m - 2r + 2 and n
/// subspaces (one U_B per vertex plus one U_B^A per non-adjacent ordered pair,
/// A = B included), a field with more than (m - t)(n + 1) elements suffices.
inline std::uint64_t kneser_field_threshold(int m, int r)
{
    require(r >= 1 && m >= 2 * r, "kneser_field_threshold: need m >= 2r >= 2");
    const Graph k = make_kneser(m, r);
    std::uint64_t non_adjacent = 0;
    for (Vertex v = 0; v < k.order(); ++v)
        non_adjacent += static_cast<std::uint64_t>(k.order() - k.degree(v));
    const std::uint64_t n = static_cast<std::uint64_t>(k.order()) + non_adjacent;
    const int t = m - 2 * r + 2;
    return static_cast<std::uint64_t>(m - t) * (n + 1);
}

struct KneserConstruction {
    Representation rep;
    std::vector<int> u_dims; // dim U_B before projection, per vertex B
    int attempts = 0;        // random maps tried
};

/// Faithful (m - 2r + 2)-dimensional independent representation of K(m, r):
/// nullspace vectors x_A of an (r-1) x m Vandermonde matrix restricted to A,
/// followed by a random projection to t = m - 2r + 2 dimensions that is verified
/// to keep the dimension of every U_B and every U_B + <x_A> for non-adjacent A, B.
inline KneserConstruction kneser_construction(int m, int r, const FieldSpec& f, std::uint64_t seed, const Ceilings& c = default_ceilings())
{
    require(r >= 1 && m >= 2 * r, "kneser_rep: need m >= 2r >= 2");
    const std::uint64_t threshold = std::max<std::uint64_t>(kneser_field_threshold(m, r), static_cast<std::uint64_t>(m) - 1);
    if (f->order() <= threshold)
        throw Infeasible("kneser_rep: field " + f->name() + " has order at most the threshold " + std::to_string(threshold) + " for K(" + std::to_string(m) + "," + std::to_string(r) + ")");
    const Graph g = make_kneser(m, r);
    const auto subsets = r_subsets(m, r);
    const std::size_t mm = static_cast<std::size_t>(m);
    const int t = m - 2 * r + 2;

    Matrix vm(f, static_cast<std::size_t>(r - 1), mm);
    for (std::size_t j = 0; j < mm; ++j) {
        FieldElement p = f->one();
        for (int i = 0; i < r - 1; ++i) {
            vm(static_cast<std::size_t>(i), j) = p;
            p = f->mul(p, f->element(j));
        }
    }

    std::vector<FieldVector> x;
    for (const auto& a : subsets) {
        Matrix sub(f, static_cast<std::size_t>(r - 1), static_cast<std::size_t>(r));
        for (int i = 0; i < r - 1; ++i)
            for (int col = 0; col < r; ++col)
                sub(static_cast<std::size_t>(i), static_cast<std::size_t>(col)) = vm(static_cast<std::size_t>(i), static_cast<std::size_t>(a[col] - 1));
        const auto ns = nullspace(sub);
        if (ns.size() != 1)
            throw InvariantViolation("kneser_rep: restricted Vandermonde nullspace is not one-dimensional");
        FieldVector xa(mm, f->zero());
        for (int col = 0; col < r; ++col) {
            if (f->is_zero(ns[0][static_cast<std::size_t>(col)]))
                throw InvariantViolation("kneser_rep: nullspace vector not supported on all of A");
            xa[static_cast<std::size_t>(a[col] - 1)] = ns[0][static_cast<std::size_t>(col)];
        }
        x.push_back(std::move(xa));
    }

    // Generators of every subspace whose dimension the projection must keep.
    std::vector<std::vector<Vertex>> families;
    std::vector<int> u_dims;
    for (Vertex b = 0; b < g.order(); ++b) {
        std::vector<Vertex> nb = g.neighbors(b).to_vector();
        std::vector<FieldVector> gens;
        for (Vertex w : nb)
            gens.push_back(x[w]);
        const int dim = static_cast<int>(span_dimension(f, mm, gens));
        if (dim > m - 2 * r + 1)
            throw InvariantViolation("kneser_rep: dim U_B exceeds m - 2r + 1");
        u_dims.push_back(dim);
        families.push_back(nb);
        for (Vertex a = 0; a < g.order(); ++a)
            if (!g.adjacent(a, b)) {
                auto with_a = nb;
                with_a.push_back(a);
                families.push_back(std::move(with_a));
            }
    }
    std::vector<std::size_t> dims;
    for (const auto& fam : families) {
        std::vector<FieldVector> gens;
        for (Vertex w : fam)
            gens.push_back(x[w]);
        dims.push_back(span_dimension(f, mm, gens));
    }

    auto project = [&](const Matrix& phi) {
        std::vector<FieldVector> out;
        for (const auto& xa : x)
            out.push_back(phi.apply(xa));
        return out;
    };
    auto keeps_dimensions = [&](const std::vector<FieldVector>& px) {
        for (std::size_t i = 0; i < families.size(); ++i) {
            std::vector<FieldVector> gens;
            for (Vertex w : families[i])
                gens.push_back(px[w]);
            if (span_dimension(f, static_cast<std::size_t>(t), gens) != dims[i])
                return false;
        }
        return true;
    };

    KneserConstruction out{Representation{g, f, t, {}, RepKind::Independent}, u_dims, 0};
    if (t == m) {
        out.rep.vectors = x; // r = 1: no projection needed
    } else {
        Rng rng(seed);
        bool found = false;
        for (std::size_t attempt = 0; attempt < c.retry_cap && !found; ++attempt) {
            ++out.attempts;
            Matrix phi(f, static_cast<std::size_t>(t), mm);
            for (std::size_t i = 0; i < static_cast<std::size_t>(t); ++i)
                for (std::size_t j = 0; j < mm; ++j)
                    phi(i, j) = f->element(uniform_below(rng, f->order()));
            auto px = project(phi);
            if (keeps_dimensions(px)) {
                out.rep.vectors = std::move(px);
                found = true;
            }
        }
        if (!found)
            throw Infeasible("kneser_rep: no dimension-preserving projection after " + std::to_string(c.retry_cap) + " attempts (seed " + std::to_string(seed) + ")");
    }
    if (auto bad = check_faithful(out.rep); !bad)
        throw InvariantViolation("kneser_rep: output is not faithful: " + bad.violation->message);
    return out;
}

inline Representation kneser_rep(int m, int r, const FieldSpec& f, std::uint64_t seed, const Ceilings& c = default_ceilings())
{
    return kneser_construction(m, r, f, seed, c).rep;
}

// ---------------------------------------------------------------------------
// Orthogonality graphs

/// H(F, d): non-self-orthogonal vectors of F^d in lexicographic order, adjacent
/// iff orthogonal, with the identity orthogonal representation. With projective
/// set, only vectors whose first nonzero entry is 1 are kept; scalar multiples
/// have identical neighbourhoods, so the result is homomorphically equivalent.
inline Representation ortho_graph(const FieldSpec& f, int d, bool projective = false, const Ceilings& c = default_ceilings())
{
    require(d >= 1, "ortho_graph: d must be positive");
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) {
        total *= f->order();
        check_ceiling(total, c.ortho_vertices, "ortho_graph vector count");
    }
    std::vector<FieldVector> vecs;
    std::vector<std::string> labels;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        FieldVector x(static_cast<std::size_t>(d));
        std::uint64_t rest = idx;
        for (int i = d - 1; i >= 0; --i) {
            x[static_cast<std::size_t>(i)] = f->element(rest % f->order());
            rest /= f->order();
        }
        if (f->is_zero(dot(*f, x, x)))
            continue;
        if (projective) {
            std::size_t j = 0;
            while (f->is_zero(x[j]))
                ++j;
            if (x[j] != f->one())
                continue;
        }
        std::string label = "(";
        for (int i = 0; i < d; ++i)
            label += (i ? "," : "") + f->to_string(x[static_cast<std::size_t>(i)]);
        labels.push_back(label + ")");
        vecs.push_back(std::move(x));
    }
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < vecs.size(); ++u)
        for (std::size_t v = u + 1; v < vecs.size(); ++v)
            if (f->is_zero(dot(*f, vecs[u], vecs[v])))
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    Graph g(static_cast<int>(vecs.size()), edges, std::move(labels));
    return Representation{std::move(g), f, d, std::move(vecs), RepKind::Orthogonal};
}

// ---------------------------------------------------------------------------
// Petersen fixture

/// Petersen graph drawn as an outer 5-cycle 0..4, inner pentagram on 5..9
/// (5-7-9-6-8-5) and spokes i - (i+5), with a faithful orthogonal
/// representation in integer coordinates.
struct IntegerFixture {
    Graph graph;
    std::vector<std::vector<long long>> vectors;
};

inline IntegerFixture petersen_fixture()
{
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
    }
    for (auto [a, b] : std::vector<Edge>{{5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}})
        e.emplace_back(a, b);
    return {Graph(10, e),
        {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {1, 1, -1}, {0, 1, 1}, {0, 1, 2}, {1, 0, -3}, {1, 2, -1}, {3, -2, 1}, {3, -1, 1}}};
}

/// Reduces an integer orthogonal representation into a prime field, refusing
/// primes where some inner product vanishes mod p but not over the integers.
inline Representation reduce_integer_fixture(const IntegerFixture& fx, std::uint32_t p)
{
    const auto f = field_make(p, 1);
    auto idot = [](const std::vector<long long>& a, const std::vector<long long>& b) {
        long long s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s;
    };
    const auto n = fx.vectors.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u; v < n; ++v) {
            const long long s = idot(fx.vectors[u], fx.vectors[v]);
            if (s != 0 && s % static_cast<long long>(p) == 0)
                throw Infeasible("fixture: inner product of " + std::to_string(u) + "," + std::to_string(v) + " vanishes mod " + std::to_string(p));
        }
    Representation rep{fx.graph, f, static_cast<int>(fx.vectors.front().size()), {}, RepKind::Orthogonal};
    for (const auto& x : fx.vectors) {
        FieldVector y;
        for (long long e : x)
            y.push_back(f->from_int(e));
        rep.vectors.push_back(std::move(y));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Rank characterisation

/// From a faithful independent representation over a field with more than |V|
/// elements, builds M with M[u][v] = <x_u, z_v>, where z_v is a random vector
/// orthogonal to span N(v) and to no other x_u. Then M[u][v] = 0 iff u ~ v and
/// rank M <= d. Verified before returning.
inline Matrix rank_matrix_from_rep(const Representation& rep, std::uint64_t seed, const Ceilings& c = default_ceilings())
{
    require(rep.kind == RepKind::Independent, "rank_matrix_from_rep: independent representation required");
    const Graph& g = rep.graph;
    const FieldSpec& f = rep.field;
    const std::size_t n = g.size();
    const std::size_t d = static_cast<std::size_t>(rep.d);
    Rng rng(seed);
    Matrix xt(f, n, d);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < d; ++i)
            xt(u, i) = rep.vectors[u][i];
    Matrix z(f, d, n);
    for (Vertex v = 0; v < g.order(); ++v) {
        std::vector<FieldVector> rows;
        g.neighbors(v).for_each([&](std::size_t w) { rows.push_back(rep.vectors[w]); });
        const auto comp = rows.empty() ? nullspace(Matrix(f, 1, d)) : nullspace(Matrix::from_rows(f, rows, d));
        bool found = false;
        for (std::size_t attempt = 0; attempt < c.retry_cap && !found; ++attempt) {
            FieldVector zv(d, f->zero());
            for (const auto& b : comp) {
                const FieldElement coef = f->element(uniform_below(rng, f->order()));
                for (std::size_t i = 0; i < d; ++i)
                    zv[i] = f->add(zv[i], f->mul(coef, b[i]));
            }
            bool ok = true;
            for (Vertex u = 0; u < g.order() && ok; ++u)
                if (!g.adjacent(u, v) && f->is_zero(dot(*f, rep.vectors[u], zv)))
                    ok = false;
            if (ok) {
                for (std::size_t i = 0; i < d; ++i)
                    z(i, static_cast<std::size_t>(v)) = zv[i];
                found = true;
            }
        }
        if (!found)
            throw Infeasible("rank_matrix_from_rep: no dual vector for vertex " + std::to_string(v) + " (seed " + std::to_string(seed) + ")");
    }
    Matrix m = xt * z;
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = 0; v < g.order(); ++v)
            if (f->is_zero(m(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) != g.adjacent(u, v))
                throw InvariantViolation("rank_matrix_from_rep: zero pattern differs from adjacency");
    if (rank(m) > d)
        throw InvariantViolation("rank_matrix_from_rep: rank exceeds d");
    return m;
}

} // namespace hcol
