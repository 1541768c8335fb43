#include <gtest/gtest.h>

#include <hcol/homomorphism.hpp>
#include <hcol/representation.hpp>
#include <hcol/witness.hpp>

using namespace hcol;

namespace {

FieldSpec prime_field_at_least(std::uint64_t n) { return field_make(next_prime_above(n == 0 ? 0 : n - 1), 1); }

std::vector<Graph> fixture_graphs()
{
    std::vector<Graph> gs;
    for (int m = 3; m <= 8; ++m)
        gs.push_back(make_cycle(m));
    for (int m = 1; m <= 5; ++m)
        gs.push_back(make_complete(m));
    for (int m = 2; m <= 5; ++m)
        gs.push_back(make_path(m));
    gs.push_back(make_kneser(5, 2));
    gs.push_back(make_kneser(6, 2));
    gs.push_back(make_edgeless(3));
    for (std::uint64_t seed = 1; seed <= 2; ++seed)
        gs.push_back(make_random(9, seed));
    return gs;
}

Representation unit_basis_triangle()
{
    const auto f = field_make(2, 1);
    Representation rep{make_complete(3), f, 3, {}, RepKind::Independent};
    for (int i = 0; i < 3; ++i) {
        FieldVector x(3, f->zero());
        x[static_cast<std::size_t>(i)] = f->one();
        rep.vectors.push_back(x);
    }
    return rep;
}

} // namespace

TEST(CheckFaithful, TwoStandardBasisVectorsOnAnEdge)
{
    // span{x_b} misses x_a and span{x_a} misses x_b, and each lies in its own
    // neighbour's span iff adjacent: the iff is satisfied on every ordered pair.
    const auto f = field_make(2, 1);
    Representation rep{make_complete(2), f, 2, {{f->one(), f->zero()}, {f->zero(), f->one()}}, RepKind::Independent};
    EXPECT_TRUE(check_faithful(rep));
}

TEST(CheckFaithful, ReportsViolatingPair)
{
    // K_2 on a, b plus an isolated c carrying x_a: x_c lies in span N(b) = <x_a>
    // although c and b are not adjacent.
    const auto f = field_make(2, 1);
    const Graph g(3, {{0, 1}});
    Representation rep{g, f, 2, {{f->one(), f->zero()}, {f->zero(), f->one()}, {f->one(), f->zero()}}, RepKind::Independent};
    const auto report = check_faithful(rep);
    ASSERT_FALSE(report);
    EXPECT_EQ(report.violation->u, 2);
    EXPECT_EQ(report.violation->v, 1);
    EXPECT_TRUE(report.violation->in_span);
}

TEST(CheckFaithful, OrthogonalViolations)
{
    const auto f = field_make(2, 1);
    Representation rep{make_complete(2), f, 2, {{f->one(), f->one()}, {f->one(), f->zero()}}, RepKind::Orthogonal};
    auto report = check_faithful(rep);
    ASSERT_FALSE(report);
    EXPECT_EQ(report.violation->u, 0); // (1,1) is self-orthogonal over GF(2)
    EXPECT_EQ(report.violation->v, 0);

    rep.vectors = {{f->one(), f->zero()}, {f->one(), f->zero()}};
    report = check_faithful(rep);
    ASSERT_FALSE(report);
    EXPECT_FALSE(report.violation->in_span);
}

TEST(CheckFaithful, MalformedRepresentationThrows)
{
    const auto f = field_make(3, 1);
    Representation rep{make_complete(2), f, 2, {{f->one(), f->zero()}}, RepKind::Independent};
    EXPECT_THROW(check_faithful(rep), InvalidArgument);
}

TEST(PetersenFixture, OrthogonalOverSmallPrimes)
{
    const auto fx = petersen_fixture();
    EXPECT_TRUE(find_isomorphism(fx.graph, make_kneser(5, 2)));
    for (std::uint32_t p : {17u, 31u}) {
        const auto rep = reduce_integer_fixture(fx, p);
        EXPECT_TRUE(check_faithful(rep)) << p;
        EXPECT_TRUE(check_faithful(as_independent(rep))) << p;
    }
    EXPECT_THROW(reduce_integer_fixture(fx, 2), Infeasible);
}

TEST(Vandermonde, Examples)
{
    const auto c5 = vandermonde_rep(make_cycle(5), field_make(7, 1));
    EXPECT_EQ(c5.d, 3);
    EXPECT_TRUE(check_faithful(c5));
    EXPECT_TRUE(c5.unit_first_entries());

    const auto f2 = field_make(2, 1);
    const auto k2 = vandermonde_rep(make_complete(2), f2);
    EXPECT_EQ(k2.d, 2);
    EXPECT_EQ(k2.vectors, (std::vector<FieldVector>{{f2->one(), f2->zero()}, {f2->one(), f2->one()}}));

    const auto pet = vandermonde_rep(make_kneser(5, 2), field_make(11, 1));
    EXPECT_EQ(pet.d, 4);
    EXPECT_TRUE(check_faithful(pet));

    EXPECT_THROW(vandermonde_rep(make_cycle(5), field_make(3, 1)), Infeasible);
}

TEST(Vandermonde, FixtureSetIsFaithful)
{
    const auto gs = fixture_graphs();
    ASSERT_EQ(gs.size(), 20u);
    for (const auto& g : gs) {
        const auto rep = vandermonde_rep(g, prime_field_at_least(g.size()));
        EXPECT_TRUE(check_faithful(rep)) << g.order();
        EXPECT_LE(witness_number(g).q, rep.d);
    }
    // extension fields work as evaluation domains too
    const auto rep = vandermonde_rep(make_cycle(7), field_make(2, 3));
    EXPECT_TRUE(check_faithful(rep));
}

TEST(Normalize, MovesToExtensionWhenFieldIsSmall)
{
    const auto rep = unit_basis_triangle();
    ASSERT_TRUE(check_faithful(rep));
    const auto out = normalize_first_entry(rep, 1);
    EXPECT_EQ(out.field->order(), 4u);
    EXPECT_TRUE(out.unit_first_entries());
    EXPECT_TRUE(check_faithful(out));
}

TEST(Normalize, VandermondeIsUnchanged)
{
    const auto f = field_make(11, 1);
    const auto rep = vandermonde_rep(make_cycle(5), f);
    const auto out = normalize_first_entry(rep, 3);
    EXPECT_EQ(out, rep);
}

TEST(Normalize, AllSeedsSucceed)
{
    const auto f31 = field_make(31, 1);
    std::vector<Representation> reps{unit_basis_triangle(), vandermonde_rep(make_cycle(7), field_make(7, 1)),
        as_independent(reduce_integer_fixture(petersen_fixture(), 31)), as_independent(ortho_graph(field_make(2, 1), 3))};
    for (const auto& rep : reps)
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto out = normalize_first_entry(rep, seed);
            EXPECT_TRUE(out.unit_first_entries());
            EXPECT_TRUE(check_faithful(out));
            EXPECT_GT(out.field->order(), out.graph.size());
            EXPECT_EQ(out.d, rep.d);
        }
}

TEST(Normalize, RejectsUnfaithfulInput)
{
    const auto f = field_make(5, 1);
    Representation rep{make_complete(2), f, 1, {{f->one()}, {f->one()}}, RepKind::Independent};
    EXPECT_THROW(normalize_first_entry(rep, 1), InvalidArgument);
}

TEST(Kneser, Thresholds)
{
    EXPECT_EQ(kneser_field_threshold(5, 2), 162u);
    EXPECT_EQ(kneser_field_threshold(7, 3), 4484u);
    EXPECT_THROW(kneser_rep(5, 2, field_make(151, 1), 1), Infeasible);
}

TEST(Kneser, FaithfulAtDeskScale)
{
    for (auto [m, r] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 2}, {7, 3}}) {
        const auto f = field_make(next_prime_above(std::max<std::uint64_t>(kneser_field_threshold(m, r), static_cast<std::uint64_t>(m))), 1);
        const auto kc = kneser_construction(m, r, f, 7);
        EXPECT_EQ(kc.rep.d, m - 2 * r + 2) << m << "," << r;
        EXPECT_TRUE(check_faithful(kc.rep));
        for (int dim : kc.u_dims)
            EXPECT_LE(dim, m - 2 * r + 1);
        EXPECT_LE(witness_number(kc.rep.graph).q, kc.rep.d);
    }
}

TEST(Kneser, SameSeedSameOutput)
{
    const auto f = field_make(167, 1);
    EXPECT_EQ(kneser_rep(5, 2, f, 11), kneser_rep(5, 2, f, 11));
}

TEST(OrthoGraph, GF2Dimension3)
{
    const auto rep = ortho_graph(field_make(2, 1), 3);
    ASSERT_EQ(rep.graph.order(), 4);
    EXPECT_EQ(rep.graph.label(0), "(0,0,1)");
    EXPECT_EQ(rep.graph.label(3), "(1,1,1)");
    EXPECT_EQ(rep.graph.edge_count(), 3u);
    EXPECT_EQ(rep.graph.degree(3), 0);
    EXPECT_TRUE(check_faithful(rep));
    EXPECT_TRUE(check_faithful(as_independent(rep)));
    EXPECT_LE(witness_number(rep.graph).q, 3);
}

TEST(OrthoGraph, ProjectiveQuotientIsEquivalent)
{
    const auto f = field_make(3, 1);
    const auto full = ortho_graph(f, 3);
    const auto proj = ortho_graph(f, 3, true);
    EXPECT_EQ(full.graph.order(), 18); // supports of size 1 or 2
    EXPECT_EQ(proj.graph.order(), 9);
    EXPECT_TRUE(check_faithful(full));
    EXPECT_TRUE(check_faithful(proj));
    EXPECT_TRUE(find_homomorphism(full.graph, proj.graph));
    EXPECT_TRUE(find_homomorphism(proj.graph, full.graph));
    EXPECT_THROW(ortho_graph(f, 8), CeilingExceeded);
}

TEST(RankMatrix, ZeroPatternAndRank)
{
    for (const auto& rep : {vandermonde_rep(make_cycle(5), field_make(7, 1)), vandermonde_rep(make_kneser(5, 2), field_make(11, 1)),
             normalize_first_entry(unit_basis_triangle(), 2)}) {
        const Matrix m = rank_matrix_from_rep(rep, 5);
        EXPECT_LE(rank(m), static_cast<std::size_t>(rep.d));
        for (Vertex u = 0; u < rep.graph.order(); ++u)
            for (Vertex v = 0; v < rep.graph.order(); ++v)
                EXPECT_EQ(rep.field->is_zero(m(static_cast<std::size_t>(u), static_cast<std::size_t>(v))), rep.graph.adjacent(u, v));
    }
}
