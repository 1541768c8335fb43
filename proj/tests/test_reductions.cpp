#include <gtest/gtest.h>

#include <sstream>

#include <hcol/cnf.hpp>
#include <hcol/homomorphism.hpp>
#include <hcol/reductions.hpp>

using namespace hcol;

namespace {

// Seven-vertex gadget for K(6,2) found by the enumeration; a = 0, b = 1.
Graph k62_gadget_graph() { return Graph(7, {{0, 4}, {0, 5}, {0, 6}, {1, 2}, {1, 3}, {2, 5}, {2, 6}, {3, 4}, {3, 6}, {4, 5}}); }

ListAssignment random_lists(int n, int hn, Rng& rng)
{
    ListAssignment lists(static_cast<std::size_t>(n));
    for (auto& l : lists) {
        if (uniform_below(rng, 4) == 0)
            continue; // no list: every colour allowed
        std::vector<Vertex> ids;
        for (Vertex x = 0; x < hn; ++x)
            if (coin(rng))
                ids.push_back(x);
        l = VertexSet(std::move(ids));
    }
    return lists;
}

} // namespace

TEST(EdgeGadget, VerifyExamples)
{
    EXPECT_TRUE(verify_edge_gadget(make_cycle(5), make_path(4), 0, 3));
    EXPECT_TRUE(verify_edge_gadget(make_complete(3), make_path(2), 0, 1));
    const auto bad = edge_gadget_violation(make_cycle(5), make_path(2), 0, 1);
    ASSERT_TRUE(bad);
    EXPECT_NE(bad->u, bad->v);
    EXPECT_FALSE(bad->extends);
    EXPECT_FALSE(make_cycle(5).adjacent(bad->u, bad->v));
    EXPECT_THROW(verify_edge_gadget(make_cycle(5), make_path(3), 1, 1), InvalidArgument);
    EXPECT_THROW(make_edge_gadget(make_cycle(5), make_path(2), 0, 1, "edge"), InvalidArgument);
}

TEST(EdgeGadget, EvenPathsForOddCyclesAndEdgesForCliques)
{
    for (int m = 1; m <= 3; ++m)
        EXPECT_TRUE(verify_edge_gadget(make_cycle(2 * m + 1), make_path(2 * m), 0, 2 * m - 1)) << m;
    for (int m = 3; m <= 5; ++m)
        EXPECT_TRUE(verify_edge_gadget(make_complete(m), make_path(2), 0, 1)) << m;
    // too short a path forces adjacency in C_7
    EXPECT_FALSE(verify_edge_gadget(make_cycle(7), make_path(4), 0, 3));
}

TEST(EdgeGadget, SearchFindsCanonicalFamilies)
{
    const auto c7 = find_edge_gadget(make_cycle(7), 7);
    ASSERT_EQ(c7.status, GadgetStatus::Found);
    EXPECT_EQ(c7.gadget->family, "path");
    EXPECT_EQ(c7.gadget->f.order(), 6);
    EXPECT_EQ(c7.gadget->b, 5);

    const auto k4 = find_edge_gadget(make_complete(4), 7);
    ASSERT_EQ(k4.status, GadgetStatus::Found);
    EXPECT_EQ(k4.gadget->family, "edge");
    EXPECT_EQ(k4.candidates_verified, 1u);

    const auto pet = find_edge_gadget(make_kneser(5, 2), 7);
    ASSERT_EQ(pet.status, GadgetStatus::Found);
    EXPECT_EQ(pet.gadget->f.order(), 4);
    EXPECT_TRUE(verify_edge_gadget(make_kneser(5, 2), pet.gadget->f, pet.gadget->a, pet.gadget->b));
}

TEST(EdgeGadget, KneserSixTwoFixture)
{
    const Graph h = make_kneser(6, 2);
    const auto r = find_edge_gadget(h, 7);
    ASSERT_EQ(r.status, GadgetStatus::Found);
    EXPECT_EQ(r.gadget->family, "enumerated");
    EXPECT_EQ(r.gadget->f.edges(), k62_gadget_graph().edges());
    EXPECT_EQ(r.gadget->a, 0);
    EXPECT_EQ(r.gadget->b, 1);
}

TEST(EdgeGadget, NotFoundIsReportedAsInconclusive)
{
    // C_9 needs a path on 8 vertices; with a ceiling of 5 and no pinned copy the search gives up
    const auto r = find_edge_gadget(make_cycle(9), 5, default_ceilings(), false);
    EXPECT_EQ(r.status, GadgetStatus::NotFoundWithinCeiling);
    EXPECT_FALSE(r.gadget);
    EXPECT_EQ(to_string(r.status), "not-found-within-ceiling");
    EXPECT_THROW(find_edge_gadget(make_edgeless(3), 5), InvalidArgument);
}

TEST(ListReduction, FullListsAddNothing)
{
    const Graph h = make_cycle(5);
    const auto gadget = make_edge_gadget(h, make_path(4), 0, 3, "path");
    const Graph g = make_cycle(7);
    ListAssignment full(7, VertexSet{0, 1, 2, 3, 4});
    const Graph out = reduce_list_to_plain(g, full, h, gadget);
    EXPECT_EQ(out.order(), 12);
    EXPECT_EQ(out.edge_count(), 12u);
    EXPECT_EQ(is_h_colorable(out, h), is_h_colorable(g, h));
    EXPECT_EQ(reduce_list_to_plain(g, ListAssignment(7), h, gadget).order(), 12);
}

TEST(ListReduction, PinnedSingleVertex)
{
    const Graph h = make_cycle(5);
    const auto gadget = make_edge_gadget(h, make_path(4), 0, 3, "path");
    for (Vertex h0 = 0; h0 < 5; ++h0) {
        const ListAssignment lists{VertexSet{h0}};
        const Graph out = reduce_list_to_plain(make_edgeless(1), lists, h, gadget);
        EXPECT_EQ(out.order(), 1 + 5 + 4 * 2);
        const auto hom = find_homomorphism(out, h);
        ASSERT_TRUE(hom);
        // the pin holds up to the automorphism the H copy is mapped by
        std::vector<Vertex> copy(hom->assignment.begin() + 1, hom->assignment.begin() + 6);
        EXPECT_EQ(hom->assignment[0], copy[static_cast<std::size_t>(h0)]);
    }
    EXPECT_FALSE(is_h_colorable(reduce_list_to_plain(make_edgeless(1), ListAssignment{VertexSet{}}, h, gadget), h));
}

TEST(ListReduction, RandomInstancesAgreeWithListOracle)
{
    const Graph h = make_cycle(5);
    const auto gadget = make_edge_gadget(h, make_path(4), 0, 3, "path");
    Rng rng(41);
    int colourable = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 6));
        const Graph g = random_graph(n, 1, 3, rng);
        const auto lists = random_lists(n, 5, rng);
        const bool expect = find_list_homomorphism(g, h, lists).has_value();
        colourable += expect;
        const Graph out = reduce_list_to_plain(g, lists, h, gadget);
        EXPECT_LE(out.size(), g.size() + 5 + 2 * g.size() * 5);
        ASSERT_EQ(is_h_colorable(out, h), expect) << "trial " << trial;
    }
    EXPECT_GT(colourable, 0);
    EXPECT_LT(colourable, 30);
}

TEST(ListReduction, RejectsBadLists)
{
    const Graph h = make_cycle(5);
    const auto gadget = make_edge_gadget(h, make_path(4), 0, 3, "path");
    EXPECT_THROW(reduce_list_to_plain(make_path(2), ListAssignment(1), h, gadget), InvalidArgument);
    EXPECT_THROW(reduce_list_to_plain(make_path(2), ListAssignment{VertexSet{7}, std::nullopt}, h, gadget), InvalidArgument);
}

TEST(TightWitnessSet, Examples)
{
    EXPECT_EQ(find_tight_witness_set(make_complete(4)), (VertexSet{0, 1, 2, 3}));
    EXPECT_EQ(find_tight_witness_set(make_cycle(6)), (VertexSet{0, 2, 4}));
    const Graph k62 = make_kneser(6, 2);
    const auto t = find_tight_witness_set(k62);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_TRUE(is_critical_set(k62, t));
    for (Vertex v : t)
        EXPECT_EQ(k62.label(v).rfind("{1,", 0), 0u) << k62.label(v);
}

TEST(Dimacs, ParseAndWrite)
{
    std::istringstream in("c comment\np cnf 3 2\n1 -2 3 0\n-1\n2 0\n");
    const auto f = parse_dimacs(in);
    EXPECT_EQ(f.n_vars, 3);
    EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1, -2, 3}, {-1, 2}}));
    std::ostringstream out;
    write_dimacs(out, f);
    EXPECT_EQ(out.str(), "p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
    std::istringstream again(out.str());
    EXPECT_EQ(parse_dimacs(again), f);

    for (const char* bad : {"1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 2\n1 2 0\n", "p cnf 2 1\n1 2\n", "p cnf 2 1\n1 x 0\n", "p dnf 2 1\n1 0\n"}) {
        std::istringstream b(bad);
        EXPECT_THROW(parse_dimacs(b), InvalidArgument) << bad;
    }
    EXPECT_THROW((CnfFormula{2, {{1, 2}}}.validate(3)), InvalidArgument);
}

TEST(NaeSat, Examples)
{
    EXPECT_FALSE(nae_sat_brute(CnfFormula{1, {{1, 1, 1, 1}}}));
    EXPECT_TRUE(nae_sat_brute(CnfFormula{3, {{1, -1, 2, 3}}}));
    EXPECT_TRUE(nae_sat_brute(CnfFormula{0, {}}));
    EXPECT_THROW(nae_sat_brute(CnfFormula{25, {}}), CeilingExceeded);
}

TEST(NaeReduction, ClosedFormOnSmallExample)
{
    const Graph k4 = make_complete(4);
    const auto gadget = make_edge_gadget(k4, make_path(2), 0, 1, "edge");
    const CnfFormula phi{2, {{1, 2, -1, -2}}};
    const auto r = reduce_naesat_to_hcol(phi, k4, find_tight_witness_set(k4), gadget);
    EXPECT_EQ(r.instance.k(), 20u);
    EXPECT_EQ(r.x_formula, 20u);
    EXPECT_EQ(r.gadget_copies, 2u * 4 * 3 * 2);
    EXPECT_EQ(r.instance.graph.order(), 21);
    EXPECT_EQ(r.t_base, 4);
    EXPECT_EQ(r.clause_base, 20);
    // clause vertex wiring: t_{1,1}, t_{2,2}, f_{1,3}, f_{2,4}
    const Vertex c = r.clause_base;
    EXPECT_TRUE(r.instance.graph.adjacent(c, r.t_base + 0));
    EXPECT_TRUE(r.instance.graph.adjacent(c, r.t_base + 2 * (4 + 1)));
    EXPECT_TRUE(r.instance.graph.adjacent(c, r.t_base + 2 * 2 + 1));
    EXPECT_TRUE(r.instance.graph.adjacent(c, r.t_base + 2 * (4 + 3) + 1));
    EXPECT_EQ(r.instance.graph.degree(c), 4);
    EXPECT_TRUE(is_h_colorable(r.instance.graph, k4));
}

TEST(NaeReduction, AllSameSignClauseIsNotColourable)
{
    const Graph k4 = make_complete(4);
    const auto gadget = make_edge_gadget(k4, make_path(2), 0, 1, "edge");
    const CnfFormula phi{1, {{1, 1, 1, 1}}};
    ASSERT_FALSE(nae_sat_brute(phi));
    const auto r = reduce_naesat_to_hcol(phi, k4, find_tight_witness_set(k4), gadget);
    EXPECT_FALSE(is_h_colorable(r.instance.graph, k4));
}

TEST(NaeReduction, Preconditions)
{
    const Graph k4 = make_complete(4);
    const auto gadget = make_edge_gadget(k4, make_path(2), 0, 1, "edge");
    const auto t = find_tight_witness_set(k4);
    EXPECT_THROW(reduce_naesat_to_hcol(CnfFormula{2, {{1, 2, 1}}}, k4, t, gadget), InvalidArgument);     // width
    EXPECT_THROW(reduce_naesat_to_hcol(CnfFormula{2, {{1, 2, 1}}}, k4, VertexSet{0, 1, 2}, gadget), InvalidArgument); // not tight
    EXPECT_THROW(reduce_naesat_to_hcol(CnfFormula{1, {{1, 1}}}, make_complete(2), VertexSet{0, 1},
                     make_edge_gadget(make_complete(2), make_path(2), 0, 1, "edge")),
        InvalidArgument); // q < 3
}

TEST(NaeReduction, WidthThreeOnTriangle)
{
    const Graph k3 = make_complete(3);
    const auto gadget = make_edge_gadget(k3, make_path(2), 0, 1, "edge");
    const auto t = find_tight_witness_set(k3);
    Rng rng(8);
    for (int trial = 0; trial < 15; ++trial) {
        const auto phi = random_cnf(1 + static_cast<int>(uniform_below(rng, 3)), 1 + static_cast<int>(uniform_below(rng, 5)), 3, rng);
        const auto r = reduce_naesat_to_hcol(phi, k3, t, gadget);
        ASSERT_EQ(is_h_colorable(r.instance.graph, k3), nae_sat_brute(phi)) << "trial " << trial;
    }
}

TEST(NaeReduction, RandomFormulasAgree)
{
    const Graph k62 = make_kneser(6, 2);
    const std::vector<std::tuple<Graph, EdgeGadget, int>> cases{
        {make_complete(4), make_edge_gadget(make_complete(4), make_path(2), 0, 1, "edge"), 20},
        {k62, make_edge_gadget(k62, k62_gadget_graph(), 0, 1, "enumerated"), 10},
    };
    Rng rng(1);
    for (const auto& [h, gadget, trials] : cases) {
        const auto t = find_tight_witness_set(h);
        int sat = 0;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 1 + static_cast<int>(uniform_below(rng, 3));
            const auto phi = random_cnf(n, 1 + static_cast<int>(uniform_below(rng, 6)), 4, rng);
            const auto r = reduce_naesat_to_hcol(phi, h, t, gadget);
            const bool expect = nae_sat_brute(phi);
            sat += expect;
            ASSERT_EQ(is_h_colorable(r.instance.graph, h), expect) << "trial " << trial;
            const std::uint64_t vh = h.size(), vf = gadget.f.size(), q = 4, nn = static_cast<std::uint64_t>(n);
            EXPECT_EQ(r.instance.k(), vh + 2 * q * nn + 2 * q * (vh - 1) * nn * (vf - 2));
            EXPECT_TRUE(is_vertex_cover(r.instance.graph, r.instance.cover));
        }
        EXPECT_LT(sat, trials);
    }
}

TEST(CoreNumbers, Examples)
{
    EXPECT_EQ(core_numbers(make_complete(4)), (std::vector<int>(4, 3)));
    EXPECT_EQ(core_numbers(make_path(3)), (std::vector<int>{1, 1, 1}));
    // triangle with a pendant vertex
    EXPECT_EQ(core_numbers(Graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})), (std::vector<int>{2, 2, 2, 1}));
    EXPECT_EQ(core_numbers(make_edgeless(2)), (std::vector<int>{0, 0}));
}
