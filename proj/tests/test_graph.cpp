#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "altiso/graph.hpp"
#include "altiso/iso_exact.hpp"
#include "altiso/random.hpp"

using namespace altiso;

TEST(Graph, Factories) {
    EXPECT_EQ(Graph::complete(4).edges().size(), 6u);
    EXPECT_EQ(Graph::cycle(5).edges().size(), 5u);
    EXPECT_EQ(Graph::path(4).edges().size(), 3u);
    EXPECT_TRUE(Graph::empty(3).edges().empty());
    EXPECT_TRUE(Graph::path(4).is_connected());
    EXPECT_FALSE(Graph::empty(2).is_connected());
    EXPECT_EQ(Graph::complete(5).degree(2), 4u);
}

TEST(Graph, RejectsLoopsAndRange) {
    EXPECT_THROW(Graph(3, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
}

TEST(Graph, BruteOraclesOnKnownGraphs) {
    EXPECT_EQ(graph_alpha_brute(Graph::cycle(5)).size, 2u);
    EXPECT_EQ(graph_chi_brute(Graph::cycle(5)).colors, 3u);
    EXPECT_EQ(graph_chi_brute(Graph::cycle(6)).colors, 2u);
    EXPECT_EQ(graph_alpha_brute(Graph::complete(4)).size, 1u);
    EXPECT_EQ(graph_chi_brute(Graph::complete(4)).colors, 4u);
    EXPECT_EQ(graph_chi_brute(Graph::empty(3)).colors, 1u);
}

TEST(Graph, ColoringOracleIsProper) {
    Rng rng(31);
    for (int it = 0; it < 50; ++it) {
        Graph g = random_graph(uniform_index(rng, 1, 7), rng);
        auto c = graph_chi_brute(g);
        for (auto [u, v] : g.edges()) EXPECT_NE(c.color[u], c.color[v]);
        auto a = graph_alpha_brute(g);
        EXPECT_TRUE(g.is_independent(a.witness));
        EXPECT_EQ(a.witness.size(), a.size);
    }
}

TEST(Graph, BipartiteBfs) {
    Rng rng(32);
    for (int it = 0; it < 60; ++it) {
        Graph g = random_graph(uniform_index(rng, 1, 7), rng);
        Bipartition b = is_bipartite_bfs(g);
        EXPECT_EQ(b.bipartite, graph_chi_brute(g).colors <= 2);
        if (b.bipartite) {
            for (auto [u, v] : g.edges()) EXPECT_NE(b.side[u], b.side[v]);
        } else {
            const auto& c = b.odd_cycle;
            ASSERT_GE(c.size(), 3u);
            EXPECT_EQ(c.size() % 2, 1u);
            EXPECT_EQ(std::set<std::size_t>(c.begin(), c.end()).size(), c.size());
            for (std::size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(g.has_edge(c[i], c[(i + 1) % c.size()]));
        }
    }
}

TEST(GraphBridge, SpaceHasOneFormPerEdge) {
    PrimeField f(3);
    Graph g = Graph::cycle(4);
    AltSpace a = space_from_graph(g, f);
    EXPECT_EQ(a.dim(), 4u);
    EXPECT_EQ(a.n(), 4u);
    Subspace coord = Subspace::span(f, 4, {unit_vector(4, 0), unit_vector(4, 2)});
    EXPECT_TRUE(is_isotropic(a, coord));
    EXPECT_FALSE(is_isotropic(a, Subspace::span(f, 4, {unit_vector(4, 0), unit_vector(4, 1)})));
}

TEST(GraphBridge, IndependentSetsAreCoordinateIsotropicSpaces) {
    Rng rng(33);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int it = 0; it < 30; ++it) {
            Graph g = random_graph(uniform_index(rng, 1, 6), rng);
            AltSpace a = space_from_graph(g, f);
            for (std::uint64_t mask = 0; mask <= g.all_mask(); ++mask) {
                VertexSet s;
                std::vector<Vec> vs;
                for (std::size_t v = 0; v < g.n(); ++v)
                    if ((mask >> v) & 1u) {
                        s.push_back(v);
                        vs.push_back(unit_vector(g.n(), v));
                    }
                EXPECT_EQ(is_isotropic(a, Subspace::span(f, g.n(), vs)), g.is_independent(s));
            }
        }
    }
}

TEST(GraphBridge, WitnessRecovery) {
    Rng rng(34);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int it = 0; it < 40; ++it) {
            Graph g = random_graph(uniform_index(rng, 1, 6), rng);
            AltSpace a = space_from_graph(g, f);
            AlphaResult al = alpha_exact(a);
            VertexSet s = independent_set_from_isotropic(g, al.witness);
            EXPECT_EQ(s.size(), al.alpha);
            EXPECT_TRUE(g.is_independent(s));
            ChiResult ch = chi_maxcover(a);
            auto classes = coloring_from_decomposition(g, ch.certificate.parts);
            EXPECT_EQ(classes.size(), ch.chi);
            std::vector<int> seen(g.n(), 0);
            for (const auto& c : classes) {
                EXPECT_TRUE(g.is_independent(c));
                for (auto v : c) ++seen[v];
            }
            for (int x : seen) EXPECT_EQ(x, 1);
        }
    }
}

TEST(GraphBridge, RecoveryRejectsBadInput) {
    PrimeField f(2);
    Graph g = Graph::complete(2);
    EXPECT_THROW(independent_set_from_isotropic(g, Subspace::full(f, 2)), std::invalid_argument);
    EXPECT_THROW(coloring_from_decomposition(g, {Subspace::full(f, 2)}), std::invalid_argument);
}

TEST(GraphBridge, RelabelingPreservesInvariants) {
    Rng rng(35);
    PrimeField f(3);
    for (int it = 0; it < 20; ++it) {
        Graph g = random_graph(uniform_index(rng, 2, 6), rng);
        std::vector<std::size_t> perm(g.n());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h = g.relabel(perm);
        EXPECT_EQ(alpha_exact(space_from_graph(g, f)).alpha, alpha_exact(space_from_graph(h, f)).alpha);
        EXPECT_EQ(chi_maxcover(space_from_graph(g, f)).chi, chi_maxcover(space_from_graph(h, f)).chi);
    }
}
