#pragma once

// Seeded instance generators. Every randomized suite draws from one
// std::mt19937_64 so a seed reproduces the whole run.

#include <random>
#include <vector>

#include "altiso/altspace.hpp"
#include "altiso/bipartite.hpp"
#include "altiso/graph.hpp"

namespace altiso {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Elem random_elem(const PrimeField& f, Rng& rng) {
    return static_cast<Elem>(std::uniform_int_distribution<unsigned>(0, f.p() - 1)(rng));
}

inline Matrix random_matrix(const PrimeField& f, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, random_elem(f, rng));
    return m;
}

inline Matrix random_alternating(const PrimeField& f, std::size_t n, Rng& rng) {
    Matrix a(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Elem x = random_elem(f, rng);
            a.set(i, j, x);
            a.set(j, i, f.neg(x));
        }
    return a;
}

/// Span of m uniformly random alternating matrices (dimension may drop below m).
inline AltSpace random_alt_space(const PrimeField& f, std::size_t n, std::size_t m, Rng& rng) {
    std::vector<Matrix> gens;
    for (std::size_t k = 0; k < m; ++k) gens.push_back(random_alternating(f, n, rng));
    return AltSpace::span_of(f, n, gens);
}

/// Span of m uniformly random s x t matrices.
inline MatrixSpace random_matrix_space(const PrimeField& f, std::size_t s, std::size_t t, std::size_t m, Rng& rng) {
    std::vector<Matrix> gens;
    for (std::size_t k = 0; k < m; ++k) gens.push_back(random_matrix(f, s, t, rng));
    return MatrixSpace::span_of(f, s, t, gens);
}

/// G(n, 1/2).
inline Graph random_graph(std::size_t n, Rng& rng, double edge_probability = 0.5) {
    std::bernoulli_distribution coin(edge_probability);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

/// G(n, p) conditioned on connectivity (rejection sampling; n >= 2).
inline Graph random_connected_graph(std::size_t n, Rng& rng, double edge_probability = 0.5) {
    for (;;) {
        Graph g = random_graph(n, rng, edge_probability);
        if (g.is_connected()) return g;
    }
}

}  // namespace altiso
