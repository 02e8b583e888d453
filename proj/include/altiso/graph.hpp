#pragma once

// Graphs, the map G -> A_G = span{e_i e_j^t - e_j e_i^t : {i,j} in E}, and the
// constructive way back: isotropic spaces of A_G give independent sets, and
// isotropic decompositions give colorings. Vertices are 0-based here and
// 1-based in files.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "altiso/altspace.hpp"
#include "altiso/decomposition.hpp"
#include "altiso/errors.hpp"

namespace altiso {

using Edge = std::pair<std::size_t, std::size_t>;
using VertexSet = std::vector<std::size_t>;

class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n, std::vector<Edge> edges = {}) : n_(n) {
        if (n > 64) throw std::invalid_argument("graphs are limited to 64 vertices");
        adj_.assign(n, 0);
        for (auto [a, b] : edges) {
            if (a == b) throw std::invalid_argument("graph has a loop at vertex " + std::to_string(a + 1));
            if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
            if (a > b) std::swap(a, b);
            if (adj_[a] >> b & 1u) throw std::invalid_argument("duplicate edge");
            adj_[a] |= std::uint64_t{1} << b;
            adj_[b] |= std::uint64_t{1} << a;
            edges_.emplace_back(a, b);
        }
        std::sort(edges_.begin(), edges_.end());
    }

    static Graph empty(std::size_t n) { return Graph(n); }
    static Graph complete(std::size_t n) {
        std::vector<Edge> e;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
        return Graph(n, e);
    }
    static Graph path(std::size_t n) {
        std::vector<Edge> e;
        for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        return Graph(n, e);
    }
    static Graph cycle(std::size_t n) {
        if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
        std::vector<Edge> e;
        for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        e.emplace_back(0, n - 1);
        return Graph(n, e);
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    bool has_edge(std::size_t a, std::size_t b) const { return a < n_ && b < n_ && (adj_[a] >> b & 1u); }
    std::uint64_t neighbours(std::size_t v) const { return adj_[v]; }
    std::size_t degree(std::size_t v) const { return static_cast<std::size_t>(__builtin_popcountll(adj_[v])); }

    bool is_independent(const VertexSet& s) const {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (has_edge(s[i], s[j])) return false;
        return true;
    }

    bool is_connected() const {
        if (n_ == 0) return true;
        std::uint64_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::size_t v = 0; v < n_; ++v)
                if (frontier >> v & 1u) next |= adj_[v];
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == all_mask();
    }

    /// Relabels vertex i as perm[i].
    Graph relabel(const std::vector<std::size_t>& perm) const {
        std::vector<Edge> e;
        for (auto [a, b] : edges_) e.emplace_back(perm[a], perm[b]);
        return Graph(n_, e);
    }

    std::uint64_t all_mask() const noexcept { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> adj_;
};

// ---------------------------------------------------------------------------
// Bridge

inline AltSpace space_from_graph(const Graph& g, PrimeField f) {
    std::vector<Matrix> basis;
    basis.reserve(g.edges().size());
    for (auto [i, j] : g.edges()) basis.push_back(Matrix::unit_alternating(f, g.n(), i, j));
    return AltSpace(f, g.n(), std::move(basis));
}

/// Rows i_1 < ... < i_s of the n x s matrix [u_1 ... u_s] that are linearly
/// independent: exactly the pivot columns of U's RREF basis.
inline VertexSet independent_set_from_isotropic(const Graph& g, const Subspace& u) {
    if (u.ambient() != g.n()) throw std::invalid_argument("subspace ambient differs from vertex count");
    if (!is_isotropic(space_from_graph(g, u.field()), u)) throw std::invalid_argument("not isotropic");
    VertexSet s(u.pivots().begin(), u.pivots().end());
    if (!g.is_independent(s)) throw VerificationError("recovered vertex set is not independent");
    return s;
}

/// A partition [n] = T_1 ⊎ ... ⊎ T_c with |T_i| = dim U_i and the rows T_i of
/// the basis matrix of U_i of full rank; each T_i is then independent in g.
inline std::vector<VertexSet> coloring_from_decomposition(const Graph& g, const std::vector<Subspace>& parts,
                                                          const Guard& guard = {}) {
    if (parts.empty()) throw std::invalid_argument("not a decomposition: no parts");
    const PrimeField f = parts.front().field();
    AltSpace a = space_from_graph(g, f);
    if (auto defect = check_decomposition(a, parts); defect != DecompositionDefect::None)
        throw std::invalid_argument(std::string("not a decomposition: ") + to_string(defect));

    const std::size_t n = g.n(), c = parts.size();
    // column j of part i's basis matrix: the vector w_{i,j} in F^{d_i}
    std::vector<std::vector<Vec>> w(c, std::vector<Vec>(n));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i][j] = parts[i].basis().col(j);

    std::vector<Subspace> spans;
    for (const auto& u : parts) spans.push_back(Subspace::zero(f, u.dim()));
    std::vector<VertexSet> blocks(c);
    Budget budget(guard, "coloring_from_decomposition");

    auto search = [&](auto& self, std::size_t row) -> bool {
        budget.spend();
        if (row == n) return true;
        for (std::size_t i = 0; i < c; ++i) {
            if (blocks[i].size() == parts[i].dim()) continue;
            if (spans[i].contains(w[i][row])) continue;
            Subspace saved = spans[i];
            spans[i] = spans[i].with(w[i][row]);
            blocks[i].push_back(row);
            if (self(self, row + 1)) return true;
            blocks[i].pop_back();
            spans[i] = std::move(saved);
        }
        return false;
    };
    if (!search(search, 0)) throw VerificationError("no full-rank row partition found");
    for (const auto& b : blocks)
        if (!g.is_independent(b)) throw VerificationError("recovered color class is not independent");
    return blocks;
}

// ---------------------------------------------------------------------------
// Graph-side oracles

struct IndependentSetResult {
    std::size_t size = 0;
    VertexSet witness;
};

inline IndependentSetResult graph_alpha_brute(const Graph& g, const Guard& guard = {}) {
    Budget budget(guard, "graph_alpha_brute");
    std::uint64_t best_set = 0;
    std::size_t best = 0;
    auto rec = [&](auto& self, std::uint64_t cand, std::uint64_t chosen, std::size_t size) -> void {
        budget.spend();
        if (cand == 0) {
            if (size > best) {
                best = size;
                best_set = chosen;
            }
            return;
        }
        if (size + static_cast<std::size_t>(__builtin_popcountll(cand)) <= best) return;
        std::size_t v = static_cast<std::size_t>(__builtin_ctzll(cand));
        std::uint64_t nb = g.neighbours(v) & cand;
        // take v
        self(self, cand & ~nb & ~(std::uint64_t{1} << v), chosen | (std::uint64_t{1} << v), size + 1);
        // some maximum set avoids v only if it meets N(v); skip when v is isolated in cand
        if (nb) self(self, cand & ~(std::uint64_t{1} << v), chosen, size);
    };
    rec(rec, g.all_mask(), 0, 0);
    IndependentSetResult r{best, {}};
    for (std::size_t v = 0; v < g.n(); ++v)
        if (best_set >> v & 1u) r.witness.push_back(v);
    return r;
}

struct ColoringResult {
    std::size_t colors = 0;
    std::vector<std::size_t> color;  ///< color of each vertex
};

/// Exact chromatic number by iterative deepening over k with backtracking
/// (a new color only ever opens as max-used + 1).
inline ColoringResult graph_chi_brute(const Graph& g, const Guard& guard = {}) {
    const std::size_t n = g.n();
    if (n == 0) return {0, {}};
    Budget budget(guard, "graph_chi_brute");
    // vertices by decreasing degree
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return g.degree(a) > g.degree(b); });
    std::vector<std::size_t> color(n, SIZE_MAX);
    for (std::size_t k = 1; k <= n; ++k) {
        auto rec = [&](auto& self, std::size_t idx, std::size_t used) -> bool {
            budget.spend();
            if (idx == n) return true;
            std::size_t v = order[idx];
            for (std::size_t c = 0; c < std::min(k, used + 1); ++c) {
                bool ok = true;
                for (std::size_t u = 0; u < n && ok; ++u)
                    if (color[u] == c && g.has_edge(u, v)) ok = false;
                if (!ok) continue;
                color[v] = c;
                if (self(self, idx + 1, std::max(used, c + 1))) return true;
                color[v] = SIZE_MAX;
            }
            return false;
        };
        std::fill(color.begin(), color.end(), SIZE_MAX);
        if (rec(rec, 0, 0)) return {k, color};
    }
    throw VerificationError("graph_chi_brute: no coloring found");
}

struct Bipartition {
    bool bipartite = true;
    std::vector<int> side;       ///< 0/1 per vertex when bipartite
    VertexSet odd_cycle;         ///< simple cycle v_0 ... v_{2k} (v_{2k} adjacent to v_0), when not
};

inline Bipartition is_bipartite_bfs(const Graph& g) {
    const std::size_t n = g.n();
    Bipartition r;
    r.side.assign(n, -1);
    std::vector<std::size_t> parent(n, SIZE_MAX), depth(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (r.side[s] != -1) continue;
        r.side[s] = 0;
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop_front();
            for (std::size_t v = 0; v < n; ++v) {
                if (!g.has_edge(u, v)) continue;
                if (r.side[v] == -1) {
                    r.side[v] = 1 - r.side[u];
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    q.push_back(v);
                } else if (r.side[v] == r.side[u]) {
                    // climb to the lowest common ancestor
                    VertexSet left{u}, right{v};
                    std::size_t a = u, b = v;
                    while (a != b) {
                        if (depth[a] >= depth[b]) {
                            a = parent[a];
                            left.push_back(a);
                        } else {
                            b = parent[b];
                            right.push_back(b);
                        }
                    }
                    right.pop_back();
                    std::reverse(right.begin(), right.end());
                    r.bipartite = false;
                    r.odd_cycle = left;
                    r.odd_cycle.insert(r.odd_cycle.end(), right.begin(), right.end());
                    r.side.clear();
                    return r;
                }
            }
        }
    }
    return r;
}

}  // namespace altiso
