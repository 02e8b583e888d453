#pragma once

// Reduction gadgets: singular matrices in a matrix space, the dimension-2
// isotropic gadget built from vertical slices, and the Baer matrix group of
// an alternating tuple with brute-force subgroup checks.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "altiso/altspace.hpp"
#include "altiso/bipartite.hpp"
#include "altiso/errors.hpp"
#include "altiso/ffield.hpp"

namespace altiso {

struct SingularWitness {
    Vec coefficients;
    Matrix matrix;
};

/// A nonzero singular matrix in a square matrix space, scanning one coefficient
/// vector per projective point.
inline std::optional<SingularWitness> singular_exists_brute(const MatrixSpace& b, const Guard& guard = {}) {
    if (b.s() != b.t()) throw std::invalid_argument("singular_exists_brute: matrix space must be square");
    guard.require(projective_point_count(b.field(), b.dim()), "singular_exists_brute");
    std::optional<SingularWitness> out;
    for_each_projective_point(b.field(), b.dim(), [&](const Vec& c) {
        Matrix m(b.field(), b.s(), b.t());
        for (std::size_t k = 0; k < c.size(); ++k)
            if (c[k]) m = m + b.basis()[k].scaled(c[k]);
        if (rank(m) < b.s()) {
            out = SingularWitness{c, std::move(m)};
            return false;
        }
        return true;
    });
    return out;
}

/// B'_j = [B_1 e_j, ..., B_m e_j] for a tuple of m matrices of shape n x n.
inline std::vector<Matrix> vertical_slices(const std::vector<Matrix>& tuple) {
    if (tuple.empty()) throw std::invalid_argument("vertical_slices: empty tuple");
    const std::size_t n = tuple.front().rows(), m = tuple.size();
    const PrimeField f = tuple.front().field();
    for (const auto& b : tuple)
        if (b.rows() != n || b.cols() != n || b.field() != f) throw std::invalid_argument("vertical_slices: shape mismatch");
    std::vector<Matrix> out;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix s(f, n, m);
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < n; ++i) s.set(i, k, tuple[k](i, j));
        out.push_back(std::move(s));
    }
    return out;
}

namespace detail {

inline void require_slices(const std::vector<Matrix>& bprime) {
    if (bprime.empty()) throw std::invalid_argument("slice tuple must be nonempty");
    const std::size_t n = bprime.size(), m = bprime.front().cols();
    for (const auto& b : bprime)
        if (b.rows() != n || b.cols() != m || b.field() != bprime.front().field())
            throw std::invalid_argument("shape mismatch: expected n matrices of shape n x m");
}

}  // namespace detail

/// Span of A_i = [[0, B'_i], [-B'_i^t, 0]], C_{i,j} on the first n coordinates
/// and D_{k,l} on the last m, in F^(n+m).
inline AltSpace dim2_gadget(const std::vector<Matrix>& bprime) {
    detail::require_slices(bprime);
    const std::size_t n = bprime.size(), m = bprime.front().cols();
    const PrimeField f = bprime.front().field();
    std::vector<Matrix> gens;
    for (const auto& b : bprime) {
        Matrix a(f, n + m, n + m);
        a.set_block(0, n, b);
        a.set_block(n, 0, b.transpose().scaled(f.neg(1)));
        gens.push_back(std::move(a));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) gens.push_back(Matrix::unit_alternating(f, n + m, i, j));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) gens.push_back(Matrix::unit_alternating(f, n + m, n + k, n + l));
    return AltSpace::span_of(f, n + m, gens);
}

/// min over nonzero v in F^m of rank [B'_1 v, ..., B'_n v].
inline std::size_t right_degree_min(const std::vector<Matrix>& bprime, const Guard& guard = {}) {
    detail::require_slices(bprime);
    const std::size_t n = bprime.size(), m = bprime.front().cols();
    const PrimeField f = bprime.front().field();
    guard.require(projective_point_count(f, m), "right_degree_min");
    std::size_t best = n;
    for_each_projective_point(f, m, [&](const Vec& v) {
        Matrix cols(f, n, n);
        for (std::size_t j = 0; j < n; ++j) {
            Vec c = bprime[j].apply(v);
            for (std::size_t i = 0; i < n; ++i) cols.set(i, j, c[i]);
        }
        best = std::min(best, rank(cols));
        return best > 0;
    });
    return best;
}

// ---------------------------------------------------------------------------
// Baer groups

/// B~_i = [[1, e_i^t, 0], [0, I_n, B_i], [0, 0, I_m]] with B_i = [A_1 e_i, ..., A_m e_i],
/// then C~_j = [[1, 0, e_j^t], [0, I_n, 0], [0, 0, I_m]]; all in GL(1+n+m, p).
inline std::vector<Matrix> baer_generators(const AltSpace& space) {
    const PrimeField f = space.field();
    if (f.p() == 2) throw std::invalid_argument("baer_generators: p must be odd");
    const std::size_t n = space.n(), m = space.dim(), k = 1 + n + m;
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix g = Matrix::identity(f, k);
        g.set(0, 1 + i, 1);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t r = 0; r < n; ++r) g.set(1 + r, 1 + n + j, space[j](r, i));
        out.push_back(std::move(g));
    }
    for (std::size_t j = 0; j < m; ++j) {
        Matrix g = Matrix::identity(f, k);
        g.set(0, 1 + n + j, 1);
        out.push_back(std::move(g));
    }
    return out;
}

/// Explicit finite matrix group with a full multiplication table.
class MatrixGroupClosure {
public:
    MatrixGroupClosure(const std::vector<Matrix>& generators, const Guard& guard = {}) {
        if (generators.empty()) throw std::invalid_argument("group_closure: no generators");
        const PrimeField f = generators.front().field();
        const std::size_t k = generators.front().rows();
        for (const auto& g : generators)
            if (!g.is_square() || g.rows() != k || g.field() != f || !inverse(g))
                throw std::invalid_argument("group_closure: generators must be invertible k x k matrices");
        Budget budget(guard, "group_closure");
        add(Matrix::identity(f, k));
        for (std::size_t i = 0; i < elements_.size(); ++i)
            for (const auto& g : generators) {
                budget.spend();
                add(elements_[i] * g);
            }
        const std::size_t order = elements_.size();
        // the table is |G|^2 products
        guard.require(static_cast<long double>(order) * order, "group_closure");
        table_.assign(order * order, 0);
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t b = 0; b < order; ++b) {
                auto it = index_.find((elements_[a] * elements_[b]).data());
                if (it == index_.end()) throw VerificationError("group_closure: product escaped the closure");
                table_[a * order + b] = it->second;
            }
        inv_.assign(order, 0);
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t b = 0; b < order; ++b)
                if (mul(a, b) == 0) inv_[a] = b;
    }

    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<Matrix>& elements() const noexcept { return elements_; }
    /// Index 0 is the identity.
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
    std::size_t inv(std::size_t a) const { return inv_[a]; }
    std::size_t commutator(std::size_t a, std::size_t b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

    bool is_abelian() const {
        for (std::size_t a = 0; a < order(); ++a)
            for (std::size_t b = a + 1; b < order(); ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    /// Subgroup generated by the given elements, as sorted indices.
    std::vector<std::size_t> generated(const std::vector<std::size_t>& gens) const {
        std::vector<char> in(order(), 0);
        std::vector<std::size_t> out{0};
        in[0] = 1;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (auto g : gens) {
                std::size_t x = mul(out[i], g);
                if (!in[x]) {
                    in[x] = 1;
                    out.push_back(x);
                }
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::size_t> commutator_subgroup() const {
        std::set<std::size_t> comms;
        for (std::size_t a = 0; a < order(); ++a)
            for (std::size_t b = 0; b < order(); ++b) comms.insert(commutator(a, b));
        return generated({comms.begin(), comms.end()});
    }

    /// Orders of all abelian subgroups, found by growing H to H<g> for g
    /// centralizing H; every abelian subgroup arises this way.
    std::set<std::size_t> abelian_subgroup_orders(const Guard& guard = {}) const {
        Budget budget(guard, "abelian_subgroup_orders");
        const std::size_t words = (order() + 63) / 64;
        using Bits = std::vector<std::uint64_t>;
        struct BitsHash {
            std::size_t operator()(const Bits& b) const noexcept {
                std::size_t h = 1469598103934665603ull;
                for (auto w : b) h = (h ^ w) * 1099511628211ull;
                return h;
            }
        };
        auto has = [](const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; };
        std::unordered_set<Bits, BitsHash> seen;
        std::vector<Bits> queue;
        Bits trivial(words, 0);
        trivial[0] = 1;
        seen.insert(trivial);
        queue.push_back(trivial);
        std::set<std::size_t> orders;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const Bits h = queue[qi];
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < order(); ++i)
                if (has(h, i)) members.push_back(i);
            orders.insert(members.size());
            for (std::size_t g = 0; g < order(); ++g) {
                if (has(h, g)) continue;
                bool central = std::all_of(members.begin(), members.end(),
                                           [&](std::size_t x) { return mul(x, g) == mul(g, x); });
                if (!central) continue;
                budget.spend();
                Bits next = h;
                for (std::size_t x : members)
                    for (std::size_t y = mul(x, g); !has(next, y); y = mul(y, g)) next[y / 64] |= std::uint64_t{1} << (y % 64);
                if (seen.insert(next).second) queue.push_back(std::move(next));
            }
        }
        return orders;
    }

private:
    void add(const Matrix& m) {
        if (index_.emplace(m.data(), elements_.size()).second) elements_.push_back(m);
    }

    struct VecHash {
        std::size_t operator()(const Vec& v) const noexcept {
            std::size_t h = 1469598103934665603ull;
            for (auto x : v) h = (h ^ x) * 1099511628211ull;
            return h;
        }
    };

    std::vector<Matrix> elements_;
    std::unordered_map<Vec, std::size_t, VecHash> index_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inv_;
};

inline MatrixGroupClosure group_closure(const std::vector<Matrix>& generators, const Guard& guard = {}) {
    return MatrixGroupClosure(generators, guard);
}

inline std::size_t max_abelian_order_brute(const MatrixGroupClosure& g, const Guard& guard = {}) {
    return *g.abelian_subgroup_orders(guard).rbegin();
}

}  // namespace altiso
