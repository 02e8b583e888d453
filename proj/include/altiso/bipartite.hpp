#pragma once

// Bipartite alternating spaces and rectangular matrix spaces B <= M(s x t, F):
// brute-force non-commutative rank, the square padding, α = n - ncrk, and
// isotropic 2-decompositions through hyperbolic idempotents of the adjoint
// algebra.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "altiso/altspace.hpp"
#include "altiso/decomposition.hpp"
#include "altiso/errors.hpp"
#include "altiso/ffield.hpp"

namespace altiso {

class MatrixSpace {
public:
    MatrixSpace() = default;
    MatrixSpace(PrimeField f, std::size_t s, std::size_t t) : field_(f), s_(s), t_(t) {}

    /// Takes an ordered basis as given; throws unless shapes agree and the list is independent.
    MatrixSpace(PrimeField f, std::size_t s, std::size_t t, std::vector<Matrix> basis)
        : field_(f), s_(s), t_(t), basis_(std::move(basis)) {
        std::vector<Vec> rows;
        for (const auto& b : basis_) {
            if (b.rows() != s || b.cols() != t || b.field() != f)
                throw std::invalid_argument("matrix space: basis matrix has wrong shape or field");
            rows.push_back(b.data());
        }
        if (!rows.empty() && s * t > 0 && rank(Matrix::from_vectors(f, s * t, rows)) < rows.size())
            throw std::invalid_argument("matrix space: dependent basis");
        if (!rows.empty() && s * t == 0) throw std::invalid_argument("matrix space: dependent basis");
    }

    /// Span of arbitrary generators, basis in RREF of the row-major entries.
    static MatrixSpace span_of(PrimeField f, std::size_t s, std::size_t t, const std::vector<Matrix>& gens) {
        MatrixSpace out(f, s, t);
        if (s * t == 0) return out;
        std::vector<Vec> rows;
        for (const auto& g : gens) {
            if (g.rows() != s || g.cols() != t || g.field() != f)
                throw std::invalid_argument("matrix space: generator has wrong shape or field");
            rows.push_back(g.data());
        }
        Subspace sp = Subspace::span(f, s * t, rows);
        for (std::size_t r = 0; r < sp.dim(); ++r) {
            Matrix m(f, s, t);
            Vec v = sp.basis_vector(r);
            for (std::size_t k = 0; k < v.size(); ++k) m.set(k / t, k % t, v[k]);
            out.basis_.push_back(std::move(m));
        }
        return out;
    }

    const PrimeField& field() const noexcept { return field_; }
    std::size_t s() const noexcept { return s_; }
    std::size_t t() const noexcept { return t_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Matrix>& basis() const noexcept { return basis_; }

private:
    PrimeField field_{2};
    std::size_t s_ = 0, t_ = 0;
    std::vector<Matrix> basis_;
};

/// The alternating space of all [[0, B], [-B^t, 0]], B in b.
inline AltSpace bipartite_space(const MatrixSpace& b) {
    const PrimeField f = b.field();
    const std::size_t s = b.s(), n = b.s() + b.t();
    std::vector<Matrix> out;
    for (const auto& m : b.basis()) {
        Matrix a(f, n, n);
        a.set_block(0, s, m);
        Matrix neg_t = m.transpose().scaled(f.neg(1));
        a.set_block(s, 0, neg_t);
        out.push_back(std::move(a));
    }
    return AltSpace(f, n, std::move(out));
}

namespace detail {

inline void require_two_decomposition(const AltSpace& space, const Subspace& u1, const Subspace& u2) {
    if (u1.ambient() != space.n() || u2.ambient() != space.n() || u1.field() != space.field() ||
        u2.field() != space.field() || u1.dim() + u2.dim() != space.n() || !(u1 + u2).is_full() ||
        !is_isotropic(space, u1) || !is_isotropic(space, u2))
        throw std::invalid_argument("not an isotropic 2-decomposition");
}

/// Columns: basis of u1, then basis of u2.
inline Matrix aligning_transform(const Subspace& u1, const Subspace& u2) {
    return Matrix::vstack(u1.basis(), u2.basis()).transpose();
}

}  // namespace detail

/// B <= M(s x t) with s = dim u1, t = dim u2, read from T^t A T where T maps
/// the coordinate splitting onto (u1, u2). Zero parts are allowed.
inline MatrixSpace block_space_from_bipartite(const AltSpace& space, const Subspace& u1, const Subspace& u2) {
    detail::require_two_decomposition(space, u1, u2);
    const std::size_t s = u1.dim(), t = u2.dim();
    const Matrix tr = detail::aligning_transform(u1, u2);
    const Matrix trt = tr.transpose();
    std::vector<Matrix> blocks;
    for (const auto& a : space.basis()) blocks.push_back((trt * a * tr).block(0, s, s, t));
    return MatrixSpace(space.field(), s, t, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Non-commutative rank

struct IsotropicPair {
    Subspace u;  ///< <= F^s
    Subspace v;  ///< <= F^t
};

struct NcrkResult {
    std::size_t ncrk = 0;
    IsotropicPair pair;  ///< attains s + t - ncrk
};

/// Largest U paired with a given V: the common left kernel of {B v}.
inline Subspace left_kernel(const MatrixSpace& b, const Subspace& v) {
    std::vector<Vec> rows;
    for (const auto& m : b.basis())
        for (std::size_t j = 0; j < v.dim(); ++j) rows.push_back(m.apply(v.basis_vector(j)));
    return kernel(Matrix::from_vectors(b.field(), b.s(), rows));
}

inline bool is_isotropic_pair(const MatrixSpace& b, const Subspace& u, const Subspace& v) {
    for (const auto& m : b.basis())
        for (std::size_t i = 0; i < u.dim(); ++i)
            for (std::size_t j = 0; j < v.dim(); ++j)
                if (m.bilinear(u.basis_vector(i), v.basis_vector(j)) != 0) return false;
    return true;
}

inline NcrkResult ncrk_brute_pair(const MatrixSpace& b, const Guard& guard = {}) {
    const PrimeField f = b.field();
    SubspaceEnumerator e(f, b.t(), std::nullopt, guard);
    std::optional<IsotropicPair> best;
    std::size_t best_size = 0;
    while (auto v = e.next()) {
        Subspace u = left_kernel(b, *v);
        std::size_t size = u.dim() + v->dim();
        if (!best || size > best_size) {
            best_size = size;
            best = IsotropicPair{std::move(u), std::move(*v)};
        }
    }
    if (!is_isotropic_pair(b, best->u, best->v)) throw VerificationError("ncrk_brute: pair is not isotropic");
    return {b.s() + b.t() - best_size, std::move(*best)};
}

inline std::size_t ncrk_brute(const MatrixSpace& b, const Guard& guard = {}) { return ncrk_brute_pair(b, guard).ncrk; }

/// C <= M(t x t) spanned by [[0], [B]] (B placed in the bottom s rows) and E_{i,j}
/// for the top t - s rows; ncrk(C) = ncrk(B) + (t - s).
inline MatrixSpace ncrk_pad_square(const MatrixSpace& b) {
    const std::size_t s = b.s(), t = b.t();
    if (s >= t) throw std::invalid_argument("ncrk_pad_square: requires s < t");
    const PrimeField f = b.field();
    std::vector<Matrix> gens;
    for (const auto& m : b.basis()) {
        Matrix c(f, t, t);
        c.set_block(t - s, 0, m);
        gens.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < t - s; ++i)
        for (std::size_t j = 0; j < t; ++j) gens.push_back(Matrix::elementary(f, t, t, i, j));
    return MatrixSpace(f, t, t, std::move(gens));
}

// ---------------------------------------------------------------------------
// α of a bipartite space

/// α(A) = n - ncrk(B) for the space B read off the splitting (u1, u2); the
/// witness is T (U ⊕ V) for an optimal isotropic pair (U, V).
inline std::pair<std::size_t, Subspace> alpha_bipartite(const AltSpace& space, const Subspace& u1, const Subspace& u2,
                                                        const Guard& guard = {}) {
    MatrixSpace b = block_space_from_bipartite(space, u1, u2);
    NcrkResult r = ncrk_brute_pair(b, guard);
    const std::size_t s = b.s(), n = space.n();
    std::vector<Vec> aligned;
    for (std::size_t i = 0; i < r.pair.u.dim(); ++i) {
        Vec x(n, 0);
        Vec ui = r.pair.u.basis_vector(i);
        std::copy(ui.begin(), ui.end(), x.begin());
        aligned.push_back(std::move(x));
    }
    for (std::size_t j = 0; j < r.pair.v.dim(); ++j) {
        Vec x(n, 0);
        Vec vj = r.pair.v.basis_vector(j);
        std::copy(vj.begin(), vj.end(), x.begin() + static_cast<std::ptrdiff_t>(s));
        aligned.push_back(std::move(x));
    }
    const Matrix tr = detail::aligning_transform(u1, u2);
    std::vector<Vec> original;
    for (const auto& x : aligned) original.push_back(tr.apply(x));
    Subspace w = Subspace::span(space.field(), n, original);
    const std::size_t alpha = n - r.ncrk;
    if (w.dim() != alpha || !is_isotropic(space, w)) throw VerificationError("alpha_bipartite: witness failed verification");
    return {alpha, std::move(w)};
}

// ---------------------------------------------------------------------------
// Adjoint algebra

struct AdjointElement {
    Matrix d;
    Matrix b;  ///< d* : b^t A_i = A_i d for all i
};

struct AdjointAlgebra {
    std::size_t n = 0;
    std::vector<AdjointElement> basis;

    std::size_t dim() const noexcept { return basis.size(); }
};

/// Adj = {D : exists B with B^t A_i = A_i D for all i}, solved in the 2n^2
/// unknowns (D, B) (row-major, D first). Requires a nondegenerate space so B is unique.
inline AdjointAlgebra adjoint_algebra(const AltSpace& space) {
    if (!is_nondegenerate(space)) throw std::invalid_argument("adjoint_algebra: degenerate input");
    const PrimeField f = space.field();
    const std::size_t n = space.n(), nn = n * n;
    Matrix sys(f, space.dim() * nn, 2 * nn);
    std::size_t row = 0;
    for (const auto& a : space.basis())
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c, ++row) {
                // sum_k B[k][r] A[k][c] - sum_k A[r][k] D[k][c]
                for (std::size_t k = 0; k < n; ++k) {
                    sys.set(row, nn + k * n + r, f.add(sys(row, nn + k * n + r), a(k, c)));
                    sys.set(row, k * n + c, f.sub(sys(row, k * n + c), a(r, k)));
                }
            }
    Subspace sol = kernel(sys);
    AdjointAlgebra adj{n, {}};
    for (std::size_t i = 0; i < sol.dim(); ++i) {
        Vec v = sol.basis_vector(i);
        Matrix d(f, n, n), b(f, n, n);
        for (std::size_t k = 0; k < nn; ++k) {
            d.set(k / n, k % n, v[k]);
            b.set(k / n, k % n, v[nn + k]);
        }
        adj.basis.push_back({std::move(d), std::move(b)});
    }
    return adj;
}

inline bool satisfies_adjoint(const AltSpace& space, const Matrix& d, const Matrix& b) {
    const Matrix bt = b.transpose();
    for (const auto& a : space.basis())
        if (bt * a != a * d) return false;
    return true;
}

/// Element sum_k c_k (D_k, B_k).
inline AdjointElement adjoint_combination(const AdjointAlgebra& adj, const PrimeField& f, const Vec& c) {
    AdjointElement e{Matrix(f, adj.n, adj.n), Matrix(f, adj.n, adj.n)};
    for (std::size_t k = 0; k < adj.dim(); ++k) {
        if (c[k] == 0) continue;
        e.d = e.d + adj.basis[k].d.scaled(c[k]);
        e.b = e.b + adj.basis[k].b.scaled(c[k]);
    }
    return e;
}

/// D* for D in Adj: the unique B with B^t A_i = A_i D. nullopt when D is not in Adj.
inline std::optional<Matrix> star(const AltSpace& space, const Matrix& d) {
    const PrimeField f = space.field();
    const std::size_t n = space.n(), nn = n * n;
    // unknowns B (row-major); B^t A = A D entrywise
    Matrix sys(f, space.dim() * nn, nn), rhs(f, space.dim() * nn, 1);
    std::size_t row = 0;
    for (const auto& a : space.basis()) {
        const Matrix ad = a * d;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c, ++row) {
                for (std::size_t k = 0; k < n; ++k) sys.set(row, k * n + r, f.add(sys(row, k * n + r), a(k, c)));
                rhs.set(row, 0, ad(r, c));
            }
    }
    auto sol = solve_linear(sys, rhs);
    if (!sol) return std::nullopt;
    Matrix b(f, n, n);
    for (std::size_t k = 0; k < nn; ++k) b.set(k / n, k % n, sol->particular(k, 0));
    return b;
}

/// First P = sum c_k D_k (c as a base-p counter, last coefficient fastest) with
/// P^2 = P and P* = I - P.
inline std::optional<Matrix> hyperbolic_idempotent_search(const AdjointAlgebra& adj, const PrimeField& f,
                                                          const Guard& guard = {}) {
    guard.require(ipow_ld(f.p(), adj.dim()), "hyperbolic_idempotent_search");
    const Matrix id = Matrix::identity(f, adj.n);
    Vec c(adj.dim(), 0);
    for (;;) {
        AdjointElement e = adjoint_combination(adj, f, c);
        if (e.d * e.d == e.d && e.b == id - e.d) return e.d;
        std::size_t k = c.size();
        for (;;) {
            if (k == 0) return std::nullopt;
            --k;
            if (++c[k] < f.p()) break;
            c[k] = 0;
        }
    }
}

/// (im P, ker P).
inline std::pair<Subspace, Subspace> decomposition_from_idempotent(const Matrix& p) {
    if (!p.is_square() || p * p != p) throw std::invalid_argument("decomposition_from_idempotent: not idempotent");
    return {Subspace::row_space(p.transpose()), kernel(p)};
}

/// Isotropic 2-decomposition via the adjoint algebra of the nondegenerate part;
/// the radical is attached to the first part.
inline std::optional<std::pair<Subspace, Subspace>> two_decomposition_via_adjoint(const AltSpace& space,
                                                                                  const Guard& guard = {}) {
    const PrimeField f = space.field();
    const std::size_t n = space.n();
    if (n < 2) return std::nullopt;
    NondegeneratePart np = nondegenerate_part(space);
    if (np.space.n() == 0) {
        Subspace first = Subspace::span(f, n, {unit_vector(n, 0)});
        return std::make_pair(first, first.coordinate_complement());
    }
    AdjointAlgebra adj = adjoint_algebra(np.space);
    auto p = hyperbolic_idempotent_search(adj, f, guard);
    if (!p) return std::nullopt;
    auto [im, ker] = decomposition_from_idempotent(*p);
    Subspace u1 = np.complement.lift(im) + np.radical;
    Subspace u2 = np.complement.lift(ker);
    if (check_decomposition(space, {u1, u2}) != DecompositionDefect::None)
        throw VerificationError("hyperbolic idempotent did not give an isotropic 2-decomposition");
    return std::make_pair(std::move(u1), std::move(u2));
}

}  // namespace altiso
