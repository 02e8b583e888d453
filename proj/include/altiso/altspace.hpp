#pragma once

// Alternating matrix spaces A <= Λ(n, F_p) and the basic notions attached to
// them: radicals, degrees, restrictions, isometries, isotropy.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "altiso/errors.hpp"
#include "altiso/ffield.hpp"

namespace altiso {

class InvalidSpace : public std::invalid_argument {
public:
    enum class Kind { NotAlternating, DependentBasis, Shape };

    InvalidSpace(Kind kind, const std::string& what, std::size_t index = 0, std::size_t row = 0, std::size_t col = 0)
        : std::invalid_argument(what), kind_(kind), index_(index), row_(row), col_(col) {}

    Kind kind() const noexcept { return kind_; }
    /// Offending basis matrix and entry (0-based) for NotAlternating.
    std::size_t index() const noexcept { return index_; }
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    Kind kind_;
    std::size_t index_, row_, col_;
};

/// First entry violating "zero diagonal and A_ij = -A_ji", if any. In
/// characteristic 2 this reads symmetric with zero diagonal.
inline std::optional<std::pair<std::size_t, std::size_t>> alternating_violation(const Matrix& a) {
    if (!a.is_square()) return std::make_pair(std::size_t{0}, std::size_t{0});
    const PrimeField& f = a.field();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 0) return std::make_pair(i, i);
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(j, i) != f.neg(a(i, j))) return std::make_pair(j, i);
    }
    return std::nullopt;
}

inline bool is_alternating(const Matrix& a) { return !alternating_violation(a).has_value(); }

namespace detail {

inline Vec upper_triangle(const Matrix& a) {
    const std::size_t n = a.rows();
    Vec v;
    v.reserve(n * (n - (n ? 1 : 0)) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) v.push_back(a(i, j));
    return v;
}

inline Matrix from_upper_triangle(const PrimeField& f, std::size_t n, const Vec& v) {
    Matrix a(f, n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            a.set(i, j, v[k]);
            a.set(j, i, f.neg(v[k]));
        }
    return a;
}

}  // namespace detail

class AltSpace {
public:
    AltSpace() = default;

    /// The zero space on F^n.
    AltSpace(PrimeField f, std::size_t n) : field_(f), n_(n) {}

    /// Takes an ordered basis as given; throws InvalidSpace unless every matrix
    /// is alternating n x n and the list is linearly independent.
    AltSpace(PrimeField f, std::size_t n, std::vector<Matrix> basis) : field_(f), n_(n), basis_(std::move(basis)) {
        validate();
    }

    /// Span of arbitrary alternating generators. The basis is the RREF of the
    /// strict upper triangles (coordinates (i,j), i<j, in lexicographic order),
    /// so equal spans get identical bases.
    static AltSpace span_of(PrimeField f, std::size_t n, const std::vector<Matrix>& generators) {
        std::vector<Vec> rows;
        rows.reserve(generators.size());
        for (std::size_t k = 0; k < generators.size(); ++k) {
            const Matrix& g = generators[k];
            if (g.rows() != n || g.cols() != n || g.field() != f)
                throw InvalidSpace(InvalidSpace::Kind::Shape, "generator has wrong shape or field", k);
            if (auto bad = alternating_violation(g))
                throw InvalidSpace(InvalidSpace::Kind::NotAlternating, "not alternating", k, bad->first, bad->second);
            rows.push_back(detail::upper_triangle(g));
        }
        AltSpace s(f, n);
        if (rows.empty() || n < 2) return s;
        Subspace sp = Subspace::span(f, n * (n - 1) / 2, rows);
        for (std::size_t r = 0; r < sp.dim(); ++r)
            s.basis_.push_back(detail::from_upper_triangle(f, n, sp.basis_vector(r)));
        return s;
    }

    const PrimeField& field() const noexcept { return field_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    bool is_zero() const noexcept { return basis_.empty(); }
    const std::vector<Matrix>& basis() const noexcept { return basis_; }
    const Matrix& operator[](std::size_t i) const { return basis_[i]; }

    /// sum_i c_i A_i
    Matrix combination(const Vec& coeffs) const {
        if (coeffs.size() != dim()) throw std::invalid_argument("combination: coefficient count mismatch");
        Matrix out(field_, n_, n_);
        for (std::size_t i = 0; i < dim(); ++i)
            if (coeffs[i] != 0) out = out + basis_[i].scaled(coeffs[i]);
        return out;
    }

    /// Span equality (bases may differ).
    bool same_span(const AltSpace& other) const {
        if (field_ != other.field_ || n_ != other.n_ || dim() != other.dim()) return false;
        return span_of(field_, n_, basis_).basis_ == span_of(field_, n_, other.basis_).basis_;
    }

private:
    void validate() const {
        std::vector<Vec> rows;
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const Matrix& a = basis_[k];
            if (a.rows() != n_ || a.cols() != n_ || a.field() != field_)
                throw InvalidSpace(InvalidSpace::Kind::Shape, "basis matrix has wrong shape or field", k);
            if (auto bad = alternating_violation(a))
                throw InvalidSpace(InvalidSpace::Kind::NotAlternating, "not alternating", k, bad->first, bad->second);
            rows.push_back(detail::upper_triangle(a));
        }
        if (!rows.empty()) {
            std::size_t r = n_ < 2 ? 0 : rank(Matrix::from_vectors(field_, n_ * (n_ - 1) / 2, rows));
            if (r < rows.size()) throw InvalidSpace(InvalidSpace::Kind::DependentBasis, "dependent basis");
        }
    }

    PrimeField field_{2};
    std::size_t n_ = 0;
    std::vector<Matrix> basis_;
};

/// Re-checks the invariants of a space (alternating, independent). Throws InvalidSpace.
inline void validate(const AltSpace& space) { AltSpace(space.field(), space.n(), space.basis()); }

// ---------------------------------------------------------------------------
// Radicals and degrees

/// {u : u^t A v = 0 for every A in the space and every v in `target`}.
inline Subspace rad_of(const AltSpace& space, const Subspace& target) {
    if (target.ambient() != space.n() || target.field() != space.field())
        throw std::invalid_argument("rad_of: target lives in a different space");
    const std::size_t n = space.n();
    std::vector<Vec> rows;
    rows.reserve(space.dim() * target.dim());
    for (const auto& a : space.basis())
        for (std::size_t j = 0; j < target.dim(); ++j) rows.push_back(a.apply(target.basis_vector(j)));
    return kernel(Matrix::from_vectors(space.field(), n, rows));
}

inline Subspace rad_of(const AltSpace& space, const Vec& v) {
    if (v.size() != space.n()) throw std::invalid_argument("rad_of: vector length mismatch");
    std::vector<Vec> rows;
    rows.reserve(space.dim());
    for (const auto& a : space.basis()) rows.push_back(a.apply(v));
    return kernel(Matrix::from_vectors(space.field(), space.n(), rows));
}

/// rad(A): vectors isolated under every form, the intersection of the kernels.
inline Subspace radical_space(const AltSpace& space) {
    std::vector<Vec> rows;
    rows.reserve(space.dim() * space.n());
    for (const auto& a : space.basis())
        for (std::size_t i = 0; i < space.n(); ++i) rows.push_back(a.row(i));
    return kernel(Matrix::from_vectors(space.field(), space.n(), rows));
}

inline bool is_nondegenerate(const AltSpace& space) { return radical_space(space).is_zero(); }

/// deg(v) = dim <A v : A in the space>.
inline std::size_t degree(const AltSpace& space, const Vec& v) {
    if (v.size() != space.n()) throw std::invalid_argument("degree: vector length mismatch");
    std::vector<Vec> rows;
    rows.reserve(space.dim());
    for (const auto& a : space.basis()) rows.push_back(a.apply(v));
    return rank(Matrix::from_vectors(space.field(), space.n(), rows));
}

inline std::size_t codegree(const AltSpace& space, const Vec& v) { return space.n() - degree(space, v); }

/// Δ(A): maximum degree over all nonzero vectors. Degree is scale invariant,
/// so one vector per projective point is swept.
inline std::size_t max_degree(const AltSpace& space, const Guard& guard = {}) {
    guard.require(projective_point_count(space.field(), space.n()), "max_degree");
    std::size_t best = 0;
    for_each_projective_point(space.field(), space.n(), [&](const Vec& v) { best = std::max(best, degree(space, v)); });
    return best;
}

/// Minimum degree over nonzero vectors and the lexicographically first vector
/// attaining it (first nonzero entry 1).
inline std::pair<std::size_t, Vec> min_degree_vector(const AltSpace& space, const Guard& guard = {}) {
    guard.require(projective_point_count(space.field(), space.n()), "min_degree_vector");
    std::size_t best = space.n() + 1;
    Vec arg;
    for_each_projective_point(space.field(), space.n(), [&](const Vec& v) {
        std::size_t d = degree(space, v);
        if (d < best) {
            best = d;
            arg = v;
        }
        return best > 0;
    });
    return {best, arg};
}

// ---------------------------------------------------------------------------
// Transformations

/// A|_{U,T} = span{T^t A_i T}, T the n x dim(U) matrix of U's RREF basis.
inline AltSpace restrict(const AltSpace& space, const Subspace& u) {
    if (u.ambient() != space.n() || u.field() != space.field())
        throw std::invalid_argument("restrict: subspace lives in a different space");
    const Matrix& b = u.basis();  // d x n, so T = b^t
    const Matrix bt = b.transpose();
    std::vector<Matrix> gens;
    gens.reserve(space.dim());
    for (const auto& a : space.basis()) gens.push_back(b * a * bt);
    return AltSpace::span_of(space.field(), u.dim(), gens);
}

/// Basis mapped A -> T^t A T for invertible T.
inline AltSpace isometry_transform(const AltSpace& space, const Matrix& t) {
    if (t.rows() != space.n() || t.cols() != space.n()) throw std::invalid_argument("isometry_transform: shape mismatch");
    if (!inverse(t)) throw std::invalid_argument("isometry_transform: transform is singular");
    const Matrix tt = t.transpose();
    std::vector<Matrix> images;
    images.reserve(space.dim());
    for (const auto& a : space.basis()) images.push_back(tt * a * t);
    return AltSpace(space.field(), space.n(), std::move(images));
}

/// u^t A u' = 0 for all u, u' in U and every basis form.
inline bool is_isotropic(const AltSpace& space, const Subspace& u) {
    if (u.ambient() != space.n() || u.field() != space.field())
        throw std::invalid_argument("is_isotropic: subspace lives in a different space");
    const std::size_t d = u.dim();
    if (d < 2 || space.is_zero()) return true;
    std::vector<Vec> b = u.basis_vectors();
    for (const auto& a : space.basis())
        for (std::size_t i = 0; i < d; ++i) {
            Vec ai = a.apply(b[i]);
            for (std::size_t j = i + 1; j < d; ++j) {
                unsigned acc = 0;
                for (std::size_t k = 0; k < ai.size(); ++k) acc += unsigned(ai[k]) * b[j][k];
                if (acc % space.field().p() != 0) return false;
            }
        }
    return true;
}

/// U = rad(U).
inline bool is_maximal_isotropic(const AltSpace& space, const Subspace& u) { return rad_of(space, u) == u; }

struct NondegeneratePart {
    AltSpace space;          ///< on F^(n - dim rad)
    Matrix transform;        ///< T in GL(n): columns = complement basis, then radical basis
    Subspace radical;
    Subspace complement;     ///< coordinate complement of the radical
};

/// T^t A T = [[A', 0], [0, 0]] with A' nondegenerate.
inline NondegeneratePart nondegenerate_part(const AltSpace& space) {
    Subspace rad = radical_space(space);
    Subspace comp = rad.coordinate_complement();
    Matrix t = Matrix::vstack(comp.basis(), rad.basis()).transpose();
    return {restrict(space, comp), std::move(t), std::move(rad), std::move(comp)};
}

/// rk(A): maximum rank over all q^m linear combinations.
inline std::size_t max_rank_bruteforce(const AltSpace& space, const Guard& guard = {}) {
    const std::size_t m = space.dim();
    guard.require(ipow_ld(space.field().p(), m), "max_rank_bruteforce");
    if (m == 0) return 0;
    std::size_t best = 0;
    // Rank is scale invariant: projective representatives suffice.
    for_each_projective_point(space.field(), m, [&](const Vec& c) {
        best = std::max(best, rank(space.combination(c)));
        return best < space.n() - (space.n() % 2);
    });
    return best;
}

}  // namespace altiso
