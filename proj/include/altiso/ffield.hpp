#pragma once

// Exact dense linear algebra over prime fields F_p (p <= 251) and canonical
// subspaces. A Subspace is stored as its reduced row echelon basis, so two
// subspaces are equal exactly when their bytes are equal; the byte string is
// the hash key used by every table in the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "altiso/errors.hpp"

namespace altiso {

using Elem = std::uint8_t;
using Vec = std::vector<Elem>;
using BigInt = boost::multiprecision::cpp_int;

class PrimeField {
public:
    explicit PrimeField(unsigned p = 2) : p_(p) {
        if (p < 2 || p > 251) throw std::invalid_argument("field modulus must lie in [2, 251]");
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
    }

    unsigned p() const noexcept { return p_; }

    Elem add(Elem a, Elem b) const noexcept {
        unsigned s = unsigned(a) + b;
        return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    Elem sub(Elem a, Elem b) const noexcept {
        return static_cast<Elem>(a >= b ? a - b : unsigned(a) + p_ - b);
    }
    Elem neg(Elem a) const noexcept { return static_cast<Elem>(a ? p_ - a : 0); }
    Elem mul(Elem a, Elem b) const noexcept { return static_cast<Elem>((unsigned(a) * b) % p_); }
    /// a + b*c
    Elem fma(Elem a, Elem b, Elem c) const noexcept { return static_cast<Elem>((a + unsigned(b) * c) % p_); }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        int t = 0, nt = 1, r = int(p_), nr = a;
        while (nr != 0) {
            int q = r / nr;
            std::tie(t, nt) = std::make_pair(nt, t - q * nt);
            std::tie(r, nr) = std::make_pair(nr, r - q * nr);
        }
        return static_cast<Elem>(t < 0 ? t + int(p_) : t);
    }

    Elem reduce(long long x) const noexcept {
        long long m = x % static_cast<long long>(p_);
        return static_cast<Elem>(m < 0 ? m + p_ : m);
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.p_ != b.p_; }

private:
    unsigned p_;
};

inline long double ipow_ld(long double base, long double e) { return std::pow(base, e); }

// ---------------------------------------------------------------------------
// Matrix

class Matrix {
public:
    Matrix() : field_(2) {}
    Matrix(PrimeField f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(PrimeField f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static Matrix from_rows(PrimeField f, std::initializer_list<std::initializer_list<long long>> rows) {
        std::vector<std::vector<long long>> v;
        for (auto& r : rows) v.emplace_back(r);
        return from_rows(f, v);
    }

    static Matrix from_rows(PrimeField f, const std::vector<std::vector<long long>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        Matrix m(f, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged row list");
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, f.reduce(rows[i][j]));
        }
        return m;
    }

    /// Rows are vectors of F^cols; an empty list gives a 0 x cols matrix.
    static Matrix from_vectors(PrimeField f, std::size_t cols, const std::vector<Vec>& rows) {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("vector length mismatch");
            std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + i * cols);
        }
        return m;
    }

    static Matrix column(PrimeField f, const Vec& v) {
        Matrix m(f, v.size(), 1);
        std::copy(v.begin(), v.end(), m.a_.begin());
        return m;
    }

    /// E_{i,j}, 0-based.
    static Matrix elementary(PrimeField f, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
        Matrix m(f, rows, cols);
        m.set(i, j, 1);
        return m;
    }

    /// e_i e_j^t - e_j e_i^t, 0-based.
    static Matrix unit_alternating(PrimeField f, std::size_t n, std::size_t i, std::size_t j) {
        Matrix m(f, n, n);
        m.set(i, j, 1);
        m.set(j, i, f.neg(1));
        return m;
    }

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<Elem>& data() const noexcept { return a_; }

    Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, Elem v) { a_[i * cols_ + j] = v; }

    Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<Vec> row_vectors() const {
        std::vector<Vec> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](Elem x) { return x == 0; });
    }
    bool is_square() const noexcept { return rows_ == cols_; }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
        return t;
    }

    Matrix scaled(Elem c) const {
        Matrix m = *this;
        for (auto& x : m.a_) x = field_.mul(x, c);
        return m;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
        if (r0 + r > rows_ || c0 + c > cols_) throw std::out_of_range("block out of range");
        Matrix m(field_, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, (*this)(r0 + i, c0 + j));
        return m;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) set(r0 + i, c0 + j, b(i, j));
    }

    static Matrix vstack(const Matrix& top, const Matrix& bottom) {
        if (top.cols_ != bottom.cols_) throw std::invalid_argument("vstack: column mismatch");
        Matrix m(top.field_, top.rows_ + bottom.rows_, top.cols_);
        std::copy(top.a_.begin(), top.a_.end(), m.a_.begin());
        std::copy(bottom.a_.begin(), bottom.a_.end(), m.a_.begin() + top.a_.size());
        return m;
    }

    static Matrix hstack(const Matrix& left, const Matrix& right) {
        if (left.rows_ != right.rows_) throw std::invalid_argument("hstack: row mismatch");
        Matrix m(left.field_, left.rows_, left.cols_ + right.cols_);
        m.set_block(0, 0, left);
        m.set_block(0, left.cols_, right);
        return m;
    }

    /// M v
    Vec apply(const Vec& v) const {
        if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
        Vec out(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            unsigned acc = 0;
            const Elem* r = &a_[i * cols_];
            for (std::size_t j = 0; j < cols_; ++j) acc += unsigned(r[j]) * v[j];
            out[i] = static_cast<Elem>(acc % field_.p());
        }
        return out;
    }

    /// u^t M v
    Elem bilinear(const Vec& u, const Vec& v) const {
        if (u.size() != rows_ || v.size() != cols_) throw std::invalid_argument("bilinear: dimension mismatch");
        unsigned long acc = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (u[i] == 0) continue;
            unsigned row = 0;
            const Elem* r = &a_[i * cols_];
            for (std::size_t j = 0; j < cols_; ++j) row += unsigned(r[j]) * v[j];
            acc += static_cast<unsigned long>(row % field_.p()) * u[i];
        }
        return static_cast<Elem>(acc % field_.p());
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        Matrix c(a.field_, a.rows_, b.cols_);
        const unsigned p = a.field_.p();
        std::vector<unsigned> acc(b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0u);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                unsigned x = a(i, k);
                if (x == 0) continue;
                const Elem* br = &b.a_[k * b.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += x * br[j];
                if ((k & 255u) == 255u)
                    for (auto& s : acc) s %= p;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) c.set(i, j, static_cast<Elem>(acc[j] % p));
        }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] = a.field_.add(a.a_[k], b.a_[k]);
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] = a.field_.sub(a.a_[k], b.a_[k]);
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << unsigned(m(i, j));
        }
        return os << ']';
    }

private:
    void require_same_shape(const Matrix& b) const {
        if (field_ != b.field_ || rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("matrix shape or field mismatch");
    }

    PrimeField field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> a_;
};

// ---------------------------------------------------------------------------
// Vector helpers

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

inline Vec unit_vector(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

/// a + c*b
inline Vec axpy(const PrimeField& f, const Vec& a, Elem c, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.fma(a[i], c, b[i]);
    return out;
}

/// sum_i c_i * (row i of m)
inline Vec row_combination(const Matrix& m, const Vec& c) {
    if (c.size() != m.rows()) throw std::invalid_argument("row_combination: coefficient count mismatch");
    const PrimeField& f = m.field();
    Vec out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (c[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.fma(out[j], c[i], m(i, j));
    }
    return out;
}

/// Visits every vector of F^n whose first nonzero entry is 1, in lexicographic order.
/// One representative per line through the origin; (q^n - 1)/(q - 1) calls.
template <class Fn>
void for_each_projective_point(const PrimeField& f, std::size_t n, Fn&& fn) {
    const unsigned p = f.p();
    for (std::size_t lead = 0; lead < n; ++lead) {
        Vec v(n, 0);
        v[lead] = 1;
        for (;;) {
            if constexpr (std::is_same_v<std::invoke_result_t<Fn, const Vec&>, bool>) {
                if (!fn(static_cast<const Vec&>(v))) return;
            } else {
                fn(static_cast<const Vec&>(v));
            }
            // increment the tail after `lead` as a base-p counter, last entry least significant
            bool carry = true;
            for (std::size_t k = n; carry && k > lead + 1;) {
                --k;
                if (++v[k] < p)
                    carry = false;
                else
                    v[k] = 0;
            }
            if (carry) break;
        }
    }
}

inline long double projective_point_count(const PrimeField& f, std::size_t n) {
    return (ipow_ld(f.p(), n) - 1) / (f.p() - 1);
}

// ---------------------------------------------------------------------------
// Elimination

struct Rref {
    Matrix matrix;  ///< same shape as the input; zero rows at the bottom
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

inline Rref rref(Matrix m) {
    const PrimeField f = m.field();
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        while (piv < R && m(piv, c) == 0) ++piv;
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t j = 0; j < C; ++j) {
                Elem t = m(r, j);
                m.set(r, j, m(piv, j));
                m.set(piv, j, t);
            }
        Elem inv = f.inv(m(r, c));
        if (inv != 1)
            for (std::size_t j = c; j < C; ++j) m.set(r, j, f.mul(m(r, j), inv));
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            Elem factor = m(i, c);
            if (factor == 0) continue;
            Elem nf = f.neg(factor);
            for (std::size_t j = c; j < C; ++j) m.set(i, j, f.fma(m(i, j), nf, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

/// RREF with zero rows removed, plus the rank.
inline std::pair<Matrix, std::size_t> rref_canonicalize(const Matrix& m) {
    Rref r = rref(m);
    return {r.matrix.block(0, 0, r.rank, m.cols()), r.rank};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Rref r = rref(Matrix::hstack(m, Matrix::identity(m.field(), n)));
    if (r.rank < n || (n > 0 && r.pivots[n - 1] >= n)) return std::nullopt;
    return r.matrix.block(0, n, n, n);
}

// ---------------------------------------------------------------------------
// Subspace

class Subspace {
public:
    Subspace() : Subspace(PrimeField(2), 0) {}
    Subspace(PrimeField f, std::size_t n) : basis_(f, 0, n) {}

    static Subspace zero(PrimeField f, std::size_t n) { return Subspace(f, n); }
    static Subspace full(PrimeField f, std::size_t n) {
        Subspace s(f, n);
        s.basis_ = Matrix::identity(f, n);
        s.pivots_.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.pivots_[i] = i;
        return s;
    }

    /// Row space of m, canonicalized.
    static Subspace row_space(const Matrix& m) {
        Subspace s(m.field(), m.cols());
        Rref r = rref(m);
        s.basis_ = r.matrix.block(0, 0, r.rank, m.cols());
        s.pivots_ = std::move(r.pivots);
        return s;
    }

    static Subspace span(PrimeField f, std::size_t n, const std::vector<Vec>& vectors) {
        return row_space(Matrix::from_vectors(f, n, vectors));
    }

    const PrimeField& field() const noexcept { return basis_.field(); }
    std::size_t ambient() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    bool is_zero() const noexcept { return dim() == 0; }
    bool is_full() const noexcept { return dim() == ambient(); }
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }
    std::vector<Vec> basis_vectors() const { return basis_.row_vectors(); }

    /// n x dim matrix whose columns are the basis vectors (the T of a restriction).
    Matrix embedding() const { return basis_.transpose(); }

    /// Residue of v after elimination against the basis; zero iff v is in the span.
    Vec reduce(Vec v) const {
        const PrimeField& f = field();
        for (std::size_t r = 0; r < dim(); ++r) {
            Elem c = v[pivots_[r]];
            if (c == 0) continue;
            Elem nc = f.neg(c);
            const Elem* row = &basis_.data()[r * ambient()];
            for (std::size_t j = pivots_[r]; j < ambient(); ++j) v[j] = f.fma(v[j], nc, row[j]);
        }
        return v;
    }

    bool contains(const Vec& v) const {
        require_vector(v);
        return altiso::is_zero(reduce(v));
    }

    bool contains(const Subspace& other) const {
        require_compatible(other);
        if (other.dim() > dim()) return false;
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_vector(i))) return false;
        return true;
    }

    /// Coefficients of v (assumed in the span) w.r.t. the RREF basis: read off at pivots.
    Vec coordinates(const Vec& v) const {
        Vec c(dim());
        for (std::size_t r = 0; r < dim(); ++r) c[r] = v[pivots_[r]];
        return c;
    }

    /// Image of a subspace of F^dim() under the basis map.
    Subspace lift(const Subspace& inner) const {
        if (inner.ambient() != dim() || inner.field() != field())
            throw std::invalid_argument("lift: inner subspace lives in the wrong space");
        return row_space(inner.basis() * basis_);
    }

    /// Coordinates of a contained subspace, as a subspace of F^dim().
    Subspace restrict_to(const Subspace& inside) const {
        require_compatible(inside);
        std::vector<Vec> coords;
        coords.reserve(inside.dim());
        for (std::size_t i = 0; i < inside.dim(); ++i) {
            Vec v = inside.basis_vector(i);
            if (!contains(v)) throw std::invalid_argument("restrict_to: subspace not contained");
            coords.push_back(coordinates(v));
        }
        return span(field(), dim(), coords);
    }

    Subspace with(const Vec& v) const {
        require_vector(v);
        if (contains(v)) return *this;
        return row_space(Matrix::vstack(basis_, Matrix::from_vectors(field(), ambient(), {v})));
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        a.require_compatible(b);
        if (b.dim() == 0 || a.is_full()) return a;
        if (a.dim() == 0 || b.is_full()) return b;
        return row_space(Matrix::vstack(a.basis_, b.basis_));
    }

    /// {x : <b, x> = 0 for every basis vector b} under the standard dot product.
    Subspace annihilator() const;

    Subspace intersect(const Subspace& b) const {
        require_compatible(b);
        if (dim() == 0 || b.is_full()) return *this;
        if (b.dim() == 0 || is_full()) return b;
        return (annihilator() + b.annihilator()).annihilator();
    }

    /// Span of the standard basis vectors at non-pivot columns; a complement of *this.
    Subspace coordinate_complement() const {
        std::vector<Vec> vs;
        std::size_t k = 0;
        for (std::size_t j = 0; j < ambient(); ++j) {
            if (k < pivots_.size() && pivots_[k] == j) {
                ++k;
                continue;
            }
            vs.push_back(unit_vector(ambient(), j));
        }
        return span(field(), ambient(), vs);
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&](std::uint64_t x) {
            h ^= x;
            h *= 1099511628211ull;
        };
        mix(ambient());
        mix(dim());
        for (Elem x : basis_.data()) mix(x);
        return static_cast<std::size_t>(h);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
    /// Canonical total order: by dimension, then RREF bytes.
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.ambient() != b.ambient()) return a.ambient() < b.ambient();
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a.basis_.data() < b.basis_.data();
    }

    friend std::ostream& operator<<(std::ostream& os, const Subspace& s) {
        return os << "<" << s.basis_ << ">";
    }

private:
    void require_vector(const Vec& v) const {
        if (v.size() != ambient()) throw std::invalid_argument("vector length does not match ambient dimension");
    }
    void require_compatible(const Subspace& b) const {
        if (field() != b.field() || ambient() != b.ambient())
            throw std::invalid_argument("subspaces live in different ambient spaces");
    }

    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

/// {v : m v = 0} as a subspace of F^cols.
inline Subspace kernel(const Matrix& m) {
    const PrimeField f = m.field();
    Rref r = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto c : r.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < C; ++free) {
        if (is_pivot[free]) continue;
        Vec v(C, 0);
        v[free] = 1;
        for (std::size_t row = 0; row < r.rank; ++row) v[r.pivots[row]] = f.neg(r.matrix(row, free));
        basis.push_back(std::move(v));
    }
    return Subspace::span(f, C, basis);
}

inline Subspace Subspace::annihilator() const { return kernel(basis_); }

struct LinearSolution {
    Matrix particular;     ///< cols x rhs.cols()
    Subspace homogeneous;  ///< kernel of the system
};

/// Solves system * X = rhs. nullopt when inconsistent.
inline std::optional<LinearSolution> solve_linear(const Matrix& system, const Matrix& rhs) {
    if (system.rows() != rhs.rows() || system.field() != rhs.field())
        throw std::invalid_argument("solve_linear: shape mismatch");
    const PrimeField f = system.field();
    const std::size_t C = system.cols(), K = rhs.cols();
    Rref r = rref(Matrix::hstack(system, rhs));
    if (r.rank > 0 && r.pivots[r.rank - 1] >= C) return std::nullopt;
    Matrix x(f, C, K);
    for (std::size_t row = 0; row < r.rank; ++row)
        for (std::size_t k = 0; k < K; ++k) x.set(r.pivots[row], k, r.matrix(row, C + k));
    return LinearSolution{std::move(x), kernel(system)};
}

// ---------------------------------------------------------------------------
// Counting

/// Number of dimension-d subspaces of F_q^n, exactly; 0 when d > n.
inline BigInt gaussian_binomial(std::size_t n, std::size_t d, unsigned q) {
    if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be at least 2");
    if (d > n) return 0;
    BigInt num = 1, den = 1, qn = 1, qd = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q;
    for (std::size_t i = 0; i < d; ++i) qd *= q;
    BigInt qi = 1;
    for (std::size_t i = 0; i < d; ++i) {
        num *= (qn - qi);
        den *= (qd - qi);
        qi *= q;
    }
    return num / den;
}

inline BigInt big_pow(unsigned q, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= q;
    return r;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Yields every subspace of F^n of a fixed dimension (or all dimensions in
/// increasing order). Order: pivot sets lexicographically, then the free RREF
/// entries as a base-p counter in row-major order.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(PrimeField f, std::size_t n, std::optional<std::size_t> d = std::nullopt,
                       const Guard& guard = {})
        : f_(f), n_(n) {
        if (d && *d > n) throw std::invalid_argument("enumerate_subspaces: d > n");
        lo_ = d ? *d : 0;
        hi_ = d ? *d : n;
        long double need = 0;
        for (std::size_t k = lo_; k <= hi_; ++k)
            need += ipow_ld(f.p(), static_cast<long double>(k * (n - k) + k));
        guard.require(need, "enumerate_subspaces");
        dim_ = lo_;
        start_dim();
    }

    std::optional<Subspace> next() {
        if (done_) return std::nullopt;
        Subspace out = current();
        advance();
        return out;
    }

private:
    void start_dim() {
        pivots_.resize(dim_);
        for (std::size_t i = 0; i < dim_; ++i) pivots_[i] = i;
        reset_free();
    }

    void reset_free() {
        free_pos_.clear();
        std::vector<bool> is_piv(n_, false);
        for (auto c : pivots_) is_piv[c] = true;
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t j = pivots_[r] + 1; j < n_; ++j)
                if (!is_piv[j]) free_pos_.push_back({r, j});
        free_val_.assign(free_pos_.size(), 0);
    }

    Subspace current() const {
        Matrix m(f_, dim_, n_);
        for (std::size_t r = 0; r < dim_; ++r) m.set(r, pivots_[r], 1);
        for (std::size_t k = 0; k < free_pos_.size(); ++k) m.set(free_pos_[k].first, free_pos_[k].second, free_val_[k]);
        return Subspace::row_space(m);
    }

    void advance() {
        // free-entry counter
        for (std::size_t k = free_val_.size(); k-- > 0;) {
            if (++free_val_[k] < f_.p()) return;
            free_val_[k] = 0;
        }
        // next pivot combination
        if (next_combination()) {
            reset_free();
            return;
        }
        if (dim_ < hi_) {
            ++dim_;
            start_dim();
            return;
        }
        done_ = true;
    }

    bool next_combination() {
        std::size_t k = dim_;
        while (k > 0) {
            --k;
            if (pivots_[k] < n_ - dim_ + k) {
                ++pivots_[k];
                for (std::size_t j = k + 1; j < dim_; ++j) pivots_[j] = pivots_[j - 1] + 1;
                return true;
            }
        }
        return false;
    }

    PrimeField f_;
    std::size_t n_;
    std::size_t lo_ = 0, hi_ = 0, dim_ = 0;
    std::vector<std::size_t> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_pos_;
    std::vector<Elem> free_val_;
    bool done_ = false;
};

inline std::vector<Subspace> enumerate_subspaces(PrimeField f, std::size_t n, std::optional<std::size_t> d = std::nullopt,
                                                 const Guard& guard = {}) {
    SubspaceEnumerator e(f, n, d, guard);
    std::vector<Subspace> out;
    while (auto s = e.next()) out.push_back(std::move(*s));
    return out;
}

/// Yields every W with W + U = F^n and W ∩ U = 0, each once. A complement is the
/// graph of a linear map from the coordinate complement C of U into U: basis
/// e_j + sum_r a_{j,r} u_r for each non-pivot column j; the coefficient matrix a
/// runs as a base-p counter.
class ComplementEnumerator {
public:
    explicit ComplementEnumerator(const Subspace& u, const Guard& guard = {}) : u_(u) {
        const std::size_t n = u.ambient(), d = u.dim();
        guard.require(ipow_ld(u.field().p(), static_cast<long double>(d * (n - d))), "enumerate_complements");
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (k < u.pivots().size() && u.pivots()[k] == j) {
                ++k;
                continue;
            }
            free_cols_.push_back(j);
        }
        coeff_.assign(free_cols_.size() * d, 0);
    }

    std::optional<Subspace> next() {
        if (done_) return std::nullopt;
        const PrimeField& f = u_.field();
        const std::size_t n = u_.ambient(), d = u_.dim();
        std::vector<Vec> rows;
        rows.reserve(free_cols_.size());
        for (std::size_t i = 0; i < free_cols_.size(); ++i) {
            Vec w = unit_vector(n, free_cols_[i]);
            for (std::size_t r = 0; r < d; ++r) {
                Elem c = coeff_[i * d + r];
                if (c != 0) w = axpy(f, w, c, u_.basis_vector(r));
            }
            rows.push_back(std::move(w));
        }
        Subspace out = Subspace::span(f, n, rows);
        std::size_t k = coeff_.size();
        for (;;) {
            if (k == 0) {
                done_ = true;
                break;
            }
            --k;
            if (++coeff_[k] < f.p()) break;
            coeff_[k] = 0;
        }
        return out;
    }

private:
    Subspace u_;
    std::vector<std::size_t> free_cols_;
    std::vector<Elem> coeff_;
    bool done_ = false;
};

inline std::vector<Subspace> enumerate_complements(const Subspace& u, const Guard& guard = {}) {
    ComplementEnumerator e(u, guard);
    std::vector<Subspace> out;
    while (auto s = e.next()) out.push_back(std::move(*s));
    return out;
}

/// Subspaces of `outer` (a subspace of F^n) complementing `inner` within it.
inline std::vector<Subspace> complements_within(const Subspace& outer, const Subspace& inner, const Guard& guard = {}) {
    Subspace local = outer.restrict_to(inner);
    std::vector<Subspace> out;
    ComplementEnumerator e(local, guard);
    while (auto w = e.next()) out.push_back(outer.lift(*w));
    return out;
}

}  // namespace altiso

template <>
struct std::hash<altiso::Subspace> {
    std::size_t operator()(const altiso::Subspace& s) const noexcept { return s.hash(); }
};
