#pragma once

// Quantum channels given by Kraus operators, with the graph channel whose
// period detects bipartiteness. Complex double arithmetic with explicit
// tolerances.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "altiso/graph.hpp"

namespace altiso::quantum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Tolerances {
    double eig = 1e-8;
    double iso = 1e-9;
    double channel = 1e-10;
    double pd = 1e-10;
    double ortho = 1e-10;
    double unit = 1e-9;
};

/// max |Σ B_i† B_i - I| entrywise.
inline double trace_preservation_error(const std::vector<CMatrix>& kraus, std::size_t n) {
    CMatrix s = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& b : kraus) s += b.adjoint() * b;
    s -= CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    return n == 0 ? 0.0 : s.cwiseAbs().maxCoeff();
}

class QuantumChannel {
public:
    QuantumChannel(std::size_t n, std::vector<CMatrix> kraus, double channel_tol = Tolerances{}.channel)
        : n_(n), kraus_(std::move(kraus)) {
        for (const auto& b : kraus_)
            if (static_cast<std::size_t>(b.rows()) != n || static_cast<std::size_t>(b.cols()) != n)
                throw std::invalid_argument("Kraus operator has wrong shape");
        if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
        double err = trace_preservation_error(kraus_, n);
        if (!(err <= channel_tol))
            throw std::invalid_argument("not trace preserving: max |Σ B†B - I| = " + std::to_string(err));
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }

    /// Σ B_i ρ B_i†
    CMatrix apply(const CMatrix& rho) const {
        CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
        for (const auto& b : kraus_) out += b * rho * b.adjoint();
        return out;
    }

private:
    std::size_t n_;
    std::vector<CMatrix> kraus_;
};

inline QuantumChannel identity_channel(std::size_t n) {
    return QuantumChannel(n, {CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))});
}

/// Kraus set {E_ij / √d_j, E_ji / √d_i : {i,j} ∈ E}.
inline QuantumChannel channel_from_graph(const Graph& g) {
    const std::size_t n = g.n();
    if (n == 0 || !g.is_connected()) throw std::invalid_argument("channel_from_graph: graph must be connected");
    for (std::size_t v = 0; v < n; ++v)
        if (g.degree(v) == 0) throw std::invalid_argument("channel_from_graph: isolated vertex");
    const auto N = static_cast<Eigen::Index>(n);
    std::vector<CMatrix> kraus;
    for (auto [i, j] : g.edges()) {
        CMatrix a = CMatrix::Zero(N, N), b = CMatrix::Zero(N, N);
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0 / std::sqrt(double(g.degree(j)));
        b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0 / std::sqrt(double(g.degree(i)));
        kraus.push_back(std::move(a));
        kraus.push_back(std::move(b));
    }
    return QuantumChannel(n, std::move(kraus));
}

/// Σ B_i ⊗ conj(B_i); acts on row-major vec(ρ), entry i*n+j holding ρ(i,j).
inline CMatrix channel_matrix(const QuantumChannel& ch) {
    const auto n = static_cast<Eigen::Index>(ch.n());
    CMatrix m = CMatrix::Zero(n * n, n * n);
    for (const auto& b : ch.kraus())
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k) {
                if (b(i, k) == Complex(0)) continue;
                m.block(i * n, k * n, n, n) += b(i, k) * b.conjugate();
            }
    return m;
}

inline CVector vec_row_major(const CMatrix& rho) {
    CVector v(rho.size());
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
    return v;
}

inline CMatrix unvec_row_major(const CVector& v, std::size_t n) {
    const auto N = static_cast<Eigen::Index>(n);
    CMatrix rho(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) rho(i, j) = v(i * N + j);
    return rho;
}

inline std::vector<Complex> channel_spectrum(const QuantumChannel& ch) {
    Eigen::ComplexEigenSolver<CMatrix> es(channel_matrix(ch), false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation did not converge");
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

struct Irreducibility {
    bool irreducible = false;
    std::size_t unit_multiplicity = 0;  ///< eigenvalues within eig of 1
    std::optional<CMatrix> fixed_state;
};

/// Eigenvalue 1 is simple and its eigenvector, as a trace-one Hermitian
/// matrix, is positive definite.
inline Irreducibility is_irreducible(const QuantumChannel& ch, const Tolerances& tol = {}) {
    Irreducibility r;
    for (const auto& l : channel_spectrum(ch))
        if (std::abs(l - Complex(1.0)) < tol.eig) ++r.unit_multiplicity;
    if (r.unit_multiplicity != 1) return r;

    const CMatrix m = channel_matrix(ch);
    const CMatrix shifted = m - CMatrix::Identity(m.rows(), m.cols());
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
    CVector null = svd.matrixV().col(svd.matrixV().cols() - 1);
    CMatrix rho = unvec_row_major(null, ch.n());
    Complex tr = rho.trace();
    if (std::abs(tr) < tol.pd) return r;
    rho /= tr;
    rho = (rho + rho.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> h(rho);
    if (h.info() != Eigen::Success || h.eigenvalues().minCoeff() <= tol.pd) return r;
    r.irreducible = true;
    r.fixed_state = std::move(rho);
    return r;
}

/// Number of eigenvalues of magnitude one (within eig) of an irreducible channel.
inline std::size_t period(const QuantumChannel& ch, const Tolerances& tol = {}) {
    if (!is_irreducible(ch, tol).irreducible) throw std::invalid_argument("period: channel is not irreducible");
    std::size_t count = 0;
    for (const auto& l : channel_spectrum(ch))
        if (std::abs(std::abs(l) - 1.0) < tol.eig) ++count;
    return count;
}

/// An orthogonal isotropic 2-decomposition exists iff the period is even.
inline bool decide_iso_2_decomposition(const QuantumChannel& ch, const Tolerances& tol = {}) {
    return period(ch, tol) % 2 == 0;
}

// ---------------------------------------------------------------------------
// Subspaces of C^n

class ComplexSubspace {
public:
    /// Columns must be orthonormal within ortho.
    ComplexSubspace(CMatrix basis, double ortho_tol = Tolerances{}.ortho) : basis_(std::move(basis)) {
        if (basis_.cols() > 0) {
            CMatrix gram = basis_.adjoint() * basis_;
            gram -= CMatrix::Identity(gram.rows(), gram.cols());
            if (gram.cwiseAbs().maxCoeff() > ortho_tol) throw std::invalid_argument("basis is not orthonormal");
        }
    }

    /// Orthonormal basis of the span of the given columns (assumed independent).
    static ComplexSubspace span(const CMatrix& columns) {
        Eigen::HouseholderQR<CMatrix> qr(columns);
        CMatrix q = qr.householderQ() * CMatrix::Identity(columns.rows(), columns.cols());
        return ComplexSubspace(q);
    }

    /// span{e_i : i in s}
    static ComplexSubspace coordinate(std::size_t n, const VertexSet& s) {
        CMatrix b = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(s.size()));
        for (std::size_t k = 0; k < s.size(); ++k) b(static_cast<Eigen::Index>(s[k]), static_cast<Eigen::Index>(k)) = 1.0;
        return ComplexSubspace(b);
    }

    std::size_t n() const noexcept { return static_cast<std::size_t>(basis_.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
    const CMatrix& basis() const noexcept { return basis_; }

private:
    CMatrix basis_;
};

/// u† B_i u' = 0 for all basis vectors u, u' and every Kraus operator.
inline bool is_isotropic_subspace(const QuantumChannel& ch, const ComplexSubspace& u, const Tolerances& tol = {}) {
    if (u.n() != ch.n()) throw std::invalid_argument("subspace dimension mismatch");
    for (const auto& b : ch.kraus()) {
        CMatrix c = u.basis().adjoint() * b * u.basis();
        if (c.size() > 0 && c.cwiseAbs().maxCoeff() >= tol.iso) return false;
    }
    return true;
}

/// B_i u = u for all basis vectors u and every Kraus operator.
inline bool is_noiseless_subspace(const QuantumChannel& ch, const ComplexSubspace& u, const Tolerances& tol = {}) {
    if (u.n() != ch.n()) throw std::invalid_argument("subspace dimension mismatch");
    if (u.dim() == 0) throw std::invalid_argument("is_noiseless_subspace: zero subspace");
    for (const auto& b : ch.kraus())
        for (Eigen::Index k = 0; k < u.basis().cols(); ++k)
            if ((b * u.basis().col(k) - u.basis().col(k)).norm() >= tol.iso) return false;
    return true;
}

/// u† B̃(u u†) u = Σ |u† B_i u|^2 for a unit vector u.
inline double fidelity_pure(const QuantumChannel& ch, const CVector& u, const Tolerances& tol = {}) {
    if (static_cast<std::size_t>(u.size()) != ch.n()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
    if (std::abs(u.norm() - 1.0) > tol.unit) throw std::invalid_argument("fidelity_pure: u must be a unit vector");
    double f = 0;
    for (const auto& b : ch.kraus()) f += std::norm(u.dot(b * u));
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace altiso::quantum
