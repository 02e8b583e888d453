#pragma once

// Exact algorithms for α(A) and χ(A): isotropic lattices, maximal isotropic
// enumeration, three independent χ solvers and the Δ·log n greedy.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "altiso/altspace.hpp"
#include "altiso/decomposition.hpp"
#include "altiso/errors.hpp"
#include "altiso/ffield.hpp"

namespace altiso {

/// Visits one representative u of every line of r/u0 (u0 <= r), i.e. every
/// U0 + <u> with u in r \ u0, each once.
template <class Fn>
void for_each_quotient_line(const Subspace& r, const Subspace& u0, Fn&& fn) {
    Subspace local = r.restrict_to(u0);
    Subspace comp = local.coordinate_complement();
    for_each_projective_point(r.field(), comp.dim(), [&](const Vec& x) {
        fn(row_combination(r.basis(), row_combination(comp.basis(), x)));
    });
}

/// First RREF basis vector of `from` outside `avoid`, if any.
inline std::optional<Vec> first_basis_vector_outside(const Subspace& from, const Subspace& avoid) {
    for (std::size_t i = 0; i < from.dim(); ++i) {
        Vec v = from.basis_vector(i);
        if (!avoid.contains(v)) return v;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Greedy maximal isotropic space

inline Subspace greedy_maximal(const AltSpace& space, std::optional<Vec> start = std::nullopt) {
    const std::size_t n = space.n();
    if (n == 0) throw std::invalid_argument("greedy_maximal: n must be at least 1");
    Vec s = start ? *start : unit_vector(n, 0);
    if (s.size() != n || is_zero(s)) throw std::invalid_argument("greedy_maximal: start must be a nonzero vector of F^n");
    Subspace u = Subspace::span(space.field(), n, {s});
    for (;;) {
        Subspace r = rad_of(space, u);
        auto next = first_basis_vector_outside(r, u);
        if (!next) return u;
        u = u.with(*next);
    }
}

// ---------------------------------------------------------------------------
// Isotropic lattice

struct IsotropicLattice {
    std::vector<std::vector<Subspace>> levels;  ///< levels[d] = isotropic spaces of dimension d
    /// links[d][i] = indices in levels[d+1] of the isotropic spaces covering levels[d][i]
    std::vector<std::vector<std::vector<std::size_t>>> links;

    std::size_t alpha() const { return levels.empty() ? 0 : levels.size() - 1; }
    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& l : levels) t += l.size();
        return t;
    }
};

inline IsotropicLattice enumerate_isotropic_lattice(const AltSpace& space, const Guard& guard = {}) {
    const PrimeField f = space.field();
    const std::size_t n = space.n();
    Budget budget(guard, "enumerate_isotropic_lattice");
    IsotropicLattice lat;
    lat.levels.push_back({Subspace::zero(f, n)});
    for (std::size_t d = 0;; ++d) {
        std::vector<Subspace> next;
        std::unordered_map<Subspace, std::size_t, SubspaceHash> index;
        std::vector<std::vector<std::size_t>> links(lat.levels[d].size());
        for (std::size_t i = 0; i < lat.levels[d].size(); ++i) {
            const Subspace& u = lat.levels[d][i];
            Subspace r = rad_of(space, u);
            if (r.dim() == u.dim()) continue;
            for_each_quotient_line(r, u, [&](const Vec& w) {
                budget.spend();
                Subspace v = u.with(w);
                auto [it, fresh] = index.emplace(v, next.size());
                if (fresh) next.push_back(std::move(v));
                links[i].push_back(it->second);
            });
        }
        lat.links.push_back(std::move(links));
        if (next.empty()) break;
        lat.levels.push_back(std::move(next));
    }
    return lat;
}

/// Number of isotropic spaces of each dimension 0..n (zeros past α).
inline std::vector<std::size_t> isotropic_counts(const AltSpace& space, const Guard& guard = {}) {
    IsotropicLattice lat = enumerate_isotropic_lattice(space, guard);
    std::vector<std::size_t> c(space.n() + 1, 0);
    for (std::size_t d = 0; d < lat.levels.size(); ++d) c[d] = lat.levels[d].size();
    return c;
}

// ---------------------------------------------------------------------------
// Maximal isotropic spaces

/// All U with U = rad(U), read off the lattice nodes without upward links.
inline std::vector<Subspace> enumerate_maximal_filter(const AltSpace& space, const Guard& guard = {}) {
    IsotropicLattice lat = enumerate_isotropic_lattice(space, guard);
    std::vector<Subspace> out;
    for (std::size_t d = 0; d < lat.levels.size(); ++d)
        for (std::size_t i = 0; i < lat.levels[d].size(); ++i)
            if (lat.links[d][i].empty()) {
                if (!is_maximal_isotropic(space, lat.levels[d][i]))
                    throw VerificationError("lattice top is not maximal isotropic");
                out.push_back(lat.levels[d][i]);
            }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Maximal isotropic spaces of A restricted to W, as subspaces of the ambient
/// F^n. Every maximal space contains the radical; on the nondegenerate part a
/// minimum-degree v is picked and every maximal space contains some w that is
/// v itself or pairs nontrivially with v, and then lies inside rad(w).
class MaximalBrancher {
public:
    MaximalBrancher(const AltSpace& space, const Guard& guard) : a_(space), budget_(guard, "enumerate_maximal_branch") {}

    const std::vector<Subspace>& within(const Subspace& w) {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        budget_.spend();
        std::vector<Subspace> out = compute(w);
        return memo_.emplace(w, std::move(out)).first->second;
    }

private:
    std::vector<Subspace> compute(const Subspace& w) {
        const AltSpace local = restrict(a_, w);
        const Subspace rad_local = radical_space(local);
        if (rad_local.is_full()) return {w};
        const Subspace rad = w.lift(rad_local);
        const Subspace comp = w.lift(rad_local.coordinate_complement());
        const AltSpace core = restrict(a_, comp);  // nondegenerate, in comp's coordinates

        auto [deg, v] = min_degree_vector(core, Guard{std::numeric_limits<std::uint64_t>::max()});
        (void)deg;
        const Subspace rad_v = rad_of(core, v);
        std::set<Subspace> branches;
        auto consider = [&](const Vec& x) {
            budget_.spend();
            branches.insert(comp.lift(rad_of(core, x)));
        };
        consider(v);
        for_each_projective_point(core.field(), core.n(), [&](const Vec& x) {
            if (!rad_v.contains(x)) consider(x);
        });

        std::set<Subspace> found;
        for (const Subspace& b : branches)
            for (const Subspace& m : within(b)) {
                Subspace u = m + rad;
                if (rad_of(a_, u).intersect(w) == u) found.insert(std::move(u));
            }
        return {found.begin(), found.end()};
    }

    const AltSpace& a_;
    Budget budget_;
    std::unordered_map<Subspace, std::vector<Subspace>, SubspaceHash> memo_;
};

}  // namespace detail

inline std::vector<Subspace> enumerate_maximal_branch(const AltSpace& space, const Guard& guard = {}) {
    guard.require(projective_point_count(space.field(), space.n()), "enumerate_maximal_branch");
    detail::MaximalBrancher b(space, guard);
    std::vector<Subspace> out = b.within(Subspace::full(space.field(), space.n()));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// α

struct AlphaResult {
    std::size_t alpha = 0;
    Subspace witness;
};

inline AlphaResult alpha_exact(const AltSpace& space, const Guard& guard = {}) {
    IsotropicLattice lat = enumerate_isotropic_lattice(space, guard);
    AlphaResult r{lat.alpha(), lat.levels.back().front()};
    if (r.witness.dim() != r.alpha || !is_isotropic(space, r.witness))
        throw VerificationError("alpha_exact: witness failed verification");
    return r;
}

// ---------------------------------------------------------------------------
// χ

struct ChiResult {
    std::size_t chi = 0;
    DecompositionCertificate certificate;
};

namespace detail {

inline ChiResult verified(const AltSpace& space, std::size_t chi, std::vector<Subspace> parts, const char* who) {
    if (auto d = check_decomposition(space, parts); d != DecompositionDefect::None || parts.size() != chi)
        throw VerificationError(std::string(who) + ": certificate failed verification");
    return {chi, {std::move(parts)}};
}

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace detail

/// Iterative deepening over c: depth-first choice of c nonzero isotropic parts
/// in increasing lattice order whose sum is direct and equals F^n.
inline ChiResult chi_brute(const AltSpace& space, const Guard& guard = {}) {
    const std::size_t n = space.n();
    if (n == 0) return {0, {}};
    IsotropicLattice lat = enumerate_isotropic_lattice(space, guard);
    std::vector<Subspace> parts;  // nonzero isotropic spaces, dimension ascending
    for (std::size_t d = 1; d < lat.levels.size(); ++d)
        for (const auto& u : lat.levels[d]) parts.push_back(u);
    const std::size_t alpha = lat.alpha();
    Budget budget(guard, "chi_brute");

    std::vector<std::size_t> chosen;
    for (std::size_t c = detail::ceil_div(n, alpha); c <= n; ++c) {
        auto dfs = [&](auto& self, std::size_t from, const Subspace& sum, std::size_t depth) -> bool {
            budget.spend();
            const std::size_t rest = n - sum.dim();
            if (depth == c) return rest == 0;
            if (rest == 0) return false;
            const std::size_t slots = c - depth;
            if (rest > slots * alpha) return false;
            for (std::size_t i = from; i < parts.size(); ++i) {
                const Subspace& p = parts[i];
                // later parts are at least as large as this one
                if (p.dim() * slots > rest) break;
                Subspace next = sum + p;
                if (next.dim() != sum.dim() + p.dim()) continue;
                chosen.push_back(i);
                if (self(self, i + 1, next, depth + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        chosen.clear();
        if (dfs(dfs, 0, Subspace::zero(space.field(), n), 0)) {
            std::vector<Subspace> cert;
            for (auto i : chosen) cert.push_back(parts[i]);
            return detail::verified(space, c, std::move(cert), "chi_brute");
        }
    }
    throw VerificationError("chi_brute: no decomposition found");
}

namespace detail {

/// χ(A|_U) = 1 + min over maximal isotropic V of A|_U and complements W of V
/// in U of χ(A|_W), with χ(A|_0) = 0. Memoized on canonical U.
class LawlerSolver {
public:
    LawlerSolver(const AltSpace& space, const Guard& guard)
        : a_(space), guard_(guard), budget_(guard, "chi_lawler") {}

    std::size_t chi(const Subspace& u) {
        if (u.is_zero()) return 0;
        if (auto it = memo_.find(u); it != memo_.end()) return it->second.value;
        budget_.spend();
        Entry e = solve(u);
        std::size_t v = e.value;
        memo_.emplace(u, std::move(e));
        return v;
    }

    std::vector<Subspace> certificate(Subspace u) {
        std::vector<Subspace> parts;
        while (!u.is_zero()) {
            chi(u);
            const Entry& e = memo_.at(u);
            parts.push_back(e.part);
            u = e.rest;
        }
        return parts;
    }

private:
    struct Entry {
        std::size_t value;
        Subspace part, rest;
    };

    Entry solve(const Subspace& u) {
        const AltSpace local = restrict(a_, u);
        if (local.is_zero()) return {1, u, Subspace::zero(u.field(), u.ambient())};
        std::vector<Subspace> maximal = enumerate_maximal_branch(local, guard_);
        std::size_t alpha = 0;
        for (const auto& v : maximal) alpha = std::max(alpha, v.dim());
        const std::size_t floor = ceil_div(u.dim(), alpha);

        Entry best{std::numeric_limits<std::size_t>::max(), {}, {}};
        for (const Subspace& v : maximal) {
            // every complement W has dimension dim U - dim V and χ(W) >= dim W / α
            if (1 + ceil_div(u.dim() - v.dim(), alpha) >= best.value) continue;
            ComplementEnumerator comps(v, guard_);
            while (auto w = comps.next()) {
                budget_.spend();
                Subspace wg = u.lift(*w);
                std::size_t c = 1 + chi(wg);
                if (c < best.value) best = {c, u.lift(v), std::move(wg)};
                if (best.value == floor) return best;
            }
        }
        return best;
    }

    const AltSpace& a_;
    Guard guard_;
    Budget budget_;
    std::unordered_map<Subspace, Entry, SubspaceHash> memo_;
};

}  // namespace detail

inline ChiResult chi_lawler(const AltSpace& space, const Guard& guard = {}) {
    const std::size_t n = space.n();
    if (n == 0) return {0, {}};
    detail::LawlerSolver s(space, guard);
    Subspace full = Subspace::full(space.field(), n);
    std::size_t c = s.chi(full);
    return detail::verified(space, c, s.certificate(full), "chi_lawler");
}

inline DecompositionCertificate greedy_deg_decomposition(const AltSpace& space);

/// Least k such that k maximal isotropic spaces span F^n. Breadth-first over
/// spans: frontier k holds the W = <T_1 ∪ ... ∪ T_k> not reachable with fewer
/// parts (repeating a T never changes the span, so reachability is monotone in k).
/// With u parts known to suffice (greedy) and α the largest maximal dimension,
/// a span W at level k can only reach F^n by level u - 1 if n - dim W <= (u - 1 - k) α;
/// other spans are dropped, and failing to reach F^n before u proves χ = u.
inline ChiResult chi_maxcover(const AltSpace& space, const Guard& guard = {}) {
    const PrimeField f = space.field();
    const std::size_t n = space.n();
    if (n == 0) return {0, {}};
    if (space.is_zero()) return detail::verified(space, 1, {Subspace::full(f, n)}, "chi_maxcover");

    const std::vector<Subspace> mi = enumerate_maximal_branch(space, guard);
    std::size_t alpha = 0;
    for (const auto& t : mi) alpha = std::max(alpha, t.dim());
    DecompositionCertificate upper = greedy_deg_decomposition(space);
    const std::size_t u = upper.size();
    if (u == detail::ceil_div(n, alpha)) return detail::verified(space, u, std::move(upper.parts), "chi_maxcover");
    auto viable = [&](const Subspace& w, std::size_t k) { return k < u && n - w.dim() <= (u - 1 - k) * alpha; };

    Budget budget(guard, "chi_maxcover");
    struct Origin {
        std::optional<Subspace> parent;
        std::size_t via;
    };
    std::unordered_map<Subspace, Origin, SubspaceHash> seen;
    std::vector<Subspace> frontier;
    const Subspace full = Subspace::full(f, n);

    auto certificate = [&](Subspace w) {
        std::vector<Subspace> spanning;
        for (;;) {
            const Origin& o = seen.at(w);
            spanning.push_back(mi[o.via]);
            if (!o.parent) break;
            w = *o.parent;
        }
        std::reverse(spanning.begin(), spanning.end());
        return direct_sum_refinement(spanning);
    };

    for (std::size_t t = 0; t < mi.size(); ++t)
        if (viable(mi[t], 1) && seen.emplace(mi[t], Origin{std::nullopt, t}).second) frontier.push_back(mi[t]);
    for (std::size_t k = 1; !frontier.empty(); ++k) {
        if (seen.count(full)) return detail::verified(space, k, certificate(full), "chi_maxcover");
        std::vector<Subspace> next;
        for (const Subspace& w : frontier)
            for (std::size_t t = 0; t < mi.size(); ++t) {
                budget.spend();
                if (w.contains(mi[t])) continue;
                Subspace s = w + mi[t];
                if (!viable(s, k + 1)) continue;
                if (seen.emplace(s, Origin{w, t}).second) next.push_back(std::move(s));
            }
        frontier = std::move(next);
    }
    return detail::verified(space, u, std::move(upper.parts), "chi_maxcover");
}

// ---------------------------------------------------------------------------
// Greedy decomposition with O(Δ log n) parts

/// ceil(ln n / -ln(1 - 1/Δ)) + 1 for Δ >= 1, and 1 for Δ = 0, in IEEE doubles.
inline std::size_t greedy_part_bound(std::size_t n, std::size_t delta) {
    if (delta == 0) return 1;
    double denom = -std::log(1.0 - 1.0 / static_cast<double>(delta));
    return static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)) / denom)) + 1;
}

/// Each pass takes W = coordinate complement of the current sum U and grows S
/// from W one vector at a time (first RREF basis vector of W outside <S>),
/// shrinking W to W ∩ rad(w); the pass ends when W = <S>, which becomes a part.
inline DecompositionCertificate greedy_deg_decomposition(const AltSpace& space) {
    const PrimeField f = space.field();
    const std::size_t n = space.n();
    if (n == 0) throw std::invalid_argument("greedy_deg_decomposition: n must be at least 1");
    DecompositionCertificate cert;
    Subspace u = Subspace::zero(f, n);
    while (u.dim() < n) {
        Subspace w = u.coordinate_complement();
        Subspace s = Subspace::zero(f, n);
        while (w.dim() > s.dim()) {
            Vec x = *first_basis_vector_outside(w, s);
            s = s.with(x);
            w = w.intersect(rad_of(space, x));
        }
        cert.parts.push_back(s);
        u = u + s;
    }
    if (check_decomposition(space, cert.parts) != DecompositionDefect::None)
        throw VerificationError("greedy_deg_decomposition: output failed verification");
    return cert;
}

// ---------------------------------------------------------------------------
// Dimension-2 isotropic spaces

/// Linearly independent (v, w) with v^t A w = 0 for all A, if one exists.
inline std::optional<std::pair<Vec, Vec>> has_isotropic_dim2(const AltSpace& space, const Guard& guard = {}) {
    guard.require(projective_point_count(space.field(), space.n()), "has_isotropic_dim2");
    std::optional<std::pair<Vec, Vec>> out;
    for_each_projective_point(space.field(), space.n(), [&](const Vec& v) {
        if (codegree(space, v) < 2) return true;
        Subspace r = rad_of(space, v);
        out = std::make_pair(v, *first_basis_vector_outside(r, Subspace::span(space.field(), space.n(), {v})));
        return false;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Counting

/// Number of d-dimensional isotropic spaces of a nondegenerate alternating
/// form on F_q^n: prod_{i<d} (q^{n-i} - q^i) / (q^d - q^i).
inline BigInt isotropic_count_formula(std::size_t n, std::size_t d, unsigned q) {
    if (n % 2 != 0) throw std::invalid_argument("isotropic_count_formula: n must be even (no nondegenerate form)");
    if (q < 2) throw std::invalid_argument("isotropic_count_formula: q must be at least 2");
    if (d > n / 2) return 0;
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < d; ++i) {
        num *= big_pow(q, n - i) - big_pow(q, i);
        den *= big_pow(q, d) - big_pow(q, i);
    }
    if (num % den != 0) throw VerificationError("isotropic_count_formula: inexact division");
    return num / den;
}

/// Whether F^n = U ⊕ W with both parts isotropic, by exhaustion: some
/// isotropic U of dimension >= n/2 with an isotropic complement.
inline std::optional<std::pair<Subspace, Subspace>> isotropic_2_decomposition_brute(const AltSpace& space,
                                                                                     const Guard& guard = {}) {
    const std::size_t n = space.n();
    if (n < 2) return std::nullopt;
    IsotropicLattice lat = enumerate_isotropic_lattice(space, guard);
    Budget budget(guard, "isotropic_2_decomposition_brute");
    for (std::size_t d = (n + 1) / 2; d < std::min(n, lat.levels.size()); ++d)
        for (const Subspace& u : lat.levels[d]) {
            ComplementEnumerator comps(u, guard);
            while (auto w = comps.next()) {
                budget.spend();
                if (is_isotropic(space, *w)) return std::make_pair(u, *w);
            }
        }
    return std::nullopt;
}

}  // namespace altiso
