#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "altiso/ffield.hpp"
#include "altiso/random.hpp"

using namespace altiso;

namespace {

// Counts ordered independent d-tuples in F_q^n by brute force, then divides by
// |GL_d(q)|: an oracle for the Gaussian binomial that shares no code with it.
unsigned long long brute_gaussian(std::size_t n, std::size_t d, unsigned q) {
    PrimeField f(q);
    std::vector<Vec> all;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    for (std::size_t x = 0; x < total; ++x) {
        Vec v(n);
        for (std::size_t i = 0, y = x; i < n; ++i, y /= q) v[i] = Elem(y % q);
        all.push_back(v);
    }
    unsigned long long tuples = 0;
    std::function<void(std::vector<Vec>&)> rec = [&](std::vector<Vec>& cur) {
        if (cur.size() == d) {
            ++tuples;
            return;
        }
        for (const auto& v : all) {
            cur.push_back(v);
            if (rank(Matrix::from_vectors(f, n, cur)) == cur.size()) rec(cur);
            cur.pop_back();
        }
    };
    std::vector<Vec> cur;
    rec(cur);
    unsigned long long gl = 1, qd = 1;
    for (std::size_t i = 0; i < d; ++i) qd *= q;
    for (std::size_t i = 0, qi = 1; i < d; ++i, qi *= q) gl *= qd - qi;
    return tuples / gl;
}

}  // namespace

TEST(PrimeField, RejectsNonPrimes) {
    EXPECT_THROW(PrimeField(1), std::invalid_argument);
    EXPECT_THROW(PrimeField(4), std::invalid_argument);
    EXPECT_THROW(PrimeField(253), std::invalid_argument);
    EXPECT_NO_THROW(PrimeField(251));
}

TEST(PrimeField, FieldAxioms) {
    for (unsigned p : {2u, 3u, 5u, 7u, 251u}) {
        PrimeField f(p);
        for (unsigned a = 0; a < std::min(p, 40u); ++a) {
            EXPECT_EQ(f.add(Elem(a), f.neg(Elem(a))), 0);
            EXPECT_EQ(f.sub(Elem(a), Elem(a)), 0);
            if (a) EXPECT_EQ(f.mul(Elem(a), f.inv(Elem(a))), 1);
        }
        EXPECT_EQ(f.reduce(-1), Elem(p - 1));
        EXPECT_THROW(f.inv(0), std::domain_error);
    }
}

TEST(Matrix, RrefRankInverse) {
    PrimeField f(3);
    Matrix m = Matrix::from_rows(f, {{1, 2, 0}, {2, 1, 0}, {0, 0, 1}});
    EXPECT_EQ(rank(m), 2u);
    EXPECT_FALSE(inverse(m).has_value());
    Matrix g = Matrix::from_rows(f, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    auto gi = inverse(g);
    ASSERT_TRUE(gi.has_value());
    EXPECT_EQ(g * *gi, Matrix::identity(f, 3));
}

TEST(Matrix, RandomInverseProperty) {
    Rng rng(11);
    for (unsigned p : {2u, 3u, 5u}) {
        PrimeField f(p);
        for (int it = 0; it < 50; ++it) {
            Matrix m = random_matrix(f, 4, 4, rng);
            auto inv = inverse(m);
            EXPECT_EQ(inv.has_value(), rank(m) == 4);
            if (inv) EXPECT_EQ(*inv * m, Matrix::identity(f, 4));
        }
    }
}

TEST(Subspace, KernelAndRankNullity) {
    Rng rng(12);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int it = 0; it < 40; ++it) {
            std::size_t r = uniform_index(rng, 1, 4), c = uniform_index(rng, 1, 5);
            Matrix m = random_matrix(f, r, c, rng);
            Subspace k = kernel(m);
            EXPECT_EQ(k.dim() + rank(m), c);
            for (const auto& v : k.basis_vectors()) EXPECT_TRUE(is_zero(m.apply(v)));
        }
    }
}

TEST(Subspace, CanonicalForm) {
    PrimeField f(3);
    Subspace a = Subspace::span(f, 3, {{1, 1, 0}, {0, 1, 1}});
    Subspace b = Subspace::span(f, 3, {{1, 2, 1}, {2, 0, 1}});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_FALSE(a.contains(Vec{1, 2, 2}));
}

TEST(Subspace, IntersectionDimensionFormula) {
    Rng rng(13);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int it = 0; it < 60; ++it) {
            std::size_t n = uniform_index(rng, 1, 6);
            Subspace a = Subspace::row_space(random_matrix(f, uniform_index(rng, 1, n), n, rng));
            Subspace b = Subspace::row_space(random_matrix(f, uniform_index(rng, 1, n), n, rng));
            Subspace i = a.intersect(b);
            EXPECT_EQ(a.dim() + b.dim(), (a + b).dim() + i.dim());
            EXPECT_TRUE(a.contains(i));
            EXPECT_TRUE(b.contains(i));
            EXPECT_EQ(a.annihilator().dim(), n - a.dim());
            Subspace c = a.coordinate_complement();
            EXPECT_TRUE((a + c).is_full());
            EXPECT_EQ(a.dim() + c.dim(), n);
        }
    }
}

TEST(Subspace, LiftRestrictRoundTrip) {
    Rng rng(14);
    PrimeField f(3);
    for (int it = 0; it < 40; ++it) {
        Subspace outer = Subspace::row_space(random_matrix(f, 3, 5, rng));
        Subspace inner = Subspace::row_space(random_matrix(f, 2, outer.dim(), rng));
        Subspace lifted = outer.lift(inner);
        EXPECT_TRUE(outer.contains(lifted));
        EXPECT_EQ(lifted.dim(), inner.dim());
        EXPECT_EQ(outer.restrict_to(lifted), inner);
    }
}

TEST(SolveLinear, SolutionsSatisfySystem) {
    Rng rng(15);
    PrimeField f(5);
    for (int it = 0; it < 40; ++it) {
        Matrix a = random_matrix(f, 3, 4, rng);
        Vec x0(4);
        for (auto& x : x0) x = random_elem(f, rng);
        Matrix rhs = Matrix::column(f, a.apply(x0));
        auto sol = solve_linear(a, rhs);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(a * sol->particular, rhs);
        EXPECT_EQ(sol->homogeneous, kernel(a));
    }
    Matrix z = Matrix::from_rows(f, {{1, 0}, {1, 0}});
    EXPECT_FALSE(solve_linear(z, Matrix::from_rows(f, {{1}, {2}})).has_value());
}

TEST(Enumeration, GaussianBinomialAgainstBruteCount) {
    for (unsigned q : {2u, 3u})
        for (std::size_t n = 0; n <= 4; ++n)
            for (std::size_t d = 0; d <= n; ++d) {
                const auto expected = brute_gaussian(n, d, q);
                EXPECT_EQ(gaussian_binomial(n, d, q), BigInt(expected)) << n << ' ' << d << ' ' << q;
                EXPECT_EQ(enumerate_subspaces(PrimeField(q), n, d).size(), expected);
            }
}

TEST(Enumeration, SubspacesAreDistinctAndOfRequestedDimension) {
    PrimeField f(2);
    auto all = enumerate_subspaces(f, 5, std::size_t{2});
    std::set<Subspace> seen(all.begin(), all.end());
    EXPECT_EQ(seen.size(), all.size());
    for (const auto& s : all) EXPECT_EQ(s.dim(), 2u);
}

TEST(Enumeration, GaussianSymmetryAndLargeValues) {
    for (unsigned q : {2u, 3u, 7u})
        for (std::size_t n = 0; n <= 12; ++n)
            for (std::size_t d = 0; d <= n; ++d) EXPECT_EQ(gaussian_binomial(n, d, q), gaussian_binomial(n, n - d, q));
    EXPECT_EQ(gaussian_binomial(4, 2, 2), 35);
    EXPECT_EQ(gaussian_binomial(3, 4, 2), 0);
}

TEST(Enumeration, ComplementsCountAndValidity) {
    Rng rng(16);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int it = 0; it < 10; ++it) {
            std::size_t n = uniform_index(rng, 1, 4);
            Subspace u = Subspace::row_space(random_matrix(f, uniform_index(rng, 1, n), n, rng));
            auto comps = enumerate_complements(u);
            // q^{k(n-k)} complements of a k-dimensional space
            EXPECT_EQ(BigInt(comps.size()), big_pow(p, u.dim() * (n - u.dim())));
            for (const auto& w : comps) {
                EXPECT_TRUE((u + w).is_full());
                EXPECT_TRUE(u.intersect(w).is_zero());
            }
        }
    }
}

TEST(Enumeration, ProjectivePoints) {
    for (unsigned p : {2u, 3u, 5u}) {
        PrimeField f(p);
        std::size_t count = 0;
        std::set<Subspace> lines;
        for_each_projective_point(f, 3, [&](const Vec& v) {
            ++count;
            lines.insert(Subspace::span(f, 3, {v}));
            return true;
        });
        EXPECT_EQ(count, p * p + p + 1);
        EXPECT_EQ(lines.size(), count);
        EXPECT_EQ(projective_point_count(f, 3), static_cast<long double>(count));
    }
}

TEST(Guard, Enforced) {
    EXPECT_THROW(enumerate_subspaces(PrimeField(2), 8, std::nullopt, Guard{10}), GuardExceeded);
}
