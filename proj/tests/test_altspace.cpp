#include <gtest/gtest.h>

#include "altiso/altspace.hpp"
#include "altiso/decomposition.hpp"
#include "altiso/random.hpp"

using namespace altiso;

namespace {

std::vector<Vec> all_vectors(const PrimeField& f, std::size_t n) {
    std::vector<Vec> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= f.p();
    for (std::size_t x = 0; x < total; ++x) {
        Vec v(n);
        for (std::size_t i = 0, y = x; i < n; ++i, y /= f.p()) v[i] = Elem(y % f.p());
        out.push_back(v);
    }
    return out;
}

bool pairs_vanish(const AltSpace& a, const Vec& u, const Vec& v) {
    for (const auto& m : a.basis())
        if (m.bilinear(u, v) != 0) return false;
    return true;
}

// Radical by scanning every vector against every vector.
std::size_t brute_radical_size(const AltSpace& a) {
    auto vs = all_vectors(a.field(), a.n());
    std::size_t count = 0;
    for (const auto& v : vs) {
        bool in = true;
        for (const auto& w : vs)
            if (!pairs_vanish(a, v, w)) {
                in = false;
                break;
            }
        count += in;
    }
    return count;
}

}  // namespace

TEST(AltSpace, RejectsBadBasis) {
    PrimeField f(3);
    EXPECT_THROW(AltSpace(f, 2, {Matrix::from_rows(f, {{1, 0}, {0, 0}})}), InvalidSpace);
    EXPECT_THROW(AltSpace(f, 2, {Matrix::from_rows(f, {{0, 1}, {1, 0}})}), InvalidSpace);
    Matrix j = Matrix::unit_alternating(f, 2, 0, 1);
    EXPECT_THROW(AltSpace(f, 2, {j, j.scaled(2)}), InvalidSpace);
    EXPECT_EQ(AltSpace::span_of(f, 2, {j, j.scaled(2)}).dim(), 1u);
}

TEST(AltSpace, DiagonalMustVanishInCharacteristicTwo) {
    PrimeField f(2);
    // symmetric with zero diagonal is alternating over F_2; nonzero diagonal is not
    EXPECT_NO_THROW(AltSpace(f, 2, {Matrix::from_rows(f, {{0, 1}, {1, 0}})}));
    EXPECT_THROW(AltSpace(f, 2, {Matrix::from_rows(f, {{1, 1}, {1, 0}})}), InvalidSpace);
}

TEST(AltSpace, RadicalMatchesBruteForce) {
    Rng rng(21);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int it = 0; it < 40; ++it) {
            AltSpace a = random_alt_space(f, uniform_index(rng, 1, 5), uniform_index(rng, 0, 3), rng);
            Subspace r = radical_space(a);
            std::size_t expected = 1;
            for (std::size_t i = 0; i < r.dim(); ++i) expected *= p;
            EXPECT_EQ(brute_radical_size(a), expected);
        }
    }
}

TEST(AltSpace, RadOfSubspaceIsOrthogonalComplement) {
    Rng rng(22);
    PrimeField f(3);
    for (int it = 0; it < 40; ++it) {
        std::size_t n = uniform_index(rng, 2, 5);
        AltSpace a = random_alt_space(f, n, uniform_index(rng, 1, 3), rng);
        Subspace u = Subspace::row_space(random_matrix(f, uniform_index(rng, 1, n), n, rng));
        Subspace r = rad_of(a, u);
        for (const auto& v : all_vectors(f, n)) {
            bool orth = true;
            for (const auto& b : u.basis_vectors()) orth = orth && pairs_vanish(a, v, b);
            EXPECT_EQ(orth, r.contains(v));
        }
    }
}

TEST(AltSpace, DegreeIsRankOfImages) {
    Rng rng(23);
    PrimeField f(2);
    for (int it = 0; it < 30; ++it) {
        std::size_t n = uniform_index(rng, 2, 5);
        AltSpace a = random_alt_space(f, n, uniform_index(rng, 1, 3), rng);
        std::size_t best = 0;
        for (const auto& v : all_vectors(f, n)) {
            if (is_zero(v)) continue;
            std::vector<Vec> imgs;
            for (const auto& m : a.basis()) imgs.push_back(m.apply(v));
            std::size_t d = rank(Matrix::from_vectors(f, n, imgs));
            EXPECT_EQ(degree(a, v), d);
            EXPECT_EQ(codegree(a, v), n - d);
            EXPECT_EQ(rad_of(a, v).dim(), n - d);
            best = std::max(best, d);
        }
        EXPECT_EQ(max_degree(a), best);
        EXPECT_EQ(degree(a, min_degree_vector(a).second), min_degree_vector(a).first);
    }
}

TEST(AltSpace, IsotropyAgainstPairwiseCheck) {
    Rng rng(24);
    PrimeField f(3);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = uniform_index(rng, 2, 5);
        AltSpace a = random_alt_space(f, n, uniform_index(rng, 1, 2), rng);
        Subspace u = Subspace::row_space(random_matrix(f, uniform_index(rng, 1, 2), n, rng));
        bool iso = true;
        for (const auto& x : u.basis_vectors())
            for (const auto& y : u.basis_vectors()) iso = iso && pairs_vanish(a, x, y);
        EXPECT_EQ(is_isotropic(a, u), iso);
        if (iso) EXPECT_TRUE(rad_of(a, u).contains(u));
    }
}

TEST(AltSpace, NondegeneratePartSplitsOffRadical) {
    Rng rng(25);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int it = 0; it < 40; ++it) {
            AltSpace a = random_alt_space(f, uniform_index(rng, 1, 6), uniform_index(rng, 0, 3), rng);
            NondegeneratePart np = nondegenerate_part(a);
            EXPECT_TRUE(is_nondegenerate(np.space));
            EXPECT_EQ(np.space.n() + np.radical.dim(), a.n());
            EXPECT_TRUE(inverse(np.transform).has_value());
            AltSpace moved = isometry_transform(a, np.transform);
            for (std::size_t k = 0; k < moved.dim(); ++k) {
                const std::size_t c = np.space.n();
                for (std::size_t i = 0; i < a.n(); ++i)
                    for (std::size_t j = 0; j < a.n(); ++j)
                        if (i >= c || j >= c) EXPECT_EQ(moved[k](i, j), 0);
            }
        }
    }
}

TEST(AltSpace, MaxRankBounds) {
    Rng rng(26);
    PrimeField f(3);
    for (int it = 0; it < 30; ++it) {
        AltSpace a = random_alt_space(f, uniform_index(rng, 1, 5), uniform_index(rng, 0, 3), rng);
        std::size_t r = max_rank_bruteforce(a);
        EXPECT_EQ(r % 2, 0u);
        EXPECT_LE(r, a.n());
        for (const auto& m : a.basis()) EXPECT_LE(rank(m), r);
    }
}

TEST(Decomposition, Defects) {
    PrimeField f(2);
    AltSpace a(f, 2, {Matrix::unit_alternating(f, 2, 0, 1)});
    Subspace e1 = Subspace::span(f, 2, {{1, 0}}), e2 = Subspace::span(f, 2, {{0, 1}});
    EXPECT_EQ(check_decomposition(a, {e1, e2}), DecompositionDefect::None);
    EXPECT_EQ(check_decomposition(a, {Subspace::full(f, 2)}), DecompositionDefect::NotIsotropic);
    EXPECT_EQ(check_decomposition(a, {e1}), DecompositionDefect::NotDirectSum);
    EXPECT_EQ(check_decomposition(a, {e1, e1, e2}), DecompositionDefect::NotDirectSum);
    EXPECT_EQ(check_decomposition(a, {e1, Subspace::zero(f, 2), e2}), DecompositionDefect::ZeroPart);
    EXPECT_EQ(check_decomposition(a, {e1, Subspace::span(f, 3, {{0, 1, 0}})}), DecompositionDefect::WrongSpace);
}

TEST(Decomposition, DirectSumRefinement) {
    PrimeField f(3);
    std::vector<Subspace> spanning{Subspace::span(f, 3, {{1, 0, 0}, {0, 1, 0}}), Subspace::span(f, 3, {{0, 1, 0}, {0, 0, 1}})};
    auto parts = direct_sum_refinement(spanning);
    std::size_t total = 0;
    Subspace sum = Subspace::zero(f, 3);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        total += parts[i].dim();
        sum = sum + parts[i];
    }
    EXPECT_EQ(total, 3u);
    EXPECT_TRUE(sum.is_full());
}
