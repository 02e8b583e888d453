#include <gtest/gtest.h>

#include "altiso/gadgets.hpp"
#include "altiso/iso_exact.hpp"
#include "altiso/random.hpp"

using namespace altiso;

namespace {

// Singular nonzero member by scanning every coefficient vector.
bool brute_singular(const MatrixSpace& b) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < b.dim(); ++i) total *= b.field().p();
    for (std::size_t x = 1; x < total; ++x) {
        Matrix m(b.field(), b.s(), b.t());
        for (std::size_t k = 0, y = x; k < b.dim(); ++k, y /= b.field().p())
            m = m + b.basis()[k].scaled(Elem(y % b.field().p()));
        if (!m.is_zero() && rank(m) < b.s()) return true;
    }
    return false;
}

std::vector<Matrix> random_slices(Rng& rng, const PrimeField& f, std::size_t n, std::size_t m) {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_matrix(f, n, m, rng));
    return out;
}

}  // namespace

TEST(Singular, MatchesExhaustiveScan) {
    Rng rng(61);
    for (unsigned p : {2u, 3u})
        for (int it = 0; it < 40; ++it) {
            PrimeField f(p);
            std::size_t n = uniform_index(rng, 1, 3);
            MatrixSpace b = random_matrix_space(f, n, n, uniform_index(rng, 1, 3), rng);
            auto w = singular_exists_brute(b);
            EXPECT_EQ(w.has_value(), brute_singular(b));
            if (w) {
                EXPECT_FALSE(w->matrix.is_zero());
                EXPECT_LT(rank(w->matrix), n);
            }
        }
}

TEST(Singular, RequiresSquare) {
    EXPECT_THROW(singular_exists_brute(MatrixSpace(PrimeField(2), 2, 3)), std::invalid_argument);
}

TEST(Singular, InvertibleOnlySpace) {
    // F_4 as 2x2 matrices over F_2: every nonzero member is invertible
    PrimeField f(2);
    MatrixSpace field4(f, 2, 2, {Matrix::identity(f, 2), Matrix::from_rows(f, {{0, 1}, {1, 1}})});
    EXPECT_FALSE(singular_exists_brute(field4).has_value());
}

TEST(VerticalSlices, Transposition) {
    Rng rng(62);
    PrimeField f(3);
    std::vector<Matrix> tuple;
    for (int k = 0; k < 2; ++k) tuple.push_back(random_matrix(f, 3, 3, rng));
    auto slices = vertical_slices(tuple);
    ASSERT_EQ(slices.size(), 3u);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(slices[j](i, k), tuple[k](i, j));
}

TEST(Dim2Gadget, Shape) {
    PrimeField f(3);
    Rng rng(63);
    auto b = random_slices(rng, f, 3, 2);
    AltSpace g = dim2_gadget(b);
    EXPECT_EQ(g.n(), 5u);
    // the two blocks contribute all alternating forms on the first 3 and the last 2 coordinates
    EXPECT_GE(g.dim(), 3u + 1u);
    EXPECT_THROW(dim2_gadget({random_matrix(f, 2, 2, rng)}), std::invalid_argument);
}

TEST(Dim2Gadget, EquivalenceWithRightDegree) {
    Rng rng(64);
    for (unsigned p : {2u, 3u})
        for (int it = 0; it < 60; ++it) {
            PrimeField f(p);
            std::size_t n = uniform_index(rng, 1, 3), m = uniform_index(rng, 1, 3);
            auto b = random_slices(rng, f, n, m);
            AltSpace g = dim2_gadget(b);
            EXPECT_EQ(right_degree_min(b) < n, has_isotropic_dim2(g).has_value());
        }
}

TEST(Dim2Gadget, RightDegreeByDefinition) {
    Rng rng(65);
    PrimeField f(2);
    for (int it = 0; it < 30; ++it) {
        std::size_t n = uniform_index(rng, 1, 3), m = uniform_index(rng, 1, 3);
        auto b = random_slices(rng, f, n, m);
        std::size_t best = n;
        for (std::size_t x = 1; x < (std::size_t{1} << m); ++x) {
            Vec v(m);
            for (std::size_t i = 0; i < m; ++i) v[i] = Elem((x >> i) & 1u);
            std::vector<Vec> cols;
            for (const auto& s : b) cols.push_back(s.apply(v));
            best = std::min(best, rank(Matrix::from_vectors(f, n, cols)));
        }
        EXPECT_EQ(right_degree_min(b), best);
    }
}

TEST(Baer, ReferenceGroup) {
    PrimeField f(3);
    AltSpace a(f, 2, {Matrix::unit_alternating(f, 2, 0, 1)});
    auto gens = baer_generators(a);
    ASSERT_EQ(gens.size(), 3u);
    MatrixGroupClosure g = group_closure(gens);
    EXPECT_EQ(g.order(), 27u);
    EXPECT_EQ(g.commutator_subgroup().size(), 3u);
    EXPECT_FALSE(g.is_abelian());
    EXPECT_EQ(max_abelian_order_brute(g), 9u);
    EXPECT_EQ(g.abelian_subgroup_orders(), (std::set<std::size_t>{1, 3, 9}));
}

TEST(Baer, RequiresOddCharacteristic) {
    PrimeField f(2);
    EXPECT_THROW(baer_generators(AltSpace(f, 2, {Matrix::unit_alternating(f, 2, 0, 1)})), std::invalid_argument);
}

TEST(Baer, OrderAndCorrespondence) {
    Rng rng(66);
    PrimeField f(3);
    for (int it = 0; it < 12; ++it) {
        std::size_t n = uniform_index(rng, 2, 3);
        AltSpace a = random_alt_space(f, n, 1, rng);
        if (a.dim() == 0) continue;
        MatrixGroupClosure g = group_closure(baer_generators(a));
        std::size_t order = 1;
        for (std::size_t i = 0; i < n + a.dim(); ++i) order *= 3;
        EXPECT_EQ(g.order(), order);
        EXPECT_EQ(g.commutator_subgroup().size(), 3u);
        auto orders = g.abelian_subgroup_orders();
        const std::size_t alpha = alpha_exact(a).alpha;
        std::size_t pw = 3;
        for (std::size_t d = 0; d <= n; ++d, pw *= 3) EXPECT_EQ(orders.count(pw) == 1, alpha >= d) << d;
    }
}

TEST(GroupClosure, TableIsConsistent) {
    PrimeField f(3);
    AltSpace a(f, 2, {Matrix::unit_alternating(f, 2, 0, 1)});
    MatrixGroupClosure g = group_closure(baer_generators(a));
    for (std::size_t x = 0; x < g.order(); ++x) {
        EXPECT_EQ(g.mul(x, g.inv(x)), 0u);
        EXPECT_EQ(g.mul(0, x), x);
        for (std::size_t y = 0; y < g.order(); ++y) EXPECT_EQ(g.elements()[g.mul(x, y)], g.elements()[x] * g.elements()[y]);
    }
    EXPECT_THROW(group_closure({Matrix(f, 2, 2)}), std::invalid_argument);
    EXPECT_THROW(group_closure(baer_generators(a), Guard{5}), GuardExceeded);
}
