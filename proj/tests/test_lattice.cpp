#include <random>

#include "doctest.h"
#include "gwtqft/error.hpp"
#include "gwtqft/lattice.hpp"

using namespace gwtqft;

namespace {

Rational R(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<RationalVector> rs;
    for (auto& r : rows) {
        RationalVector v;
        for (long x : r) v.emplace_back(x);
        rs.push_back(v);
    }
    return RationalMatrix::from_rows(rs);
}

RationalMatrix diag_matrix(const SmithDecomposition& s, std::size_t rows, std::size_t cols) {
    RationalMatrix d(rows, cols);
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) d(i, i) = s.diagonal[i];
    return d;
}

void check_smith(const RationalMatrix& b) {
    const auto s = smith_normal_form(b);
    CHECK(s.left * diag_matrix(s, b.rows(), b.cols()) * s.right == b);
    CHECK(abs(s.left.det()) == 1);
    CHECK(abs(s.right.det()) == 1);
    CHECK(s.left * s.left_inv == RationalMatrix::identity(b.rows()));
    CHECK(s.right * s.right_inv == RationalMatrix::identity(b.cols()));
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
        if (s.diagonal[i + 1] == 0) continue;
        CHECK(s.diagonal[i] != 0);
        CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    }
}

// Brute-force group order of Z^r / B Z^r: count integer points of the box [0, |det|)^r
// that are pairwise inequivalent, for tiny cases only.
long brute_order(const RationalMatrix& b) {
    const RationalMatrix inv = b.inverse();
    const long det = std::labs(to_long(b.det()));
    const std::size_t r = b.rows();
    std::vector<RationalVector> keys;
    std::vector<long> x(r, 0);
    while (true) {
        RationalVector v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = x[i];
        RationalVector k = inv * v;
        for (auto& e : k) e = frac(e);
        bool seen = false;
        for (auto& kk : keys)
            if (kk == k) seen = true;
        if (!seen) keys.push_back(k);
        std::size_t i = 0;
        while (i < r && ++x[i] == det) x[i++] = 0;
        if (i == r) break;
    }
    return static_cast<long>(keys.size());
}

}  // namespace

TEST_CASE("smith normal form examples") {
    auto s = smith_normal_form(mat({{0, 3}, {3, 3}}));
    CHECK(s.diagonal == std::vector<Integer>{3, 3});
    s = smith_normal_form(RationalMatrix::identity(2));
    CHECK(s.diagonal == std::vector<Integer>{1, 1});
    CHECK(s.left == RationalMatrix::identity(2));
    CHECK(s.right == RationalMatrix::identity(2));
    s = smith_normal_form(mat({{0, 2}, {2, 1}}));
    CHECK(s.diagonal == std::vector<Integer>{1, 4});
    RationalMatrix half(1, 1);
    half(0, 0) = Rational(1, 2);
    CHECK_THROWS_AS(smith_normal_form(half), Error);
    check_smith(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    check_smith(mat({{0, 0}, {0, 0}}));
    check_smith(mat({{6, 4}, {4, 6}, {2, 2}}));
}

TEST_CASE("discriminant groups of the gl(1|1) family") {
    // (s, 2u): |D| = s^2, factors (gcd(s, 2u), s^2 / gcd)
    for (auto [s, two_u] : std::vector<std::pair<long, long>>{{3, 3}, {5, 5}, {2, 1}, {4, 2}, {6, 3}}) {
        const DiscriminantGroup d(mat({{0, s}, {s, two_u}}));
        CHECK(d.order() == s * s);
        const long g = std::gcd(s, two_u);
        std::vector<Integer> expect;
        if (g != 1) expect.emplace_back(g);
        expect.emplace_back(s * s / g);
        CHECK(d.invariant_factors() == expect);
        CHECK(d.representatives().size() == static_cast<std::size_t>(s * s));
    }
    const DiscriminantGroup two(mat({{2}}));
    CHECK(two.order() == 2);
    CHECK(two.representatives().size() == 2);
    CHECK(two.same_class({Rational(3)}, {Rational(1)}));
    CHECK(!two.same_class({Rational(0)}, {Rational(1)}));
    CHECK(DiscriminantGroup(RationalMatrix::identity(2)).order() == 1);
    CHECK_THROWS_AS(DiscriminantGroup(mat({{1, 1}, {1, 1}})), Error);
}

TEST_CASE("discriminant order matches determinant and representatives are distinct") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> ent(-9, 9);
    std::uniform_int_distribution<int> dim(1, 4);
    int done = 0;
    while (done < 200) {
        const int r = dim(rng);
        RationalMatrix b(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) b(i, j) = b(j, i) = ent(rng);
        if (sgn(b.det()) == 0) continue;
        ++done;
        const DiscriminantGroup d(b);
        CHECK(d.order() == Rational(abs(b.det())).get_num());
        check_smith(b);
        // generators have the advertised orders
        const auto f = d.invariant_factors();
        const auto g = d.generators();
        REQUIRE(f.size() == g.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(d.same_class(scale(g[i], Rational(f[i])), RationalVector(r)));
            if (f[i] > 1) CHECK(!d.same_class(g[i], RationalVector(r)));
        }
        if (d.order() <= 40 && r <= 2) {
            const auto reps = d.representatives();
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK(!d.same_class(reps[i], reps[j]));
            CHECK(brute_order(b) == static_cast<long>(reps.size()));
        }
    }
}

TEST_CASE("metric maps") {
    const MetricMaps h(mat({{0, 1}, {1, 0}}));
    CHECK(h.kappa_dual({1, 0}, {0, 1}) == 1);
    CHECK(h.kappa_dual({1, 0}, {1, 0}) == 0);
    CHECK(!is_even_integral(mat({{1, 1}, {1, 0}})));
    CHECK(is_even_integral(mat({{0, 3}, {3, 4}})));
    const MetricMaps two(mat({{2}}));
    CHECK(two.kappa_flat({Rational(1)}) == RationalVector{Rational(2)});

    // kappa^vee(kappa_flat(gamma), lambda) = lambda(gamma)
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> ent(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        RationalMatrix b(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) b(i, j) = b(j, i) = ent(rng);
        if (sgn(b.det()) == 0) continue;
        const MetricMaps m(b);
        RationalVector gamma(3), lambda(3);
        for (int i = 0; i < 3; ++i) {
            gamma[i] = R(ent(rng), 3);
            lambda[i] = R(ent(rng), 7);
        }
        CHECK(m.kappa_dual(m.kappa_flat(gamma), lambda) == dot(gamma, lambda));
    }
}

TEST_CASE("signature") {
    CHECK(signature(mat({{1}})) == Signature{1, 0, 0});
    CHECK(signature(mat({{-1}})) == Signature{0, 1, 0});
    CHECK(signature(mat({{0, 1}, {1, 0}})) == Signature{1, 1, 0});
    CHECK(signature(mat({{2, 0}, {0, -3}})) == Signature{1, 1, 0});
    CHECK(signature(mat({{0, 0}, {0, 0}})) == Signature{0, 0, 2});
    CHECK_THROWS_AS(signature(mat({{0, 1}, {2, 0}})), Error);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> ent(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        RationalMatrix m(3, 3), u = RationalMatrix::identity(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = ent(rng);
        // random unimodular U as a product of elementary matrices
        for (int k = 0; k < 6; ++k) {
            RationalMatrix e = RationalMatrix::identity(3);
            const int i = static_cast<int>(rng() % 3), j = static_cast<int>((i + 1 + rng() % 2) % 3);
            e(i, j) = ent(rng);
            u = u * e;
        }
        const Signature a = signature(m), b = signature(u.transpose() * m * u);
        CHECK(a == b);
        CHECK(a.positives + a.negatives + a.zeros == 3);
    }
}

TEST_CASE("rational lattices") {
    // Gamma^vee for the gl(1|1) lattice with (s, t, u) = (3, 1, 3/2)
    RationalMatrix g(2, 2);
    g(0, 1) = 3;
    g(1, 0) = 1;
    g(1, 1) = Rational(3, 2);
    const RationalLattice dual = RationalLattice::dual_of(g);
    CHECK(dual.lattice_rank() == 2);
    CHECK(dual.contains({Rational(1), Rational(0)}));
    CHECK(dual.contains({Rational(-1, 2), Rational(1, 3)}));
    CHECK(!dual.contains({Rational(0), Rational(1, 2)}));

    const RationalLattice z2(2, {{1, 0}, {0, 1}});
    const RationalLattice sub(2, {{2, 0}, {0, 3}});
    CHECK(z2.contains_subgroup(sub));
    CHECK(*z2.index_of(sub) == 6);
    const RationalLattice line(2, {}, {{1, 0}});
    const RationalLattice mixed(2, {{0, 1}}, {{1, 0}});
    CHECK(mixed.contains({Rational(5, 7), Rational(2)}));
    CHECK(!mixed.contains({Rational(0), Rational(1, 2)}));
    CHECK(mixed.contains_subgroup(line));
    CHECK(!mixed.index_of(line).has_value());
    CHECK(*mixed.index_of(RationalLattice(2, {{0, 2}}, {{1, 0}})) == 2);
    CHECK(*line.index_of(line) == 1);
}
