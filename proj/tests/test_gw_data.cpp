#include <random>

#include "doctest.h"
#include "gwtqft/error.hpp"
#include "gwtqft/gw_data.hpp"

using namespace gwtqft;

namespace {

Rational R(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

RationalMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<RationalVector> rs;
    for (auto& r : rows) rs.emplace_back(r);
    return RationalMatrix::from_rows(rs);
}

GWInput gl11() { return GWInput(mat({{0, 1}, {1, 0}}), mat({{1}, {0}})); }

}  // namespace

TEST_CASE("gl(1|1) input passes every check") {
    const auto rep = check_input(gl11());
    CHECK(rep.all_pass());
    CHECK(rep.entries.size() == 4);
    CHECK(effective_metric(gl11()) == mat({{1, 1}, {1, 0}}));
}

TEST_CASE("fundamental identity failure has a witness") {
    const GWInput bad(mat({{2}}), mat({{1}}));
    const auto rep = check_input(bad);
    CHECK(!rep.all_pass());
    const auto* fi = rep.find("fundamental_identity");
    REQUIRE(fi);
    CHECK(!fi->pass);
    CHECK(fi->witness.find("1/2") != std::string::npos);
}

TEST_CASE("hypermultiplet roots satisfy the identity for any top block") {
    for (int a : {1, 2, -3}) {
        const GWInput h(mat({{0, 1}, {1, 0}}), mat({{a}, {0}}));
        CHECK(check_input(h).find("fundamental_identity")->pass);
    }
    const GWInput h2(mat({{0, 1}, {1, 0}}), mat({{1, 1}, {0, 0}}));
    CHECK(check_input(h2).find("fundamental_identity")->pass);
}

TEST_CASE("root assumptions") {
    const GWInput zero_root(mat({{0, 1}, {1, 0}}), mat({{1, 0}, {0, 0}}));
    CHECK(!check_input(zero_root).find("no_zero_roots")->pass);
    const GWInput opposite(mat({{0, 1}, {1, 0}}), mat({{1, -1}, {0, 0}}));
    const auto* un = check_input(opposite).find("unimodular");
    CHECK(!un->pass);
    CHECK(un->witness.find("{") != std::string::npos);
    const GWInput frac_dual(mat({{0, 2}, {2, 0}}), mat({{1}, {0}}));
    CHECK(!check_input(frac_dual).find("dual_integrality")->pass);
    RationalMatrix big(2, 13);
    for (int i = 0; i < 13; ++i) big(0, i) = 1;
    CHECK_THROWS_AS(check_input(GWInput(mat({{0, 1}, {1, 0}}), big)), Error);
}

TEST_CASE("constructor errors") {
    CHECK_THROWS_AS(GWInput(mat({{0, 1}, {2, 0}}), mat({{1}, {0}})), Error);
    CHECK_THROWS_AS(GWInput(mat({{1, 1}, {1, 1}}), mat({{1}, {0}})), Error);
    CHECK_THROWS_AS(GWInput(mat({{1, 0}, {0, 1}}), mat({{1}})), Error);
    CHECK_THROWS_AS(GWInput(RationalMatrix(), RationalMatrix()), Error);
}

TEST_CASE("effective metric") {
    const GWInput toral(mat({{2}}), RationalMatrix(1, 0));
    CHECK(effective_metric(toral) == mat({{2}}));
    const GWInput two(mat({{0, 1}, {1, 0}}), mat({{2}, {0}}));
    CHECK(effective_metric(two) == mat({{4, 1}, {1, 0}}));
}

TEST_CASE("typicality") {
    const auto gw = gl11();
    auto t = typicality(gw, {Rational(0), Rational(1, 2)});
    CHECK(t.chi == RationalVector{Rational(1, 2)});
    CHECK(t.typical);
    t = typicality(gw, {Rational(0), Rational(1)});
    CHECK(t.chi == RationalVector{Rational(1)});
    CHECK(!t.typical);
    CHECK(!typicality(gw, {Rational(0), Rational(0)}).typical);
    // unmodified convention at q = exp(pi i / 3): atypical iff chi / 3 is an integer
    const auto un = gw.with_convention(Convention::unmodified_at(Rational(1, 3)));
    CHECK(un.typical({Rational(0), Rational(1)}));
    CHECK(!un.typical({Rational(0), Rational(3)}));
}

TEST_CASE("chi identities on random data") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> ent(-6, 6);
    const auto gw = gl11();
    const RationalMatrix eff_inv = effective_metric(gw).inverse();
    for (int trial = 0; trial < 100; ++trial) {
        for (std::size_t i = 0; i < gw.n(); ++i)
            for (std::size_t j = 0; j < gw.n(); ++j) CHECK(sgn(gw.chi(gw.root(j))[i]) == 0);
        const RationalVector lambda{R(ent(rng), 5), R(ent(rng), 7)};
        for (std::size_t i = 0; i < gw.n(); ++i) CHECK(dot(gw.root(i), eff_inv * lambda) == gw.chi(lambda)[i]);
    }
}

TEST_CASE("structure conditions") {
    const auto gw = gl11();
    // compact gl(1|1) lattice (s, t, u) = (3, 1, 3/2)
    const RationalMatrix g = mat({{0, 3}, {1, Rational(3, 2)}});
    const RationalLattice lam = SubgroupSpec{SubgroupSpec::Kind::DualLatticeOf, g, false}.to_lattice(gw);
    const RationalLattice lam0 = SubgroupSpec{SubgroupSpec::Kind::ImageKappaFlat, g, false}.to_lattice(gw);
    // the Gram matrix of kappa_eff on these rows is even, and kappa_flat uses kappa
    const auto rep = check_structure_conditions(gw, lam, lam0, false);
    CHECK(rep.all_pass());
    CHECK(rep.find("A5")->witness == "index 9");
    CHECK(rep.find("B6") == nullptr);

    // kernel lattice: Q-span of the N^vee axis
    const RationalLattice ker = SubgroupSpec{SubgroupSpec::Kind::LatticeInKernel, mat({{1, 0}}), true}.to_lattice(gw);
    const auto krep = check_structure_conditions(gw, ker, ker, true);
    CHECK(krep.all_pass());
    CHECK(krep.find("B5")->witness == "index 1");

    // abelian gauged hypermultiplet: Lambda = Gamma^vee + s, Lambda_0 = image of Gamma in s
    const GWInput hyp(mat({{0, 1}, {1, 0}}), mat({{1, 1}, {0, 0}}));
    const RationalLattice hl(2, {{1, 0}}, {{0, 1}});
    const RationalLattice hl0(2, {{0, 1}});
    const auto hrep = check_structure_conditions(hyp, hl, hl0, false);
    CHECK(hrep.find("A2")->pass);
    CHECK(hrep.find("A3")->pass);
    CHECK(hrep.find("A4")->pass);
    CHECK(!hrep.find("A5")->pass);
    CHECK(hrep.failures() == std::vector<std::string>{"A5"});
}

TEST_CASE("typicality is constant on dual-lattice shifts") {
        const auto gw = gl11();
    const RationalMatrix g = mat({{0, 3}, {1, Rational(3, 2)}});
    const RationalLattice lam = RationalLattice::dual_of(g);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> ent(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const RationalVector lambda{R(ent(rng), 11), R(ent(rng), 13)};
        // shifts by kappa_flat(Gamma) (the degree-zero part) keep chi mod Z
        const RationalVector shift = gw.kappa_flat(add(scale(g.row(0), ent(rng)), scale(g.row(1), ent(rng))));
        CHECK(lam.contains(shift));
        CHECK(gw.typical(lambda) == gw.typical(add(lambda, shift)));
    }
}
