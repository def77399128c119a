#include <doctest.h>

#include "gwtqft/error.hpp"
#include "gwtqft/relmod.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

RelModStructure gl11_compact() {
    return RelModStructure::build(gl11_data(), {Variant::Compact, mat({{0, 3}, {1, R(3, 2)}}), false});
}

RelModStructure toral_two() {
    return RelModStructure::build(make_data(GWInput(mat({{2}}), RationalMatrix(1, 0))),
                                  {Variant::Toral, mat({{1}}), false});
}

RelModStructure psl_kernel() {
    return RelModStructure::build(gl11_data(), {Variant::Kernel, mat({{1, 0}}), true});
}

}  // namespace

TEST_CASE("compact gl(1|1) structure: group order and constants") {
    const auto s = gl11_compact();
    CHECK(s.order() == 9);
    CHECK(s.representatives().size() == 9);
    std::mt19937_64 rng(7);
    const auto p1 = s.sample_generic(rng);
    const auto p2 = s.sample_generic(rng);
    const auto c = s.constants(p1, p2);
    CHECK(c.zeta == Cyclotomic(-9));
    CHECK(c.delta_plus * c.delta_minus == c.zeta);
    CHECK(c.sqrt_zeta * c.sqrt_zeta == c.zeta);
    CHECK(c.matrix_delta_plus == c.delta_plus);
}

TEST_CASE("stabilization coefficients do not depend on the probe") {
    const auto s = gl11_compact();
    std::mt19937_64 rng(11);
    const auto base = s.stabilization_closed_form(s.sample_generic(rng));
    for (int t = 0; t < 5; ++t) CHECK(s.stabilization_closed_form(s.sample_generic(rng)) == base);
}

TEST_CASE("toral structure at kappa = (2)") {
    const auto s = toral_two();
    CHECK(s.order() == 2);
    const auto c = s.constants({R(1, 3)}, {R(2, 7)});
    CHECK(c.delta_plus == Cyclotomic(1) - Cyclotomic::i());
    CHECK(c.delta_minus == Cyclotomic(1) + Cyclotomic::i());
    CHECK(c.zeta == Cyclotomic(2));
    CHECK(c.delta_plus * c.delta_minus == c.zeta);
}

TEST_CASE("kernel structure for the psl(1|1) data") {
    const auto s = psl_kernel();
    CHECK(s.order() == 1);
    const auto c = s.constants({R(1, 3), R(2, 5)}, {R(-1, 7), R(3, 11)});
    CHECK(c.delta_plus == Cyclotomic(1));
    CHECK(c.delta_minus == Cyclotomic(-1));
    CHECK(c.zeta == Cyclotomic(-1));
    CHECK(c.delta_plus * c.delta_minus == c.zeta);
    CHECK(s.same_class({R(1, 3), R(2, 5)}, {R(7, 9), R(2, 5)}));
    CHECK_FALSE(s.same_class({R(1, 3), R(2, 5)}, {R(1, 3), R(3, 5)}));
}

TEST_CASE("hypermultiplet data is rejected at the finiteness condition") {
    const auto rep = RelModStructure::assess(hyper_data(), {Variant::Compact, mat({{1, 0}}), false});
    const auto fails = rep.failures();
    REQUIRE(fails.size() == 1);
    CHECK(fails[0] == "A5");
    CHECK_THROWS_AS(RelModStructure::build(hyper_data(), {Variant::Compact, mat({{1, 0}}), false}), Error);
}

TEST_CASE("odd effective lattice is flagged") {
    const auto rep = RelModStructure::assess(gl11_data(), {Variant::Compact, mat({{0, 3}, {1, 0}}), false});
    REQUIRE(rep.find("even") != nullptr);
    CHECK_FALSE(rep.find("even")->pass);
}

TEST_CASE("kirby colour terms and genericity") {
    const auto s = gl11_compact();
    CHECK_FALSE(s.is_generic({R(1, 5), R(0, 1)}));
    CHECK_THROWS_AS(s.kirby_colour({R(1, 5), R(0, 1)}), Error);
    const auto kc = s.kirby_colour({R(1, 5), R(1, 7)});
    CHECK(kc.terms.size() == 9);
    for (const auto& t : kc.terms) CHECK(t.coefficient == modified_dim(s.gw(), t.weight, 0));
}

TEST_CASE("free realization checks pass for all variants") {
    CHECK(gl11_compact().check_free_realization({R(1, 5), R(1, 7)}).all_pass());
    CHECK(toral_two().check_free_realization({R(1, 3)}).all_pass());
    CHECK(psl_kernel().check_free_realization({R(1, 3), R(2, 5)}).all_pass());
}
