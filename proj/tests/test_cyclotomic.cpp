#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gwtqft/cyclotomic.hpp"
#include "gwtqft/error.hpp"

using namespace gwtqft;

namespace {

Rational R(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational rand_rational(std::mt19937_64& rng, long max_den, long max_num) {
    std::uniform_int_distribution<long> den(1, max_den), num(-max_num, max_num);
    return R(num(rng), den(rng));
}

Cyclotomic rand_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(1, 3);
    Cyclotomic x;
    const int t = nterms(rng);
    for (int k = 0; k < t; ++k) {
        Rational c = rand_rational(rng, 3, 4);
        c.canonicalize();
        x += Cyclotomic(c) * q_power(rand_rational(rng, 6, 12));
    }
    return x;
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST_CASE("q powers") {
    CHECK(q_power(1) == Cyclotomic::i());
    CHECK(q_power(4) == Cyclotomic(1));
    const Cyclotomic z8 = q_power(Rational(1, 2));
    CHECK(z8 * z8 == Cyclotomic::i());
    CHECK(z8 == Cyclotomic::zeta(8, 1));
    // (1 + i)/sqrt(2) from an independent construction of sqrt(2)
    CHECK(z8 * Cyclotomic::sqrt_of(2) == Cyclotomic(1) + Cyclotomic::i());
    CHECK(close(z8.to_complex(), std::polar(1.0, M_PI / 4)));
    CHECK(q_power(Rational(3, 7)) * q_power(Rational(-3, 7)) == Cyclotomic(1));
}

TEST_CASE("quantum numbers") {
    CHECK(quantum_number(0).is_zero());
    CHECK(quantum_number(2).is_zero());
    CHECK(quantum_number(1) == Cyclotomic(1));
    // [x]_q = sin(pi x / 2) at q = i; zero exactly on 2Z
    for (long den = 1; den <= 12; ++den)
        for (long num = -30; num <= 30; ++num) {
            const Rational x(num, den);
            Rational xc = x;
            xc.canonicalize();
            const Cyclotomic v = quantum_number(xc);
            const bool in_2z = xc.get_den() == 1 && xc.get_num() % 2 == 0;
            CHECK(v.is_zero() == in_2z);
            CHECK(close(v.to_complex(), std::sin(M_PI * xc.get_d() / 2)));
        }
}

TEST_CASE("field arithmetic") {
    CHECK((q_power(1) + q_power(3)).is_zero());
    CHECK(q_power(Rational(1, 2)) * q_power(Rational(1, 2)) == Cyclotomic::i());
    CHECK((q_power(2) + Cyclotomic(1)).is_zero());
    CHECK_THROWS_AS(Cyclotomic().inverse(), Error);
    try {
        (void)Cyclotomic(0).inverse();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        const Cyclotomic a = rand_element(rng), b = rand_element(rng), c = rand_element(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        if (trial % 10 == 0 && !a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(1));
        CHECK(close((a * b).to_complex(), a.to_complex() * b.to_complex()));
    }
}

TEST_CASE("exponent additivity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Rational x = rand_rational(rng, 24, 60), y = rand_rational(rng, 24, 60);
        x.canonicalize();
        y.canonicalize();
        CHECK(q_power(x) * q_power(y) == q_power(x + y));
    }
}

TEST_CASE("promotion is lossless") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Cyclotomic a = rand_element(rng);
        const auto n = a.conductor();
        for (std::uint32_t m : {2u, 3u, 5u, 6u}) {
            const Cyclotomic p = a.promoted(n * m);
            CHECK(p == a);
            const auto back = p.demoted(n);
            REQUIRE(back.has_value());
            CHECK(back->terms() == a.terms());
        }
        const Cyclotomic r = a.reduced();
        CHECK(r == a);
        CHECK(r.conductor() <= n);
    }
}

TEST_CASE("square roots and Galois action") {
    for (long m : {1L, 2L, 3L, 5L, 7L, 9L, 12L, 18L}) {
        const Cyclotomic s = Cyclotomic::sqrt_of(m);
        CHECK(s * s == Cyclotomic(m));
        CHECK(std::abs(s.to_complex() - std::sqrt(static_cast<double>(m))) < 1e-9);
    }
    const Cyclotomic z = Cyclotomic::zeta(12, 5);
    CHECK(z.conj() * z == Cyclotomic(1));
    CHECK(z.galois(5) == Cyclotomic::zeta(12, 1));
}

TEST_CASE("rendering") {
    auto a = q_power(1).approx(9);
    CHECK(a.first == "0.000000000");
    CHECK(a.second == "1.000000000");
    a = q_power(Rational(1, 2)).approx(6);
    CHECK(a.first == "0.707107");
    CHECK(a.second == "0.707107");
    CHECK(quantum_number(1).approx(6).first == "1.000000");
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Cyclotomic x = rand_element(rng);
        CHECK(Cyclotomic::parse_exact(x.exact_string()) == x);
    }
    CHECK_THROWS_AS(Cyclotomic::parse_exact("[4; 1:"), Error);
}

TEST_CASE("inverse of one minus a root") {
    for (long den : {2L, 3L, 5L, 8L, 12L})
        for (long num = 1; num < den; ++num) {
            const Rational r(num, den);
            Rational rc = r;
            rc.canonicalize();
            const Cyclotomic v = inv_one_minus_root(rc);
            CHECK(v * (Cyclotomic(1) - Cyclotomic::root_of_unity(rc)) == Cyclotomic(1));
        }
}

TEST_CASE("conductor cap") {
    ConductorCap cap(64);
    CHECK_THROWS_AS(q_power(Rational(1, 97)), Error);
}
