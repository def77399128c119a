#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwtqft/rational.hpp"

namespace gwtqft {

/**
 * Element of the cyclotomic field Q(zeta_N), zeta_N = exp(2 pi i / N).
 *
 * Stored sparsely in the Zumbroich basis of Q(zeta_N): a subset of the powers
 * zeta_N^k that forms a Q-basis, so the representation at a fixed conductor is
 * canonical and the zero test is exact. Binary operations promote both operands
 * to the lcm of their conductors. Values never shrink their conductor on their
 * own; reduced() finds the smallest conductor when that matters (display,
 * inversion of constants).
 */
class Cyclotomic {
public:
    using Term = std::pair<std::uint32_t, Rational>;

    Cyclotomic() = default;
    Cyclotomic(long v);  // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& r);  // NOLINT(google-explicit-constructor)

    /// exp(2 pi i * r).
    static Cyclotomic root_of_unity(const Rational& r);
    /// zeta_N^k for any integer k.
    static Cyclotomic zeta(std::uint32_t n, long k);
    /// Sum of c * zeta_N^k over arbitrary exponents (not necessarily basis ones).
    static Cyclotomic from_powers(std::uint32_t n, const std::vector<std::pair<long, Rational>>& powers);
    /// Canonical basis terms; throws InternalMismatch if an exponent is not a basis exponent.
    static Cyclotomic from_basis_terms(std::uint32_t n, std::vector<Term> terms);
    static Cyclotomic i();
    /// Positive square root of a positive integer (Gauss sums).
    static Cyclotomic sqrt_of(long m);

    std::uint32_t conductor() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::optional<Rational> as_rational() const;
    bool is_rational() const { return as_rational().has_value(); }

    /// Same value represented at conductor m (n must divide m).
    Cyclotomic promoted(std::uint32_t m) const;
    /// Same value at conductor m if it lies in Q(zeta_m), m | n.
    std::optional<Cyclotomic> demoted(std::uint32_t m) const;
    /// Same value at the smallest conductor whose field contains it.
    Cyclotomic reduced() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Throws DivisionByZero on zero.
    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;
    /// Galois automorphism zeta -> zeta^a, gcd(a, N) = 1.
    Cyclotomic galois(long a) const;
    Cyclotomic conj() const { return galois(-1); }

    std::complex<double> to_complex() const;
    /// Decimal real and imaginary parts, correctly rounded to `digits` places.
    std::pair<std::string, std::string> approx(int digits) const;
    /// "a + b*i" style rendering of approx().
    std::string approx_string(int digits) const;
    /// Exact rendering: "[N; k:c, k:c, ...]".
    std::string exact_string() const;
    /// Inverse of exact_string(); throws ParseError.
    static Cyclotomic parse_exact(const std::string& text);

private:
    std::uint32_t n_ = 1;
    std::vector<Term> terms_;  // sorted by exponent, nonzero coefficients, basis exponents only

    friend class CyclotomicAccess;
};

/// RAII cap on conductors created in the current thread; exceeding it throws SizeLimit.
class ConductorCap {
public:
    explicit ConductorCap(std::uint32_t cap);
    ~ConductorCap();
    ConductorCap(const ConductorCap&) = delete;
    ConductorCap& operator=(const ConductorCap&) = delete;
    static std::uint32_t current();

private:
    std::uint32_t previous_;
};

/// q^x with q = exp(pi i / 2), i.e. exp(pi i x / 2).
Cyclotomic q_power(const Rational& x);
/// [x]_q = (q^x - q^-x)/(q - q^-1) at q = sqrt(-1).
Cyclotomic quantum_number(const Rational& x);
/// 1 / (1 - exp(2 pi i r)) for r not an integer.
Cyclotomic inv_one_minus_root(const Rational& r);

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace gwtqft
