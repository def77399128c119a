#pragma once

#include <string>
#include <vector>

#include "gwtqft/cyclotomic.hpp"
#include "gwtqft/lattice.hpp"
#include "gwtqft/matrix.hpp"

namespace gwtqft {

/// How the quantum group acts: q = exp(pi i c). In the modified convention K_a acts
/// by q^{2 lambda_a} and the generators K_i by q^{2 chi_i}; in the unmodified one
/// the factor 2 is absent. The topological invariants require modified at c = 1/2.
struct Convention {
    bool modified = true;
    Rational c = Rational(1, 2);

    static Convention standard() { return {}; }
    static Convention modified_at(const Rational& c) { return {true, c}; }
    static Convention unmodified_at(const Rational& c) { return {false, c}; }

    /// Exponent multiplier: 2 (modified) or 1.
    int s() const { return modified ? 2 : 1; }
    bool is_standard() const { return modified && c == Rational(1, 2); }
    /// q^x.
    Cyclotomic q_pow(const Rational& x) const;
    /// [x]_q = (q^x - q^-x)/(q - q^-1).
    Cyclotomic qnum(const Rational& x) const;
    bool operator==(const Convention&) const = default;
    std::string to_string() const;
};

struct Weight {
    RationalVector lambda;
    int parity = 0;
};

struct CheckEntry {
    std::string id;
    std::string name;
    bool pass = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<CheckEntry> entries;
    bool all_pass() const;
    const CheckEntry* find(const std::string& id) const;
    std::vector<std::string> failures() const;
    std::string to_string() const;
};

/// Abelian Gaiotto-Witten input: metric kappa on t (r x r) and roots Q (r x n, columns Q_i in t^vee).
class GWInput {
public:
    /// Throws ShapeMismatch, NotSymmetric, Degenerate (also for r = 0).
    GWInput(RationalMatrix kappa, RationalMatrix roots, Convention conv = {});

    std::size_t r() const { return kappa_.rows(); }
    std::size_t n() const { return roots_.cols(); }
    const RationalMatrix& kappa() const { return kappa_; }
    const RationalMatrix& kappa_inverse() const { return kappa_inv_; }
    const RationalMatrix& roots() const { return roots_; }
    RationalVector root(std::size_t i) const { return roots_.col(i); }
    const Convention& convention() const { return conv_; }

    /// kappa^vee(lambda, mu) = lambda^T kappa^{-1} mu.
    Rational kappa_dual(const RationalVector& lambda, const RationalVector& mu) const;
    /// chi_i(lambda) = kappa^vee(Q_i, lambda).
    RationalVector chi(const RationalVector& lambda) const;
    Rational chi_sum(const RationalVector& lambda) const;
    /// Sum of Q_i over i in the bitmask.
    RationalVector root_sum(std::uint64_t mask) const;
    /// kappa^flat(gamma) in t^vee coordinates.
    RationalVector kappa_flat(const RationalVector& gamma) const { return kappa_ * gamma; }

    /// [s chi_i(lambda)]_q = 0 for some i.
    bool is_atypical_index(const RationalVector& lambda, std::size_t i) const;
    bool typical(const RationalVector& lambda) const;

    GWInput with_convention(const Convention& c) const;

private:
    RationalMatrix kappa_, kappa_inv_, roots_;
    Convention conv_;
};

/// Fundamental identity and the standing assumptions on the roots. Throws SizeLimit for n > 12.
ValidationReport check_input(const GWInput& data);

/// kappa + Q Q^T. Throws DegenerateEffectiveMetric.
RationalMatrix effective_metric(const GWInput& data);

struct Typicality {
    RationalVector chi;
    bool typical = false;
};
Typicality typicality(const GWInput& data, const RationalVector& lambda);

/// The three supported ways of describing a subgroup of t^vee.
struct SubgroupSpec {
    enum class Kind { DualLatticeOf, ImageKappaFlat, LatticeInKernel };
    Kind kind = Kind::DualLatticeOf;
    RationalMatrix data;         // rows: Gamma basis, or spanning vectors
    bool rational_span = false;  // LatticeInKernel only: take the Q-span of the rows

    RationalLattice to_lattice(const GWInput& gw) const;
    std::string describe() const;
};

/// Grading / free-realization conditions. With `kernel_style` the ids are B1..B6,
/// otherwise A1..A5 (the invertibility check is then implied and omitted).
ValidationReport check_structure_conditions(const GWInput& data, const RationalLattice& lambda,
                                            const RationalLattice& lambda0, bool kernel_style);

}  // namespace gwtqft
