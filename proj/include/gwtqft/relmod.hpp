#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gwtqft/lattice.hpp"
#include "gwtqft/repcat.hpp"

namespace gwtqft {

enum class Variant { Compact, Kernel, Toral };

std::string variant_name(Variant v);

/// Input for a relative modular structure.
///  Compact / Toral: `lattice` rows are a basis of Gamma in t coordinates (Lambda = Gamma^vee,
///  Lambda_0 = kappa_flat(Gamma)). Kernel: rows span Lambda = Lambda_0 inside ker chi, taking
///  the rational span when `rational_span` is set.
struct StructureSpec {
    Variant variant = Variant::Compact;
    RationalMatrix lattice;
    bool rational_span = false;
};

struct KirbyTerm {
    RationalVector weight;
    int parity = 0;
    Cyclotomic coefficient;
};

struct KirbyColour {
    RationalVector index;
    std::vector<KirbyTerm> terms;
};

struct StructureConstants {
    Cyclotomic delta_plus, delta_minus, zeta, sqrt_zeta;
    RationalVector probe, second_probe;
    Cyclotomic matrix_delta_plus, matrix_delta_minus;
};

class RelModStructure {
public:
    /// Hypotheses and condition ledger without throwing.
    static ValidationReport assess(const GWData& data, const StructureSpec& spec);
    /// Throws HypothesisFailed listing the failed conditions and their witnesses.
    static RelModStructure build(const GWData& data, const StructureSpec& spec);

    Variant variant() const { return spec_.variant; }
    const GWData& data() const { return data_; }
    const GWInput& gw() const { return *data_; }
    const StructureSpec& spec() const { return spec_; }
    const ValidationReport& ledger() const { return ledger_; }
    const RationalLattice& grading_lattice() const { return lambda_; }
    const RationalLattice& degree_zero_lattice() const { return lambda0_; }

    /// |D| (1 for the kernel variant).
    Integer order() const;
    std::vector<Integer> invariant_factors() const;
    /// Representatives of D in t^vee coordinates ({0} for the kernel variant).
    const std::vector<RationalVector>& representatives() const { return reps_; }

    /// lambda - mu in Lambda.
    bool same_class(const RationalVector& lambda, const RationalVector& mu) const;
    /// Every Kirby-colour weight lambda + k of the class is typical (always true for toral).
    bool is_generic(const RationalVector& lambda) const;
    /// Throws NonGenericClass.
    KirbyColour kirby_colour(const RationalVector& lambda) const;
    /// Simple object used for a Kirby term.
    Module term_module(const KirbyTerm& t) const;

    /// Random generic class representative, denominators from small primes.
    RationalVector sample_generic(std::mt19937_64& rng) const;

    /// Closed-form Delta_+- at a probe (throws NonGenericClass).
    std::pair<Cyclotomic, Cyclotomic> stabilization_closed_form(const RationalVector& probe) const;
    /// Delta_+- by evaluating the twisted Kirby-coloured meridians as matrices.
    std::pair<Cyclotomic, Cyclotomic> stabilization_matrix(const RationalVector& probe) const;
    /// zeta from the structure theorem: (-1)^n |D|, |D| or (-1)^n.
    Cyclotomic zeta() const;
    /// i^n sqrt|D| (positive real root).
    Cyclotomic sqrt_zeta() const;
    /// Closed form at both probes, matrix cross-check at the first; throws InternalMismatch.
    StructureConstants constants(const RationalVector& probe, const RationalVector& second_probe) const;

    /// Generators of the free realization: theta = id, invertibility, psi against the probe.
    ValidationReport check_free_realization(const RationalVector& probe) const;

private:
    GWData data_;
    StructureSpec spec_;
    ValidationReport ledger_;
    RationalLattice lambda_, lambda0_;
    std::optional<DiscriminantGroup> disc_;
    std::vector<RationalVector> reps_;
};

}  // namespace gwtqft
