#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gwtqft/matrix.hpp"
#include "gwtqft/rational.hpp"

namespace gwtqft {

/// B = left * D * right with D the (rows x cols) diagonal matrix of `diagonal`;
/// left_inv * B * right_inv = D. All four multipliers are unimodular.
struct SmithDecomposition {
    RationalMatrix left, right, left_inv, right_inv;
    std::vector<Integer> diagonal;  // length min(rows, cols), d_1 | d_2 | ..., zeros last
};

/// Throws NonInteger on non-integer entries. Deterministic.
SmithDecomposition smith_normal_form(const RationalMatrix& b);

/// Finite abelian group Z^r / B Z^r for a nondegenerate symmetric integer B.
/// Elements are stored as integer vectors x in dual-basis coordinates.
class DiscriminantGroup {
public:
    /// Throws NonInteger, NotSymmetric, Degenerate.
    explicit DiscriminantGroup(const RationalMatrix& gram);

    const RationalMatrix& gram() const { return gram_; }
    const SmithDecomposition& smith() const { return smith_; }
    /// Invariant factors with the trivial (= 1) ones dropped.
    std::vector<Integer> invariant_factors() const;
    /// Generators delta_i (rows of the right multiplier) paired with invariant_factors().
    std::vector<RationalVector> generators() const;
    Integer order() const { return order_; }

    /// All |D| representatives, ordered lexicographically in the Smith coordinates.
    std::vector<RationalVector> representatives() const;
    /// Canonical key of the class of x: frac(B^{-1} x) componentwise.
    RationalVector class_key(const RationalVector& x) const;
    bool same_class(const RationalVector& x, const RationalVector& y) const;

private:
    RationalMatrix gram_, gram_inv_;
    SmithDecomposition smith_;
    Integer order_;
};

/// The bilinear forms attached to a nondegenerate Gram matrix B.
class MetricMaps {
public:
    /// Throws NotSymmetric or Degenerate.
    explicit MetricMaps(const RationalMatrix& gram);
    /// kappa_flat(gamma)_j = sum_i gamma_i B_ij (coordinates in the dual basis).
    RationalVector kappa_flat(const RationalVector& gamma) const;
    /// kappa^vee(lambda, mu) = lambda^T B^{-1} mu.
    Rational kappa_dual(const RationalVector& lambda, const RationalVector& mu) const;
    const RationalMatrix& gram() const { return gram_; }
    const RationalMatrix& dual_gram() const { return inv_; }

private:
    RationalMatrix gram_, inv_;
};

/// Integer entries and even diagonal.
bool is_even_integral(const RationalMatrix& gram);

struct Signature {
    int positives = 0, negatives = 0, zeros = 0;
    int value() const { return positives - negatives; }
    bool operator==(const Signature&) const = default;
};

/// Exact inertia by symmetric congruence elimination. Throws NotSymmetric.
Signature signature(const RationalMatrix& m);

/// Subgroup of Q^r: the Z-span of finitely many vectors plus a rational subspace.
class RationalLattice {
public:
    RationalLattice() = default;
    RationalLattice(std::size_t dim, std::vector<RationalVector> generators, std::vector<RationalVector> subspace = {});

    /// {lambda : G lambda in Z^m} for an m x r matrix G of full row rank.
    static RationalLattice dual_of(const RationalMatrix& g);

    std::size_t dim() const { return dim_; }
    const std::vector<RationalVector>& generators() const { return generators_; }
    const std::vector<RationalVector>& subspace() const { return subspace_; }
    std::size_t subspace_dim() const { return subspace_.size(); }
    /// Rank of the lattice part modulo the subspace.
    std::size_t lattice_rank() const;

    bool contains(const RationalVector& v) const;
    bool contains_subgroup(const RationalLattice& other) const;
    /// [*this : sub] when sub is a subgroup; nullopt when infinite.
    std::optional<Integer> index_of(const RationalLattice& sub) const;

    std::string to_string() const;

private:
    std::size_t dim_ = 0;
    std::vector<RationalVector> generators_;
    std::vector<RationalVector> subspace_;  // linearly independent
    RationalMatrix projection_;             // rows annihilate the subspace
    RationalVector project(const RationalVector& v) const;
    /// Z-basis of the projected lattice (columns).
    std::vector<RationalVector> projected_basis() const;
};

}  // namespace gwtqft
