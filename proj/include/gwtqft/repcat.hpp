#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gwtqft/cmatrix.hpp"
#include "gwtqft/gw_data.hpp"

namespace gwtqft {

using GWData = std::shared_ptr<const GWInput>;

inline GWData make_data(GWInput in) { return std::make_shared<const GWInput>(std::move(in)); }

struct BasisVector {
    RationalVector weight;
    int parity = 0;
};

enum class ModuleKind { Verma, Simple, OneDim, Tensor, Dual };

class WeightModule;
using Module = std::shared_ptr<const WeightModule>;

/// A finite-dimensional weight module: labelled basis plus the actions of E_i and F_i.
/// Z_a, K_a and the central K_i act diagonally and are read off the weights.
class WeightModule {
public:
    WeightModule(GWData data, ModuleKind kind, std::string label, std::vector<BasisVector> basis,
                 std::vector<CMatrix> e, std::vector<CMatrix> f);

    const GWData& data() const { return data_; }
    const GWInput& gw() const { return *data_; }
    ModuleKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisVector>& basis() const { return basis_; }
    const CMatrix& E(std::size_t i) const { return e_[i]; }
    const CMatrix& F(std::size_t i) const { return f_[i]; }

    /// Highest weight and parity for Verma / simple / one-dimensional modules.
    const RationalVector& highest_weight() const { return highest_; }
    int highest_parity() const { return highest_parity_; }
    /// Tensor factors (left, right) when kind() == Tensor; the dualized module for Dual.
    const Module& left() const { return left_; }
    const Module& right() const { return right_; }

    /// Eigenvalue of the central K_i on basis vector b: q^{s chi_i}.
    const Cyclotomic& k_eigen(std::size_t i, std::size_t b) const { return k_eigen_[b][i]; }
    /// Eigenvalue of K = prod K_i on basis vector b.
    const Cyclotomic& kappa_eigen(std::size_t b) const { return kappa_eigen_[b]; }
    const Cyclotomic& kappa_inv_eigen(std::size_t b) const { return kappa_inv_eigen_[b]; }
    /// Diagonal matrices of K_i^{+-1} and of the parity sign.
    CMatrix k_matrix(std::size_t i, int power) const;
    CMatrix parity_matrix() const;
    /// E_I = E_{i_1} ... E_{i_k} (i_1 < ... < i_k) and F_I likewise, I a bitmask.
    const CMatrix& E_product(std::uint64_t mask) const;
    const CMatrix& F_product(std::uint64_t mask) const;

private:
    GWData data_;
    ModuleKind kind_;
    std::string label_;
    std::vector<BasisVector> basis_;
    std::vector<CMatrix> e_, f_;
    RationalVector highest_;
    int highest_parity_ = 0;
    Module left_, right_;
    std::vector<std::vector<Cyclotomic>> k_eigen_;
    std::vector<Cyclotomic> kappa_eigen_, kappa_inv_eigen_;
    std::vector<CMatrix> e_prod_, f_prod_;

    void finish();
    friend Module verma(const GWData&, const RationalVector&, int);
    friend Module simple_quotient(const GWData&, const RationalVector&, int);
    friend Module one_dim(const GWData&, const RationalVector&, int);
    friend Module tensor(const Module&, const Module&);
    friend Module dual_module(const Module&);
};

/// Verma module of highest weight (lambda, p): basis v_I, I a subset of {1..n} in bitmask order.
Module verma(const GWData& data, const RationalVector& lambda, int parity = 0);
/// Unique simple quotient; dimension 2^{n-k} with k the number of atypical indices.
Module simple_quotient(const GWData& data, const RationalVector& lambda, int parity = 0);
/// One-dimensional module; throws NotOneDimensional unless every index is atypical.
Module one_dim(const GWData& data, const RationalVector& k, int parity = 0);
/// Monoidal unit.
Module unit_module(const GWData& data);
/// Throws ConventionMismatch for modules over different data.
Module tensor(const Module& v, const Module& w);
Module dual_module(const Module& v);

/// ev_left: V* (x) V -> 1, coev_left: 1 -> V (x) V*, ev_right: V (x) V* -> 1, coev_right: 1 -> V* (x) V.
CMatrix ev_left(const Module& v);
CMatrix coev_left(const Module& v);
CMatrix ev_right(const Module& v);
CMatrix coev_right(const Module& v);

/// c_{V,W}: V (x) W -> W (x) V and its inverse W (x) V -> V (x) W.
CMatrix braiding(const Module& v, const Module& w);
CMatrix braiding_inverse(const Module& v, const Module& w);
/// Tensor product of two even maps.
CMatrix tensor_maps(const CMatrix& f, const CMatrix& g);

/// Right partial trace of f in End(V (x) W), closing W; left partial trace closes V.
CMatrix partial_trace_right(const Module& v, const Module& w, const CMatrix& f);
CMatrix partial_trace_left(const Module& v, const Module& w, const CMatrix& f);
/// Pivotal (quantum) trace of an endomorphism.
Cyclotomic pivotal_trace(const Module& v, const CMatrix& f);

/// theta_V as the right partial trace of c_{V,V}.
CMatrix twist(const Module& v);
/// Closed form of the twist on a Verma: q^{-s kappa^vee(l,l) + s sum chi(l)}.
Cyclotomic twist_closed_form(const GWInput& data, const RationalVector& lambda);

/// Phi_{V',V} in End(V): a V'-coloured circle around an open V strand.
CMatrix open_hopf(const Module& circle, const Module& open);
/// Closed form of the open Hopf scalar for a typical Verma pair (modified convention).
Cyclotomic open_hopf_closed_form(const GWInput& data, const RationalVector& circle, int circle_parity,
                                 const RationalVector& open, int open_parity);

/// Modified dimension of a typical Verma; throws Atypical.
Cyclotomic modified_dim(const GWInput& data, const RationalVector& lambda, int parity = 0);
/// Modified trace on End(X) for X = V (x) ... with a typical Verma V leftmost; throws
/// UnsupportedObject otherwise and NotScalar if the reduction does not land in C id.
Cyclotomic modified_trace(const Module& x, const CMatrix& f);

/// Highest weights of the Verma summands of a module all of whose weights are typical.
std::vector<BasisVector> decompose_generic(const Module& v);

/// Basis of Hom(V, W) (matrices W x V).
std::vector<CMatrix> hom_basis(const Module& v, const Module& w);

/// True when f: V -> W is even, weight preserving and commutes with all E_i, F_i.
bool is_module_map(const Module& v, const Module& w, const CMatrix& f);

/// The defining relations of the quantum group, checked as matrix identities.
ValidationReport check_relations(const Module& v);

std::string basis_label(const BasisVector& b);

}  // namespace gwtqft
