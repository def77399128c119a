#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwtqft/relmod.hpp"
#include "gwtqft/tangle.hpp"

namespace gwtqft {

/// A (1,1) word whose closure is L u T. Components coloured by a name in `surgery_classes`
/// form the surgery link L (one component per name, Kirby-coloured by that holonomy class);
/// the remaining names are insertion colours. The open strand is the cut edge.
struct SurgeryPresentation {
    RibbonWord word;
    std::map<std::string, RationalVector> surgery_classes;
    ColourTable insertions;
    long signature_defect = 0;
};

struct SurgeryResult {
    Cyclotomic value;
    Cyclotomic f_prime;
    std::size_t surgery_components = 0;
    int signature = 0;
    LinkData link;
};

/// D^{-1-l} (D / Delta_-)^{m - sigma(L)} F'(L u T). Throws NonGenericClass, NotAdmissible
/// (holonomy constraint violated, bad colour assignment), SizeLimit.
SurgeryResult cgp_invariant(const RelModStructure& s, const SurgeryPresentation& p);

/// S^3 presentations with one cut unknot coloured by the typical Verma V_(lambda, 0):
/// no surgery, a (+1)-framed surgery unknot, a (-1)-framed surgery unknot.
SurgeryPresentation s3_empty(const RelModStructure& s, const RationalVector& lambda);
SurgeryPresentation s3_plus(const RelModStructure& s, const RationalVector& lambda);
SurgeryPresentation s3_minus(const RelModStructure& s, const RationalVector& lambda);
/// 0-surgery on the Borromean rings (the three-torus), classes on the three components;
/// the first component is cut.
SurgeryPresentation three_torus(const RationalVector& a, const RationalVector& b, const RationalVector& c);

struct VerlindeRequest {
    int genus = 1;
    std::vector<Weight> insertions;
    RationalVector beta;
};

/// Closed-form partition function of the trivial circle bundle over a genus-g surface.
/// Throws PoleAtBeta if a negative power of a vanishing factor occurs (genus 0 only).
Cyclotomic verlinde_partition(const RelModStructure& s, const VerlindeRequest& req);

/// |D|^{g-1} sum_k prod_i (2 sin(chi_i(k) pi))^{2g-2}, with x^0 = 1; exact and checked real.
Cyclotomic euler_characteristic(const RelModStructure& s, int genus);

/// Toral: |D|^g; kernel: 2^{n(2g-2)}; compact: |D| at g = 1, otherwise not determined.
std::optional<Integer> state_space_dimension(const RelModStructure& s, int genus);

struct BetheResult {
    std::vector<RationalVector> solutions;  // v with y = exp(2 pi i v), coordinates dual to Gamma
    std::vector<Cyclotomic> handle_gluing;
    Cyclotomic chi_via_bethe, chi_closed_form;
    bool equal = false;
};

/// Enumerates the Bethe vacua on the torus t / Gamma and sums H(y)^{g-1}.
/// Throws UnsupportedObject for the kernel variant and NonIntegerGram.
BetheResult bethe_check(const RelModStructure& s, int genus);

/// Euler characteristic of the gl(1|1) theory for the lattice labelled (s, t, u).
/// Throws HypothesisFailed unless s, t > 0, 2u is an integer and t^2 + 2u is even.
Integer gl11_chi(long s, long t, const Rational& u, int genus);

/// Basis of Gamma for the gl(1|1) label (s, t, u): rows (0, s/t) and (t, u/t).
RationalMatrix gl11_lattice(long s, long t, const Rational& u);

}  // namespace gwtqft
