#include "gwtqft/relmod.hpp"

#include <sstream>

#include "gwtqft/error.hpp"

namespace gwtqft {

namespace {

Cyclotomic sign(long e) { return (e % 2 == 0) ? Cyclotomic(1) : Cyclotomic(-1); }

// q^{s x} - q^{-s x}
Cyclotomic qdiff(const Convention& cv, const Rational& x) {
    const Rational sx = Rational(cv.s()) * x;
    return cv.q_pow(sx) - cv.q_pow(-sx);
}

bool generators_in_kernel(const GWInput& gw, const RationalMatrix& rows, std::string& witness) {
    for (std::size_t j = 0; j < rows.rows(); ++j) {
        const auto v = rows.row(j);
        const auto c = gw.chi(v);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (sgn(c[i]) != 0) {
                witness = "chi_" + std::to_string(i + 1) + "(" + to_string(v) + ") = " + to_string(c[i]);
                return false;
            }
    }
    return true;
}

}  // namespace

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Compact: return "compact";
        case Variant::Kernel: return "kernel";
        case Variant::Toral: return "toral";
    }
    return "?";
}

ValidationReport RelModStructure::assess(const GWData& data, const StructureSpec& spec) {
    const GWInput& gw = *data;
    ValidationReport rep;
    auto push = [&](std::string id, std::string name, bool pass, std::string witness) {
        rep.entries.push_back({std::move(id), std::move(name), pass, std::move(witness)});
    };

    push("convention", "modified convention at q = sqrt(-1)", gw.convention().is_standard(),
         gw.convention().is_standard() ? "" : gw.convention().to_string());
    if (spec.lattice.cols() != gw.r()) {
        push("shape", "lattice vectors have r coordinates", false,
             std::to_string(spec.lattice.cols()) + " columns, r = " + std::to_string(gw.r()));
        return rep;
    }

    RationalLattice lambda, lambda0;
    if (spec.variant == Variant::Kernel) {
        std::string w;
        push("kernel", "Lambda inside ker chi", generators_in_kernel(gw, spec.lattice, w), w);
        SubgroupSpec s{SubgroupSpec::Kind::LatticeInKernel, spec.lattice, spec.rational_span};
        lambda = s.to_lattice(gw);
        lambda0 = lambda;
    } else {
        if (spec.variant == Variant::Toral)
            push("toral", "no roots", gw.n() == 0, gw.n() == 0 ? "" : "n = " + std::to_string(gw.n()));
        const RationalMatrix& g = spec.lattice;
        const RationalMatrix b = g * gw.kappa() * g.transpose();
        push("integral", "(Gamma, kappa) integral", b.is_integer(), b.is_integer() ? "" : "Gram " + b.to_string());
        std::string eff_w;
        bool eff_ok = true;
        try {
            const RationalMatrix be = g * effective_metric(gw) * g.transpose();
            eff_ok = is_even_integral(be);
            if (!eff_ok) eff_w = "effective Gram " + be.to_string();
        } catch (const Error& e) {
            eff_ok = false;
            eff_w = e.what();
        }
        push("even", "(Gamma, kappa_eff) even integral", eff_ok, eff_w);
        lambda = SubgroupSpec{SubgroupSpec::Kind::DualLatticeOf, g, false}.to_lattice(gw);
        lambda0 = SubgroupSpec{SubgroupSpec::Kind::ImageKappaFlat, g, false}.to_lattice(gw);
    }
    const auto cond = check_structure_conditions(gw, lambda, lambda0, spec.variant == Variant::Kernel);
    rep.entries.insert(rep.entries.end(), cond.entries.begin(), cond.entries.end());
    return rep;
}

RelModStructure RelModStructure::build(const GWData& data, const StructureSpec& spec) {
    RelModStructure s;
    s.data_ = data;
    s.spec_ = spec;
    s.ledger_ = assess(data, spec);
    if (!s.ledger_.all_pass()) {
        std::ostringstream os;
        os << variant_name(spec.variant) << " structure rejected:";
        for (const auto& e : s.ledger_.entries)
            if (!e.pass) os << " [" << e.id << " " << e.name << (e.witness.empty() ? "" : ": " + e.witness) << "]";
        throw Error(ErrorCode::HypothesisFailed, os.str());
    }
    const GWInput& gw = *data;
    if (spec.variant == Variant::Kernel) {
        s.lambda_ = SubgroupSpec{SubgroupSpec::Kind::LatticeInKernel, spec.lattice, spec.rational_span}.to_lattice(gw);
        s.lambda0_ = s.lambda_;
        s.reps_ = {RationalVector(gw.r())};
    } else {
        const RationalMatrix& g = spec.lattice;
        s.lambda_ = SubgroupSpec{SubgroupSpec::Kind::DualLatticeOf, g, false}.to_lattice(gw);
        s.lambda0_ = SubgroupSpec{SubgroupSpec::Kind::ImageKappaFlat, g, false}.to_lattice(gw);
        s.disc_.emplace(g * gw.kappa() * g.transpose());
        // representatives come in the dual basis of Gamma: x = G lambda
        const RationalMatrix ginv = g.inverse();
        for (const auto& x : s.disc_->representatives()) s.reps_.push_back(ginv * x);
    }
    return s;
}

Integer RelModStructure::order() const { return disc_ ? disc_->order() : Integer(1); }

std::vector<Integer> RelModStructure::invariant_factors() const {
    return disc_ ? disc_->invariant_factors() : std::vector<Integer>{};
}

bool RelModStructure::same_class(const RationalVector& lambda, const RationalVector& mu) const {
    return lambda_.contains(sub(lambda, mu));
}

bool RelModStructure::is_generic(const RationalVector& lambda) const {
    if (lambda.size() != gw().r()) throw Error(ErrorCode::ShapeMismatch, "class representative has wrong length");
    for (const auto& k : reps_)
        if (!gw().typical(add(lambda, k))) return false;
    return true;
}

KirbyColour RelModStructure::kirby_colour(const RationalVector& lambda) const {
    if (!is_generic(lambda))
        throw Error(ErrorCode::NonGenericClass, "class of " + to_string(lambda) + " is not generic");
    KirbyColour kc{lambda, {}};
    for (const auto& k : reps_) {
        RationalVector w = add(lambda, k);
        Cyclotomic d = modified_dim(gw(), w, 0);
        kc.terms.push_back({std::move(w), 0, std::move(d)});
    }
    return kc;
}

Module RelModStructure::term_module(const KirbyTerm& t) const { return verma(data_, t.weight, t.parity); }

RationalVector RelModStructure::sample_generic(std::mt19937_64& rng) const {
    static const long dens[] = {5, 7, 11, 13};
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<long> num(-9, 9);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        RationalVector v(gw().r());
        for (auto& x : v) {
            x = Rational(num(rng), dens[pick(rng)]);
            x.canonicalize();
        }
        if (is_generic(v)) return v;
    }
    throw Error(ErrorCode::NonGenericClass, "no generic class found by sampling");
}

std::pair<Cyclotomic, Cyclotomic> RelModStructure::stabilization_closed_form(const RationalVector& probe) const {
    if (!is_generic(probe)) throw Error(ErrorCode::NonGenericClass, "probe " + to_string(probe) + " is not generic");
    const GWInput& g = gw();
    const Convention& cv = g.convention();
    const long n = static_cast<long>(g.n());
    if (spec_.variant == Variant::Kernel) return {Cyclotomic(1), sign(n)};

    // The (+1) meridian is coloured by the class -lambda, the (-1) meridian by +lambda.
    Cyclotomic plus, minus;
    const auto chi_l = g.chi(probe);
    for (const auto& k : reps_) {
        const Rational kk = g.kappa_dual(k, k);
        Cyclotomic rp(1), rm(1);
        const auto chi_p = g.chi(sub(probe, k));
        const auto chi_m = g.chi(add(probe, k));
        for (long i = 0; i < n; ++i) {
            const Cyclotomic num = qdiff(cv, chi_l[i]);
            rp *= num / qdiff(cv, chi_p[i]);
            rm *= num / qdiff(cv, chi_m[i]);
        }
        plus += cv.q_pow(-Rational(cv.s()) * kk + Rational(2 * cv.s()) * g.chi_sum(k)) * rp;
        minus += cv.q_pow(Rational(cv.s()) * kk) * rm;
    }
    return {plus, sign(n) * minus};
}

std::pair<Cyclotomic, Cyclotomic> RelModStructure::stabilization_matrix(const RationalVector& probe) const {
    const Module v = verma(data_, probe, 0);
    const Cyclotomic theta_v = *twist(v).as_scalar();
    auto meridian = [&](const RationalVector& index, int framing) {
        Cyclotomic total;
        for (const auto& t : kirby_colour(index).terms) {
            const Module c = term_module(t);
            const CMatrix th = twist(c);
            const CMatrix tw = framing > 0 ? th : CMatrix::diagonal(std::vector<Cyclotomic>(c->dim(), th.at(0, 0).inverse()));
            const CMatrix hopf = braiding(c, v) * braiding(v, c) * tensor_maps(CMatrix::identity(v->dim()), tw);
            const auto s = partial_trace_right(v, c, hopf).as_scalar();
            if (!s) throw Error(ErrorCode::NotScalar, "meridian evaluation is not scalar");
            total += t.coefficient * *s;
        }
        return total;
    };
    const Cyclotomic plus = theta_v * meridian(scale(probe, Rational(-1)), 1);
    const Cyclotomic minus = theta_v.inverse() * meridian(probe, -1);
    return {plus, minus};
}

Cyclotomic RelModStructure::zeta() const {
    const long n = static_cast<long>(gw().n());
    switch (spec_.variant) {
        case Variant::Compact: return sign(n) * Cyclotomic(Rational(order()));
        case Variant::Toral: return Cyclotomic(Rational(order()));
        case Variant::Kernel: return sign(n);
    }
    return {};
}

Cyclotomic RelModStructure::sqrt_zeta() const {
    const long n = static_cast<long>(gw().n());
    const Cyclotomic root = spec_.variant == Variant::Kernel ? Cyclotomic(1) : Cyclotomic::sqrt_of(to_long(Rational(order())));
    return Cyclotomic::i().pow(n) * root;
}

StructureConstants RelModStructure::constants(const RationalVector& probe, const RationalVector& second_probe) const {
    StructureConstants c;
    c.probe = probe;
    c.second_probe = second_probe;
    std::tie(c.delta_plus, c.delta_minus) = stabilization_closed_form(probe);
    const auto other = stabilization_closed_form(second_probe);
    if (other.first != c.delta_plus || other.second != c.delta_minus)
        throw Error(ErrorCode::InternalMismatch, "stabilization coefficients depend on the probe: " +
                                                     c.delta_plus.exact_string() + " vs " + other.first.exact_string());
    std::tie(c.matrix_delta_plus, c.matrix_delta_minus) = stabilization_matrix(probe);
    if (c.matrix_delta_plus != c.delta_plus || c.matrix_delta_minus != c.delta_minus)
        throw Error(ErrorCode::InternalMismatch,
                    "closed form (" + c.delta_plus.exact_string() + ", " + c.delta_minus.exact_string() +
                        ") differs from matrix evaluation (" + c.matrix_delta_plus.exact_string() + ", " +
                        c.matrix_delta_minus.exact_string() + ")");
    c.zeta = zeta();
    c.sqrt_zeta = sqrt_zeta();
    return c;
}

ValidationReport RelModStructure::check_free_realization(const RationalVector& probe) const {
    ValidationReport rep;
    const GWInput& g = gw();
    const Module v = verma(data_, probe, 0);
    std::vector<std::pair<RationalVector, int>> gens;
    for (const auto& k : lambda0_.generators()) gens.push_back({k, 0});
    for (const auto& s : lambda0_.subspace()) {
        gens.push_back({s, 0});
        gens.push_back({scale(s, Rational(1, 3)), 0});
    }
    if (spec_.variant != Variant::Toral) gens.push_back({RationalVector(g.r()), 1});

    for (const auto& [k, p] : gens) {
        const std::string tag = "sigma(" + to_string(k) + ", " + std::to_string(p) + ")";
        Module sigma;
        try {
            sigma = one_dim(data_, k, p);
        } catch (const Error& e) {
            rep.entries.push_back({tag + ".one_dim", "one-dimensional and invertible", false, e.what()});
            continue;
        }
        const Module prod = tensor(sigma, one_dim(data_, scale(k, Rational(-1)), p));
        bool unit_weight = prod->dim() == 1 && is_zero_vector(prod->basis()[0].weight) && prod->basis()[0].parity == 0;
        rep.entries.push_back({tag + ".one_dim", "one-dimensional and invertible", unit_weight, ""});

        const auto th = twist(sigma).as_scalar();
        const bool ribbon = th && *th == Cyclotomic(1);
        rep.entries.push_back({tag + ".twist", "trivial twist", ribbon, ribbon ? "" : "theta = " + (th ? th->exact_string() : "?")});

        // psi(k, lambda) read off the double braiding with the probe Verma
        const CMatrix dbl = braiding(v, sigma) * braiding(sigma, v);
        const auto ps = dbl.as_scalar();
        const Cyclotomic expected = g.convention().q_pow(Rational(-2 * g.convention().s()) * g.kappa_dual(k, probe));
        bool psi_ok = ps && *ps == expected;
        std::string witness = psi_ok ? "" : "double braiding " + (ps ? ps->exact_string() : "not scalar");
        for (const auto& mu : lambda_.generators()) {
            if (!psi_ok) break;
            const Module vm = verma(data_, add(probe, mu), 0);
            const auto shifted = (braiding(vm, sigma) * braiding(sigma, vm)).as_scalar();
            if (!shifted || *shifted != *ps) {
                psi_ok = false;
                witness = "psi changes under shift by " + to_string(mu);
            }
        }
        rep.entries.push_back({tag + ".psi", "psi constant on the class", psi_ok, witness});
    }
    return rep;
}

}  // namespace gwtqft
