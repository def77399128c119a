#include "gwtqft/gw_data.hpp"

#include <sstream>
#include <unordered_map>

#include "gwtqft/error.hpp"

namespace gwtqft {

Cyclotomic Convention::q_pow(const Rational& x) const { return Cyclotomic::root_of_unity(c * x / 2); }

Cyclotomic Convention::qnum(const Rational& x) const {
    const Cyclotomic num = q_pow(x) - q_pow(-x);
    if (num.is_zero()) return num;
    return num / (q_pow(1) - q_pow(-1));
}

std::string Convention::to_string() const {
    return std::string(modified ? "modified" : "unmodified") + " q=exp(pi i*" + c.get_str() + ")";
}

bool ValidationReport::all_pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

const CheckEntry* ValidationReport::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

std::vector<std::string> ValidationReport::failures() const {
    std::vector<std::string> f;
    for (const auto& e : entries)
        if (!e.pass) f.push_back(e.id);
    return f;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        os << (e.pass ? "  pass " : "  FAIL ") << e.id << " (" << e.name << ")";
        if (!e.witness.empty()) os << ": " << e.witness;
        os << "\n";
    }
    return os.str();
}

GWInput::GWInput(RationalMatrix kappa, RationalMatrix roots, Convention conv)
    : kappa_(std::move(kappa)), roots_(std::move(roots)), conv_(std::move(conv)) {
    if (kappa_.rows() == 0) throw Error(ErrorCode::Degenerate, "rank 0 is not supported");
    if (!kappa_.square()) throw Error(ErrorCode::ShapeMismatch, "kappa must be square");
    if (roots_.rows() != kappa_.rows() && !(roots_.rows() == 0 && roots_.cols() == 0))
        throw Error(ErrorCode::ShapeMismatch, "Q must have r = " + std::to_string(kappa_.rows()) + " rows");
    if (roots_.rows() == 0) roots_ = RationalMatrix(kappa_.rows(), 0);
    if (!kappa_.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "kappa must be symmetric");
    if (sgn(kappa_.det()) == 0) throw Error(ErrorCode::Degenerate, "kappa must be invertible");
    if (is_integer(conv_.c)) throw Error(ErrorCode::Degenerate, "q must not be +-1");
    kappa_inv_ = kappa_.inverse();
}

Rational GWInput::kappa_dual(const RationalVector& lambda, const RationalVector& mu) const {
    if (lambda.size() != r() || mu.size() != r()) throw Error(ErrorCode::ShapeMismatch, "weight of wrong length");
    return dot(lambda, kappa_inv_ * mu);
}

RationalVector GWInput::chi(const RationalVector& lambda) const {
    if (lambda.size() != r()) throw Error(ErrorCode::ShapeMismatch, "weight of wrong length");
    const RationalVector y = kappa_inv_ * lambda;
    RationalVector out(n());
    for (std::size_t i = 0; i < n(); ++i)
        for (std::size_t a = 0; a < r(); ++a) out[i] += roots_(a, i) * y[a];
    return out;
}

Rational GWInput::chi_sum(const RationalVector& lambda) const {
    Rational s = 0;
    for (const auto& x : chi(lambda)) s += x;
    return s;
}

RationalVector GWInput::root_sum(std::uint64_t mask) const {
    RationalVector s(r());
    for (std::size_t i = 0; i < n(); ++i)
        if (mask >> i & 1)
            for (std::size_t a = 0; a < r(); ++a) s[a] += roots_(a, i);
    return s;
}

bool GWInput::is_atypical_index(const RationalVector& lambda, std::size_t i) const {
    // [s x]_q = 0 iff q^{2 s x} = 1 iff s c x is an integer
    const Rational x = chi(lambda)[i];
    return is_integer(Rational(conv_.s()) * conv_.c * x);
}

bool GWInput::typical(const RationalVector& lambda) const {
    for (std::size_t i = 0; i < n(); ++i)
        if (is_atypical_index(lambda, i)) return false;
    return true;
}

GWInput GWInput::with_convention(const Convention& c) const { return GWInput(kappa_, roots_, c); }

ValidationReport check_input(const GWInput& data) {
    const std::size_t n = data.n(), r = data.r();
    if (n > 12) throw Error(ErrorCode::SizeLimit, "the root check is limited to n <= 12");
    ValidationReport rep;

    CheckEntry fi{"fundamental_identity", "kappa^vee(Q_i, Q_j) = 0", true, ""};
    for (std::size_t i = 0; i < n && fi.pass; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Rational v = data.kappa_dual(data.root(i), data.root(j));
            if (sgn(v) != 0) {
                fi.pass = false;
                fi.witness = "kappa^vee(Q_" + std::to_string(i + 1) + ", Q_" + std::to_string(j + 1) + ") = " + v.get_str();
                break;
            }
        }
    rep.entries.push_back(fi);

    CheckEntry di{"dual_integrality", "sum_b kappa^{ab} Q_bi integral", true, ""};
    const RationalMatrix kq = data.kappa_inverse() * data.roots();
    for (std::size_t a = 0; a < r && di.pass; ++a)
        for (std::size_t i = 0; i < n; ++i)
            if (!is_integer(kq(a, i))) {
                di.pass = false;
                di.witness = "entry (" + std::to_string(a + 1) + "," + std::to_string(i + 1) + ") = " + kq(a, i).get_str();
                break;
            }
    rep.entries.push_back(di);

    CheckEntry nz{"no_zero_roots", "every root Q_i is nonzero", true, ""};
    for (std::size_t i = 0; i < n; ++i)
        if (is_zero_vector(data.root(i))) {
            nz.pass = false;
            nz.witness = "Q_" + std::to_string(i + 1) + " = 0";
            break;
        }
    rep.entries.push_back(nz);

    // Q_I + Q_J = 0 forces I = J = empty; look up -Q_I among all subset sums
    CheckEntry un{"unimodular", "Q_I + Q_J = 0 only for I = J = {}", true, ""};
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::unordered_map<std::string, std::vector<std::uint64_t>> by_sum;
    std::vector<RationalVector> sums(subsets);
    for (std::uint64_t m = 0; m < subsets; ++m) {
        sums[m] = data.root_sum(m);
        by_sum[to_string(sums[m])].push_back(m);
    }
    auto set_name = [n](std::uint64_t m) {
        std::string s = "{";
        bool first = true;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1) {
                s += (first ? "" : ",") + std::to_string(i + 1);
                first = false;
            }
        return s + "}";
    };
    for (std::uint64_t i = 0; i < subsets && un.pass; ++i) {
        const auto it = by_sum.find(to_string(scale(sums[i], -1)));
        if (it == by_sum.end()) continue;
        for (auto j : it->second)
            if (i != 0 || j != 0) {
                un.pass = false;
                un.witness = "I = " + set_name(i) + ", J = " + set_name(j);
                break;
            }
    }
    rep.entries.push_back(un);
    return rep;
}

RationalMatrix effective_metric(const GWInput& data) {
    RationalMatrix eff = data.kappa() + data.roots() * data.roots().transpose();
    if (sgn(eff.det()) == 0) throw Error(ErrorCode::DegenerateEffectiveMetric, "effective metric is degenerate");
    return eff;
}

Typicality typicality(const GWInput& data, const RationalVector& lambda) {
    return {data.chi(lambda), data.typical(lambda)};
}

RationalLattice SubgroupSpec::to_lattice(const GWInput& gw) const {
    const std::size_t r = gw.r();
    if (data.rows() > 0 && data.cols() != r)
        throw Error(ErrorCode::ShapeMismatch, "subgroup vectors must have length r = " + std::to_string(r));
    switch (kind) {
        case Kind::DualLatticeOf:
            return RationalLattice::dual_of(data);
        case Kind::ImageKappaFlat: {
            std::vector<RationalVector> gens;
            for (std::size_t i = 0; i < data.rows(); ++i) gens.push_back(gw.kappa_flat(data.row(i)));
            return RationalLattice(r, std::move(gens));
        }
        case Kind::LatticeInKernel:
            if (rational_span) return RationalLattice(r, {}, data.to_rows());
            return RationalLattice(r, data.to_rows());
    }
    return {};
}

std::string SubgroupSpec::describe() const {
    switch (kind) {
        case Kind::DualLatticeOf: return "dual lattice of " + data.to_string();
        case Kind::ImageKappaFlat: return "kappa-flat image of " + data.to_string();
        case Kind::LatticeInKernel:
            return std::string(rational_span ? "Q-span of " : "Z-span of ") + data.to_string();
    }
    return "";
}

namespace {

std::string vec_name(const RationalVector& v) { return to_string(v); }

}  // namespace

ValidationReport check_structure_conditions(const GWInput& data, const RationalLattice& lambda,
                                            const RationalLattice& lambda0, bool kernel_style) {
    const std::string p = kernel_style ? "B" : "A";
    ValidationReport rep;

    CheckEntry grading{p + "1", "grading: root lattice inside Lambda", true, ""};
    for (std::size_t i = 0; i < data.n(); ++i)
        if (!lambda.contains(data.root(i))) {
            grading.pass = false;
            grading.witness = "Q_" + std::to_string(i + 1) + " = " + vec_name(data.root(i)) + " not in Lambda";
            break;
        }
    rep.entries.push_back(grading);

    CheckEntry deg0{p + "2", "free realization in degree 0", true, ""};
    for (const auto& k : lambda0.generators())
        if (!lambda.contains(k)) {
            deg0.pass = false;
            deg0.witness = vec_name(k) + " not in Lambda";
            break;
        }
    if (deg0.pass && !lambda.contains_subgroup(lambda0)) {
        deg0.pass = false;
        deg0.witness = "rational part of Lambda_0 not in Lambda";
    }
    rep.entries.push_back(deg0);

    // psi: kappa^vee(k, lambda) integral; along rational directions it must vanish
    CheckEntry psi{p + "3", "existence of psi: kappa^vee(Lambda_0, Lambda) integral", true, ""};
    auto psi_fail = [&](const RationalVector& k, const RationalVector& l, const Rational& v) {
        psi.pass = false;
        psi.witness = "kappa^vee(" + vec_name(k) + ", " + vec_name(l) + ") = " + v.get_str();
    };
    for (const auto& k : lambda0.generators()) {
        for (const auto& l : lambda.generators()) {
            const Rational v = data.kappa_dual(k, l);
            if (!is_integer(v)) { psi_fail(k, l, v); break; }
        }
        if (!psi.pass) break;
        for (const auto& s : lambda.subspace()) {
            const Rational v = data.kappa_dual(k, s);
            if (sgn(v) != 0) { psi_fail(k, s, v); break; }
        }
        if (!psi.pass) break;
    }
    for (const auto& s0 : lambda0.subspace()) {
        if (!psi.pass) break;
        for (const auto& l : lambda.generators()) {
            const Rational v = data.kappa_dual(s0, l);
            if (sgn(v) != 0) { psi_fail(s0, l, v); break; }
        }
        for (const auto& s : lambda.subspace()) {
            if (!psi.pass) break;
            const Rational v = data.kappa_dual(s0, s);
            if (sgn(v) != 0) psi_fail(s0, s, v);
        }
    }
    rep.entries.push_back(psi);

    // ribbon: q(k) = -kappa^vee(k,k) + sum chi(k) in 2Z on all of Lambda_0; on generators this
    // needs q(k_i) in 2Z, sum chi(k_i) and kappa^vee(k_i, k_j) integral
    CheckEntry ribbon{p + "4", "trivial ribbon: -kappa^vee(k,k) + sum chi_i(k) even", true, ""};
    const auto& g0 = lambda0.generators();
    for (std::size_t i = 0; i < g0.size() && ribbon.pass; ++i) {
        const Rational q = -data.kappa_dual(g0[i], g0[i]) + data.chi_sum(g0[i]);
        const Rational cs = data.chi_sum(g0[i]);
        if (!is_integer(q / 2) || !is_integer(cs)) {
            ribbon.pass = false;
            ribbon.witness = "k = " + vec_name(g0[i]) + ": value " + q.get_str();
        }
        for (std::size_t j = i + 1; j < g0.size() && ribbon.pass; ++j) {
            const Rational v = data.kappa_dual(g0[i], g0[j]);
            if (!is_integer(v)) {
                ribbon.pass = false;
                ribbon.witness = "kappa^vee(" + vec_name(g0[i]) + ", " + vec_name(g0[j]) + ") = " + v.get_str();
            }
        }
    }
    for (const auto& s : lambda0.subspace()) {
        if (!ribbon.pass) break;
        bool ok = sgn(data.chi_sum(s)) == 0 && sgn(data.kappa_dual(s, s)) == 0;
        for (const auto& k : g0) ok = ok && sgn(data.kappa_dual(s, k)) == 0;
        for (const auto& t : lambda0.subspace()) ok = ok && sgn(data.kappa_dual(s, t)) == 0;
        if (!ok) {
            ribbon.pass = false;
            ribbon.witness = "rational direction " + vec_name(s) + " is not ribbon-trivial";
        }
    }
    rep.entries.push_back(ribbon);

    CheckEntry fin{p + "5", "finiteness: [Lambda : Lambda_0] finite", true, ""};
    if (!lambda.contains_subgroup(lambda0)) {
        fin.pass = false;
        fin.witness = "Lambda_0 is not a subgroup of Lambda";
    } else if (auto idx = lambda.index_of(lambda0)) {
        fin.witness = "index " + idx->get_str();
    } else {
        fin.pass = false;
        fin.witness = "index is infinite (Lambda has rank " +
                      std::to_string(lambda.lattice_rank()) + " + " + std::to_string(lambda.subspace_dim()) +
                      " rational directions, Lambda_0 has rank " + std::to_string(lambda0.lattice_rank()) + " + " +
                      std::to_string(lambda0.subspace_dim()) + ")";
    }
    rep.entries.push_back(fin);

    if (kernel_style) {
        CheckEntry inv{"B6", "invertibility: chi_i(k) integral", true, ""};
        for (const auto& k : g0)
            if (!is_integer_vector(data.chi(k))) {
                inv.pass = false;
                inv.witness = "chi(" + vec_name(k) + ") = " + to_string(data.chi(k));
                break;
            }
        for (const auto& s : lambda0.subspace())
            if (inv.pass && !is_zero_vector(data.chi(s))) {
                inv.pass = false;
                inv.witness = "chi does not vanish on rational direction " + vec_name(s);
            }
        rep.entries.push_back(inv);
    }
    return rep;
}

}  // namespace gwtqft
