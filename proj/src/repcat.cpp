#include "gwtqft/repcat.hpp"

#include <bit>
#include <map>
#include <sstream>

#include "gwtqft/error.hpp"

namespace gwtqft {

namespace {

int sign_of(long e) { return (e & 1) ? -1 : 1; }

std::string weight_text(const RationalVector& w, int parity) {
    return to_string(w) + "," + std::to_string(parity);
}

bool same_data(const GWInput& a, const GWInput& b) {
    return &a == &b || (a.kappa() == b.kappa() && a.roots() == b.roots() && a.convention() == b.convention());
}

// Memoized q^x for repeated exponents inside a single computation.
class QCache {
public:
    explicit QCache(const Convention& c) : conv_(c) {}
    const Cyclotomic& operator()(const Rational& x) {
        auto it = cache_.find(x);
        if (it == cache_.end()) it = cache_.emplace(x, conv_.q_pow(x)).first;
        return it->second;
    }

private:
    const Convention& conv_;
    std::map<Rational, Cyclotomic> cache_;
};

}  // namespace

std::string basis_label(const BasisVector& b) { return "(" + weight_text(b.weight, b.parity) + ")"; }

WeightModule::WeightModule(GWData data, ModuleKind kind, std::string label, std::vector<BasisVector> basis,
                           std::vector<CMatrix> e, std::vector<CMatrix> f)
    : data_(std::move(data)), kind_(kind), label_(std::move(label)), basis_(std::move(basis)),
      e_(std::move(e)), f_(std::move(f)) {
    finish();
}

void WeightModule::finish() {
    const GWInput& gw = *data_;
    const std::size_t n = gw.n();
    if (e_.size() != n || f_.size() != n) throw Error(ErrorCode::ShapeMismatch, "one E and one F matrix per root");
    for (std::size_t i = 0; i < n; ++i)
        if (e_[i].rows() != dim() || e_[i].cols() != dim() || f_[i].rows() != dim() || f_[i].cols() != dim())
            throw Error(ErrorCode::ShapeMismatch, "generator matrix of wrong size");
    const Rational s = gw.convention().s();
    QCache q(gw.convention());
    k_eigen_.assign(dim(), {});
    kappa_eigen_.clear();
    kappa_inv_eigen_.clear();
    for (const auto& b : basis_) {
        const RationalVector chi = gw.chi(b.weight);
        Rational total = 0;
        std::vector<Cyclotomic> ks;
        for (const auto& c : chi) {
            ks.push_back(q(s * c));
            total += c;
        }
        k_eigen_[kappa_eigen_.size()] = std::move(ks);
        kappa_eigen_.push_back(q(s * total));
        kappa_inv_eigen_.push_back(q(-s * total));
    }
    const std::uint64_t subsets = std::uint64_t{1} << n;
    e_prod_.assign(subsets, CMatrix::identity(dim()));
    f_prod_.assign(subsets, CMatrix::identity(dim()));
    for (std::uint64_t m = 1; m < subsets; ++m) {
        const std::size_t top = 63 - static_cast<std::size_t>(std::countl_zero(m));
        const std::uint64_t rest = m & ~(std::uint64_t{1} << top);
        e_prod_[m] = e_prod_[rest] * e_[top];
        f_prod_[m] = f_prod_[rest] * f_[top];
    }
}

CMatrix WeightModule::k_matrix(std::size_t i, int power) const {
    std::vector<Cyclotomic> d;
    for (std::size_t b = 0; b < dim(); ++b) d.push_back(power >= 0 ? k_eigen_[b][i] : k_eigen_[b][i].inverse());
    return CMatrix::diagonal(d);
}

CMatrix WeightModule::parity_matrix() const {
    std::vector<Cyclotomic> d;
    for (const auto& b : basis_) d.emplace_back(sign_of(b.parity));
    return CMatrix::diagonal(d);
}

const CMatrix& WeightModule::E_product(std::uint64_t mask) const { return e_prod_.at(mask); }
const CMatrix& WeightModule::F_product(std::uint64_t mask) const { return f_prod_.at(mask); }

namespace {

std::shared_ptr<WeightModule> make_verma_like(const GWData& data, const RationalVector& lambda, int parity, bool quotient, ModuleKind kind,
                       const std::string& name) {
    const GWInput& gw = *data;
    if (lambda.size() != gw.r()) throw Error(ErrorCode::ShapeMismatch, "weight of wrong length");
    const std::size_t n = gw.n();
    const Rational s = gw.convention().s();
    const RationalVector chi = gw.chi(lambda);
    std::uint64_t atypical = 0;
    if (quotient)
        for (std::size_t i = 0; i < n; ++i)
            if (gw.is_atypical_index(lambda, i)) atypical |= std::uint64_t{1} << i;

    std::vector<std::uint64_t> masks;
    std::map<std::uint64_t, std::size_t> index;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        if ((m & atypical) == 0) {
            index[m] = masks.size();
            masks.push_back(m);
        }
    std::vector<BasisVector> basis;
    for (auto m : masks)
        basis.push_back({sub(lambda, gw.root_sum(m)), (parity + std::popcount(m)) & 1});

    std::vector<CMatrix> e(n, CMatrix(masks.size(), masks.size())), f = e;
    for (std::size_t l = 0; l < n; ++l) {
        const std::uint64_t bit = std::uint64_t{1} << l;
        const Cyclotomic bracket = gw.convention().qnum(s * chi[l]);
        for (std::size_t col = 0; col < masks.size(); ++col) {
            const std::uint64_t m = masks[col];
            const int sg = sign_of(std::popcount(m & (bit - 1)));
            if (m & bit) {
                e[l].set(index.at(m & ~bit), col, bracket * Rational(sg));
            } else {
                const auto it = index.find(m | bit);
                if (it != index.end()) f[l].set(it->second, col, Cyclotomic(sg));
            }
        }
    }
    return std::make_shared<WeightModule>(data, kind, name + "(" + weight_text(lambda, parity) + ")", std::move(basis),
                                          std::move(e), std::move(f));
}

}  // namespace

Module verma(const GWData& data, const RationalVector& lambda, int parity) {
    auto m = make_verma_like(data, lambda, parity & 1, false, ModuleKind::Verma, "Verma");
    m->highest_ = lambda;
    m->highest_parity_ = parity & 1;
    return m;
}

Module simple_quotient(const GWData& data, const RationalVector& lambda, int parity) {
    auto m = make_verma_like(data, lambda, parity & 1, true, ModuleKind::Simple, "Simple");
    m->highest_ = lambda;
    m->highest_parity_ = parity & 1;
    return m;
}

Module one_dim(const GWData& data, const RationalVector& k, int parity) {
    for (std::size_t i = 0; i < data->n(); ++i)
        if (!data->is_atypical_index(k, i))
            throw Error(ErrorCode::NotOneDimensional,
                        "chi_" + std::to_string(i + 1) + "(" + to_string(k) + ") = " + data->chi(k)[i].get_str() +
                            " gives a nonzero bracket");
    auto m = make_verma_like(data, k, parity & 1, true, ModuleKind::OneDim, "OneDim");
    m->highest_ = k;
    m->highest_parity_ = parity & 1;
    return m;
}

Module unit_module(const GWData& data) { return one_dim(data, RationalVector(data->r()), 0); }

Module tensor(const Module& v, const Module& w) {
    if (!same_data(v->gw(), w->gw())) throw Error(ErrorCode::ConventionMismatch, "tensor of modules over different data");
    const std::size_t n = v->gw().n();
    std::vector<BasisVector> basis;
    for (const auto& a : v->basis())
        for (const auto& b : w->basis()) basis.push_back({add(a.weight, b.weight), (a.parity + b.parity) & 1});
    const CMatrix pv = v->parity_matrix();
    const CMatrix idw = CMatrix::identity(w->dim());
    std::vector<CMatrix> e, f;
    for (std::size_t i = 0; i < n; ++i) {
        // Delta E = E (x) K^{-1} + 1 (x) E, Delta F = F (x) 1 + K (x) F, Koszul signs from the parity of v
        e.push_back(v->E(i).kron(w->k_matrix(i, -1)) + pv.kron(w->E(i)));
        f.push_back(v->F(i).kron(idw) + (v->k_matrix(i, 1) * pv).kron(w->F(i)));
    }
    auto m = std::make_shared<WeightModule>(v->data(), ModuleKind::Tensor, v->label() + " (x) " + w->label(),
                                            std::move(basis), std::move(e), std::move(f));
    m->left_ = v;
    m->right_ = w;
    return m;
}

Module dual_module(const Module& v) {
    const std::size_t n = v->gw().n(), d = v->dim();
    std::vector<BasisVector> basis;
    for (const auto& b : v->basis()) basis.push_back({scale(b.weight, -1), b.parity});
    std::vector<CMatrix> e(n, CMatrix(d, d)), f = e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t b = 0; b < d; ++b) {
            const int sg = -sign_of(v->basis()[b].parity);
            // S(E) = -K E and S(F) = -F K^{-1}, with the Koszul sign of the functional
            for (const auto& [c, val] : v->E(i).row(b)) e[i].set(c, b, val * v->k_eigen(i, b) * Rational(sg));
            for (const auto& [c, val] : v->F(i).row(b)) f[i].set(c, b, val * v->k_eigen(i, c).inverse() * Rational(sg));
        }
    auto m = std::make_shared<WeightModule>(v->data(), ModuleKind::Dual, "Dual(" + v->label() + ")", std::move(basis),
                                            std::move(e), std::move(f));
    m->left_ = v;
    if (v->kind() == ModuleKind::OneDim) {
        m->kind_ = ModuleKind::OneDim;
        m->highest_ = scale(v->highest_weight(), -1);
        m->highest_parity_ = v->highest_parity();
    }
    return m;
}

CMatrix ev_left(const Module& v) {
    const std::size_t d = v->dim();
    CMatrix m(1, d * d);
    for (std::size_t b = 0; b < d; ++b) m.set(0, b * d + b, Cyclotomic(1));
    return m;
}

CMatrix coev_left(const Module& v) {
    const std::size_t d = v->dim();
    CMatrix m(d * d, 1);
    for (std::size_t b = 0; b < d; ++b) m.set(b * d + b, 0, Cyclotomic(1));
    return m;
}

CMatrix ev_right(const Module& v) {
    const std::size_t d = v->dim();
    CMatrix m(1, d * d);
    for (std::size_t b = 0; b < d; ++b)
        m.set(0, b * d + b, v->kappa_eigen(b) * Rational(sign_of(v->basis()[b].parity)));
    return m;
}

CMatrix coev_right(const Module& v) {
    const std::size_t d = v->dim();
    CMatrix m(d * d, 1);
    for (std::size_t b = 0; b < d; ++b)
        m.set(b * d + b, 0, v->kappa_inv_eigen(b) * Rational(sign_of(v->basis()[b].parity)));
    return m;
}

namespace {

// Sum over subsets I of coef_I * (E_I K_I (x) F_I K_I^{-1}) with the Koszul sign; callback receives
// (a, b, a', b', value) for v_a (x) w_b -> v_a' (x) w_b'.
template <class Fn>
void apply_r_matrix(const Module& v, const Module& w, bool inverse, Fn&& fn) {
    const GWInput& gw = v->gw();
    const std::size_t n = gw.n();
    const Convention& conv = gw.convention();
    const Cyclotomic h = conv.q_pow(1) - conv.q_pow(-1);
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::vector<Cyclotomic> coef(subsets);
    std::vector<CMatrix> et(subsets), ft(subsets);
    for (std::uint64_t m = 0; m < subsets; ++m) {
        const int k = std::popcount(m);
        Cyclotomic c = h.pow(k) * Rational(sign_of(static_cast<long>(k) * (k - 1) / 2));
        if (inverse) c *= Rational(sign_of(k));
        coef[m] = c;
        et[m] = v->E_product(m).transpose();
        ft[m] = w->F_product(m).transpose();
    }
    for (std::size_t a = 0; a < v->dim(); ++a)
        for (std::size_t b = 0; b < w->dim(); ++b)
            for (std::uint64_t m = 0; m < subsets; ++m) {
                if (et[m].row(a).empty() || ft[m].row(b).empty()) continue;
                Cyclotomic kk(1);
                for (std::size_t i = 0; i < n; ++i)
                    if (m >> i & 1) kk *= v->k_eigen(i, a) * w->k_eigen(i, b).inverse();
                const int k = std::popcount(m);
                const Cyclotomic base = coef[m] * kk * Rational(sign_of(static_cast<long>(k) * v->basis()[a].parity));
                for (const auto& [a2, ev] : et[m].row(a))
                    for (const auto& [b2, fv] : ft[m].row(b)) fn(a, b, a2, b2, base * ev * fv);
            }
}

}  // namespace

CMatrix braiding(const Module& v, const Module& w) {
    if (!same_data(v->gw(), w->gw())) throw Error(ErrorCode::ConventionMismatch, "braiding of modules over different data");
    const GWInput& gw = v->gw();
    const Rational s = gw.convention().s();
    QCache q(gw.convention());
    const std::size_t dv = v->dim(), dw = w->dim();
    CMatrix c(dw * dv, dv * dw);
    apply_r_matrix(v, w, false, [&](std::size_t a, std::size_t b, std::size_t a2, std::size_t b2, const Cyclotomic& x) {
        const Cyclotomic& ups = q(-s * gw.kappa_dual(v->basis()[a].weight, w->basis()[b].weight));
        const int tau = sign_of(v->basis()[a2].parity * w->basis()[b2].parity);
        c.add_to(b2 * dv + a2, a * dw + b, x * ups * Rational(tau));
    });
    return c;
}

CMatrix braiding_inverse(const Module& v, const Module& w) {
    if (!same_data(v->gw(), w->gw())) throw Error(ErrorCode::ConventionMismatch, "braiding of modules over different data");
    const GWInput& gw = v->gw();
    const Rational s = gw.convention().s();
    QCache q(gw.convention());
    const std::size_t dv = v->dim(), dw = w->dim();
    CMatrix c(dv * dw, dw * dv);
    apply_r_matrix(v, w, true, [&](std::size_t a, std::size_t b, std::size_t a2, std::size_t b2, const Cyclotomic& x) {
        const Cyclotomic& ups = q(s * gw.kappa_dual(v->basis()[a2].weight, w->basis()[b2].weight));
        const int tau = sign_of(v->basis()[a].parity * w->basis()[b].parity);
        c.add_to(a2 * dw + b2, b * dv + a, x * ups * Rational(tau));
    });
    return c;
}

CMatrix tensor_maps(const CMatrix& f, const CMatrix& g) { return f.kron(g); }

CMatrix partial_trace_right(const Module& v, const Module& w, const CMatrix& f) {
    const std::size_t dv = v->dim(), dw = w->dim();
    if (f.rows() != dv * dw || f.cols() != dv * dw) throw Error(ErrorCode::ShapeMismatch, "partial trace of a map of wrong size");
    std::vector<Cyclotomic> weight(dw);
    for (std::size_t c = 0; c < dw; ++c) weight[c] = w->kappa_eigen(c) * Rational(sign_of(w->basis()[c].parity));
    CMatrix out(dv, dv);
    for (std::size_t a = 0; a < dv; ++a)
        for (std::size_t c = 0; c < dw; ++c)
            for (const auto& [col, val] : f.row(a * dw + c)) {
                if (col % dw != c) continue;
                out.add_to(a, col / dw, val * weight[c]);
            }
    return out;
}

CMatrix partial_trace_left(const Module& v, const Module& w, const CMatrix& f) {
    const std::size_t dv = v->dim(), dw = w->dim();
    if (f.rows() != dv * dw || f.cols() != dv * dw) throw Error(ErrorCode::ShapeMismatch, "partial trace of a map of wrong size");
    CMatrix out(dw, dw);
    for (std::size_t c = 0; c < dv; ++c) {
        const Cyclotomic weight = v->kappa_inv_eigen(c) * Rational(sign_of(v->basis()[c].parity));
        for (std::size_t a = 0; a < dw; ++a)
            for (const auto& [col, val] : f.row(c * dw + a)) {
                if (col / dw != c) continue;
                out.add_to(a, col % dw, val * weight);
            }
    }
    return out;
}

Cyclotomic pivotal_trace(const Module& v, const CMatrix& f) {
    if (f.rows() != v->dim() || f.cols() != v->dim()) throw Error(ErrorCode::ShapeMismatch, "trace of a map of wrong size");
    Cyclotomic t;
    for (std::size_t b = 0; b < v->dim(); ++b) t += f.at(b, b) * v->kappa_eigen(b) * Rational(sign_of(v->basis()[b].parity));
    return t;
}

CMatrix twist(const Module& v) { return partial_trace_right(v, v, braiding(v, v)); }

Cyclotomic twist_closed_form(const GWInput& data, const RationalVector& lambda) {
    const Rational s = data.convention().s();
    return data.convention().q_pow(-s * data.kappa_dual(lambda, lambda) + s * data.chi_sum(lambda));
}

CMatrix open_hopf(const Module& circle, const Module& open) {
    const CMatrix double_braid = braiding(circle, open) * braiding(open, circle);
    return partial_trace_right(open, circle, double_braid);
}

Cyclotomic open_hopf_closed_form(const GWInput& data, const RationalVector& circle, int circle_parity,
                                 const RationalVector& open, int open_parity) {
    (void)open_parity;
    const Convention& conv = data.convention();
    const Rational s = conv.s();
    Cyclotomic v = conv.q_pow(-2 * s * data.kappa_dual(circle, open) + s * data.chi_sum(add(circle, open)));
    for (const auto& c : data.chi(open)) v *= conv.q_pow(s * c) - conv.q_pow(-s * c);
    return v * Rational(sign_of(circle_parity + static_cast<long>(data.n())));
}

Cyclotomic modified_dim(const GWInput& data, const RationalVector& lambda, int parity) {
    const Convention& conv = data.convention();
    const Rational s = conv.s();
    Cyclotomic prod(1);
    for (const auto& c : data.chi(lambda)) {
        const Cyclotomic f = conv.q_pow(s * c) - conv.q_pow(-s * c);
        if (f.is_zero()) throw Error(ErrorCode::Atypical, "modified dimension of an atypical weight " + to_string(lambda));
        prod *= f;
    }
    return prod.inverse() * Rational(sign_of(parity));
}

Cyclotomic modified_trace(const Module& x, const CMatrix& f) {
    Module cur = x;
    CMatrix g = f;
    while (cur->kind() == ModuleKind::Tensor) {
        g = partial_trace_right(cur->left(), cur->right(), g);
        cur = cur->left();
    }
    const bool verma_like = cur->kind() == ModuleKind::Verma ||
                            (cur->kind() == ModuleKind::Simple && cur->dim() == (std::size_t{1} << cur->gw().n()));
    if (!verma_like || !cur->gw().typical(cur->highest_weight()))
        throw Error(ErrorCode::UnsupportedObject, "modified trace needs a typical Verma leftmost, got " + cur->label());
    const auto sc = g.as_scalar();
    if (!sc) throw Error(ErrorCode::NotScalar, "reduced endomorphism of " + cur->label() + " is not scalar");
    return *sc * modified_dim(cur->gw(), cur->highest_weight(), cur->highest_parity());
}

std::vector<BasisVector> decompose_generic(const Module& v) {
    const GWInput& gw = v->gw();
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> groups;
    std::vector<std::pair<std::string, int>> order;
    for (std::size_t b = 0; b < v->dim(); ++b) {
        const auto& bv = v->basis()[b];
        if (!gw.typical(bv.weight)) throw Error(ErrorCode::NotGeneric, "atypical weight " + to_string(bv.weight));
        const auto key = std::make_pair(to_string(bv.weight), bv.parity);
        auto [it, ins] = groups.try_emplace(key);
        if (ins) order.push_back(key);
        it->second.push_back(b);
    }
    std::vector<BasisVector> out;
    std::size_t covered = 0;
    for (const auto& key : order) {
        const auto& idx = groups.at(key);
        // singular vectors of this weight: joint kernel of the E_i
        CMatrix stack(gw.n() * v->dim(), idx.size());
        for (std::size_t i = 0; i < gw.n(); ++i) {
            const CMatrix et = v->E(i).transpose();
            for (std::size_t j = 0; j < idx.size(); ++j)
                for (const auto& [row, val] : et.row(idx[j])) stack.set(i * v->dim() + row, j, val);
        }
        const std::size_t mult = nullspace(stack).size();
        for (std::size_t k = 0; k < mult; ++k) out.push_back(v->basis()[idx[0]]);
        covered += mult << gw.n();
    }
    if (covered != v->dim())
        throw Error(ErrorCode::InternalMismatch, "highest weights account for " + std::to_string(covered) + " of " +
                                                     std::to_string(v->dim()) + " dimensions");
    return out;
}

std::vector<CMatrix> hom_basis(const Module& v, const Module& w) {
    const std::size_t n = v->gw().n();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> var;
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t r = 0; r < w->dim(); ++r)
        for (std::size_t c = 0; c < v->dim(); ++c)
            if (w->basis()[r].parity == v->basis()[c].parity && w->basis()[r].weight == v->basis()[c].weight) {
                var[{r, c}] = vars.size();
                vars.emplace_back(r, c);
            }
    // equations: (X^W f - f X^V)[r, c] = 0 for X in {E_i, F_i}
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> eq;
    std::vector<std::vector<std::pair<std::size_t, Cyclotomic>>> rows;
    auto add = [&](std::size_t g, std::size_t r, std::size_t c, std::size_t x, const Cyclotomic& val) {
        auto [it, ins] = eq.try_emplace({g, r, c}, rows.size());
        if (ins) rows.emplace_back();
        rows[it->second].emplace_back(x, val);
    };
    for (std::size_t g = 0; g < 2 * n; ++g) {
        const CMatrix& xw = g < n ? w->E(g) : w->F(g - n);
        const CMatrix& xv = g < n ? v->E(g) : v->F(g - n);
        const CMatrix xwt = xw.transpose();
        for (std::size_t k = 0; k < vars.size(); ++k) {
            const auto [r, c] = vars[k];
            for (const auto& [r2, val] : xwt.row(r)) add(g, r2, c, k, val);
            for (const auto& [c2, val] : xv.row(c)) add(g, r, c2, k, -val);
        }
    }
    CMatrix a(rows.size(), vars.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [k, val] : rows[i]) a.add_to(i, k, val);
    std::vector<CMatrix> out;
    for (const auto& vec : nullspace(a)) {
        CMatrix m(w->dim(), v->dim());
        for (std::size_t k = 0; k < vars.size(); ++k) m.set(vars[k].first, vars[k].second, vec[k]);
        out.push_back(std::move(m));
    }
    return out;
}

bool is_module_map(const Module& v, const Module& w, const CMatrix& f) {
    if (f.rows() != w->dim() || f.cols() != v->dim()) return false;
    for (std::size_t r = 0; r < f.rows(); ++r)
        for (const auto& [c, val] : f.row(r))
            if (w->basis()[r].parity != v->basis()[c].parity || w->basis()[r].weight != v->basis()[c].weight) return false;
    for (std::size_t i = 0; i < v->gw().n(); ++i) {
        if (w->E(i) * f != f * v->E(i)) return false;
        if (w->F(i) * f != f * v->F(i)) return false;
    }
    return true;
}

ValidationReport check_relations(const Module& v) {
    const GWInput& gw = v->gw();
    const std::size_t n = gw.n(), d = v->dim();
    const Convention& conv = gw.convention();
    ValidationReport rep;
    auto entry = [&](const std::string& id, const std::string& name, bool ok, const std::string& witness) {
        rep.entries.push_back({id, name, ok, ok ? "" : witness});
    };

    bool ok = true;
    std::string wit;
    for (std::size_t i = 0; i < n && ok; ++i)
        for (int kind = 0; kind < 2 && ok; ++kind) {
            const CMatrix& x = kind == 0 ? v->E(i) : v->F(i);
            const RationalVector shift = kind == 0 ? gw.root(i) : scale(gw.root(i), -1);
            for (std::size_t r = 0; r < d && ok; ++r)
                for (const auto& [c, val] : x.row(r))
                    if (v->basis()[r].weight != add(v->basis()[c].weight, shift) ||
                        v->basis()[r].parity == v->basis()[c].parity) {
                        ok = false;
                        wit = std::string(kind == 0 ? "E_" : "F_") + std::to_string(i + 1) + " entry (" +
                              std::to_string(r) + "," + std::to_string(c) + ")";
                        break;
                    }
        }
    entry("weights", "E_i, F_i shift weights by +-Q_i and flip parity", ok, wit);

    // K_a v = q^{s lambda_a} v, so K_a E_i K_a^{-1} = q^{s Q_ai} E_i
    ok = true;
    const Rational s = conv.s();
    for (std::size_t a = 0; a < gw.r() && ok; ++a) {
        std::vector<Cyclotomic> ka, kai;
        for (const auto& b : v->basis()) {
            ka.push_back(conv.q_pow(s * b.weight[a]));
            kai.push_back(conv.q_pow(-s * b.weight[a]));
        }
        const CMatrix K = CMatrix::diagonal(ka), Ki = CMatrix::diagonal(kai);
        for (std::size_t i = 0; i < n && ok; ++i) {
            const Cyclotomic f = conv.q_pow(s * gw.roots()(a, i));
            if (K * v->E(i) * Ki != v->E(i) * f || K * v->F(i) * Ki != v->F(i) * f.inverse()) {
                ok = false;
                wit = "a = " + std::to_string(a + 1) + ", i = " + std::to_string(i + 1);
            }
        }
    }
    entry("cartan", "K_a E_i K_a^{-1} = q^{s Q_ai} E_i, K_a F_i K_a^{-1} = q^{-s Q_ai} F_i", ok, wit);

    ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
            const CMatrix K = v->k_matrix(i, 1);
            if (K * v->E(j) != v->E(j) * K || K * v->F(j) != v->F(j) * K) {
                ok = false;
                wit = "K_" + std::to_string(i + 1) + " vs generator " + std::to_string(j + 1);
            }
        }
    entry("central", "K_i commutes with every E_j, F_j", ok, wit);

    ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = i; j < n && ok; ++j) {
            if (!(v->E(i) * v->E(j) + v->E(j) * v->E(i)).is_zero()) {
                ok = false;
                wit = "E_" + std::to_string(i + 1) + ", E_" + std::to_string(j + 1);
            } else if (!(v->F(i) * v->F(j) + v->F(j) * v->F(i)).is_zero()) {
                ok = false;
                wit = "F_" + std::to_string(i + 1) + ", F_" + std::to_string(j + 1);
            }
        }
    entry("anticommute", "E_i E_j + E_j E_i = 0 = F_i F_j + F_j F_i", ok, wit);

    ok = true;
    const Cyclotomic h = (conv.q_pow(1) - conv.q_pow(-1)).inverse();
    for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
            const CMatrix lhs = v->E(i) * v->F(j) + v->F(j) * v->E(i);
            const CMatrix rhs = i == j ? (v->k_matrix(i, 1) - v->k_matrix(i, -1)) * h : CMatrix(d, d);
            if (lhs != rhs) {
                ok = false;
                wit = "i = " + std::to_string(i + 1) + ", j = " + std::to_string(j + 1);
            }
        }
    entry("commutator", "E_i F_j + F_j E_i = delta_ij (K_i - K_i^{-1})/(q - q^{-1})", ok, wit);
    return rep;
}

}  // namespace gwtqft
