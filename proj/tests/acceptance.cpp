// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "gwtqft/error.hpp"
#include "gwtqft/invariants.hpp"
#include "gwtqft/lattice.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

CMatrix id(const Module& m) { return CMatrix::identity(m->dim()); }

CMatrix random_endo(std::mt19937_64& rng, const Module& x) {
    const auto basis = hom_basis(x, x);
    std::uniform_int_distribution<long> c(-3, 3);
    CMatrix f(x->dim(), x->dim());
    for (const auto& b : basis) f = f + b * Cyclotomic(c(rng));
    return f;
}

// f^vee = (ev_V (x) id_{V*}) (id_{V*} (x) f (x) id_{V*}) (id_{V*} (x) coev_V)
CMatrix dual_map(const Module& v, const CMatrix& f) {
    const auto dv = dual_module(v);
    return tensor_maps(ev_left(v), id(dv)) * tensor_maps(tensor_maps(id(dv), f), id(dv)) *
           tensor_maps(id(dv), coev_left(v));
}

RelModStructure gl11(long s, long t, const Rational& u) {
    return RelModStructure::build(gl11_data(), {Variant::Compact, gl11_lattice(s, t, u), false});
}
RelModStructure toral_two() {
    return RelModStructure::build(make_data(GWInput(mat({{2}}), RationalMatrix(1, 0))), {Variant::Toral, mat({{1}}), false});
}
RelModStructure psl_kernel() { return RelModStructure::build(gl11_data(), {Variant::Kernel, mat({{1, 0}}), true}); }

Outcome input_validation() {
    Outcome o;
    const auto d = gl11_data();
    const auto rep = check_input(*d);
    o.require(rep.all_pass(), "gl(1|1) input checks:\n" + rep.to_string());
    for (const char* id : {"fundamental_identity", "dual_integrality", "no_zero_roots", "unimodular"})
        o.require(rep.find(id) && rep.find(id)->pass, std::string("missing or failing ") + id);
    o.require(effective_metric(*d) == mat({{1, 1}, {1, 0}}), "effective metric " + effective_metric(*d).to_string());
    return o;
}

Outcome lattice_suite() {
    Outcome o;
    for (auto [s, two_u] : std::vector<std::pair<long, long>>{{3, 3}, {5, 5}, {2, 1}}) {
        const DiscriminantGroup d(mat({{0, s}, {s, two_u}}));
        const long g = std::gcd(s, two_u);
        const std::vector<Integer> expect{g, s * s / g};
        o.require(d.order() == s * s, "order for s = " + std::to_string(s));
        o.require(d.smith().diagonal == expect, "invariant factors for s = " + std::to_string(s));
        o.require(d.representatives().size() == static_cast<std::size_t>(s * s), "representative count");
    }
    return o;
}

Outcome category_axioms() {
    Outcome o;
    std::mt19937_64 rng(101);
    const std::vector<GWData> data{gl11_data(), rank3_data(), hyper_data()};
    for (int k = 0; k < 20; ++k) {
        const auto& d = data[k % data.size()];
        const auto l = random_weight(rng, d->r());
        const auto v = verma(d, l, k & 1);
        const auto w = verma(d, random_weight(rng, d->r()));
        const auto u = dual_module(verma(d, random_weight(rng, d->r())));
        const auto dv = dual_module(v);
        const std::string at = "weight " + to_string(l) + ": ";
        for (const auto& m : {v, dv, tensor(v, w)}) o.require(check_relations(m).all_pass(), at + "relations");
        o.require(tensor_maps(id(v), ev_left(v)) * tensor_maps(coev_left(v), id(v)) == id(v), at + "snake 1");
        o.require(tensor_maps(ev_left(v), id(dv)) * tensor_maps(id(dv), coev_left(v)) == id(dv), at + "snake 2");
        o.require(tensor_maps(ev_right(v), id(v)) * tensor_maps(id(v), coev_right(v)) == id(v), at + "snake 3");
        o.require(tensor_maps(id(dv), ev_right(v)) * tensor_maps(coev_right(v), id(dv)) == id(dv), at + "snake 4");
        const CMatrix cvw = braiding(v, w);
        o.require(is_module_map(tensor(v, w), tensor(w, v), cvw), at + "braiding is a module map");
        o.require(braiding(v, tensor(w, u)) == tensor_maps(id(w), braiding(v, u)) * tensor_maps(cvw, id(u)), at + "hexagon 1");
        o.require(braiding(tensor(v, w), u) == tensor_maps(braiding(v, u), id(w)) * tensor_maps(id(v), braiding(w, u)),
                  at + "hexagon 2");
        const CMatrix yb_l = tensor_maps(braiding(w, u), id(v)) * tensor_maps(id(w), braiding(v, u)) * tensor_maps(cvw, id(u));
        const CMatrix yb_r = tensor_maps(id(u), cvw) * tensor_maps(braiding(v, u), id(w)) * tensor_maps(id(v), braiding(w, u));
        o.require(yb_l == yb_r, at + "Yang-Baxter");
        o.require(twist(tensor(v, w)) == braiding(w, v) * cvw * tensor_maps(twist(v), twist(w)), at + "balancing");
        o.require(twist(dv) == dual_map(v, twist(v)), at + "twist of the dual");
    }
    return o;
}

Outcome closed_forms() {
    Outcome o;
    std::mt19937_64 rng(102);
    const std::vector<GWData> data{gl11_data(), rank3_data(), hyper_data()};
    for (int k = 0; k < 20; ++k) {
        const auto& d = data[k % data.size()];
        const auto l1 = random_typical(rng, *d), l2 = random_typical(rng, *d);
        const int p1 = k & 1, p2 = (k >> 1) & 1;
        const auto tw = twist(verma(d, l1, p1)).as_scalar();
        o.require(tw && *tw == twist_closed_form(*d, l1), "twist at " + to_string(l1));
        const auto h = open_hopf(verma(d, l1, p1), verma(d, l2, p2)).as_scalar();
        o.require(h && *h == open_hopf_closed_form(*d, l1, p1, l2, p2), "open Hopf at " + to_string(l1) + ", " + to_string(l2));
    }
    const auto d = gl11_data();
    const auto h = open_hopf(verma(d, {1, 0}), verma(d, {0, R(1, 2)})).as_scalar();
    o.require(h && *h == Cyclotomic(-2), "gl(1|1) Hopf scalar is not -2");
    return o;
}

Outcome modified_trace_axioms() {
    Outcome o;
    std::mt19937_64 rng(103);
    const std::vector<GWData> data{gl11_data(), hyper_data()};
    for (int k = 0; k < 50; ++k) {
        const auto& d = data[k % data.size()];
        const auto l1 = random_typical(rng, *d), l2 = random_typical(rng, *d);
        const auto v = verma(d, l1), w = verma(d, l2, k & 1);
        const auto vw = tensor(v, w);
        const CMatrix f = random_endo(rng, vw), g = random_endo(rng, vw);
        o.require(modified_trace(vw, f * g) == modified_trace(vw, g * f), "cyclicity");
        o.require(modified_trace(vw, f) == modified_trace(v, partial_trace_right(v, w, f)), "partial trace property");
    }
    for (int k = 0; k < 20; ++k) {
        const auto& d = k % 2 ? rank3_data() : gl11_data();
        const auto v = verma(d, random_weight(rng, d->r()), k & 1);
        o.require(pivotal_trace(v, id(v)).is_zero(), "nonzero quantum dimension");
    }
    const auto d = gl11_data();
    o.require(pivotal_trace(verma(d, {0, 1}), CMatrix::identity(2)).is_zero(), "atypical quantum dimension");
    return o;
}

Outcome structure_constants() {
    Outcome o;
    std::mt19937_64 rng(104);
    auto both = [&](const RelModStructure& s) {
        const auto a = s.constants(s.sample_generic(rng), s.sample_generic(rng));
        const auto b = s.constants(s.sample_generic(rng), s.sample_generic(rng));
        o.require(a.delta_plus == b.delta_plus && a.delta_minus == b.delta_minus, "probe dependence");
        o.require(a.zeta == a.delta_plus * a.delta_minus, "zeta is not the product");
        o.require(a.matrix_delta_plus == a.delta_plus && a.matrix_delta_minus == a.delta_minus, "matrix evaluation");
        return a;
    };
    const auto c = both(gl11(3, 1, R(3, 2)));
    o.require(c.zeta == Cyclotomic(-9), "compact zeta " + c.zeta.exact_string());
    const auto t = both(toral_two());
    o.require(t.delta_minus == Cyclotomic(1) + Cyclotomic::i(), "toral Delta_-");
    o.require(t.delta_plus == Cyclotomic(1) - Cyclotomic::i(), "toral Delta_+");
    o.require(t.zeta == Cyclotomic(2), "toral zeta");
    const auto k = both(psl_kernel());
    o.require(k.delta_plus == Cyclotomic(1) && k.delta_minus == Cyclotomic(-1) && k.zeta == Cyclotomic(-1), "kernel constants");
    return o;
}

Outcome surgery_invariance() {
    Outcome o;
    std::mt19937_64 rng(105);
    for (const auto& s : {gl11(3, 1, R(3, 2)), toral_two()}) {
        for (int k = 0; k < 3; ++k) {
            const auto l = s.sample_generic(rng);
            const auto e = cgp_invariant(s, s3_empty(s, l)).value;
            o.require(cgp_invariant(s, s3_plus(s, l)).value == e, "(+1) presentation at " + to_string(l));
            o.require(cgp_invariant(s, s3_minus(s, l)).value == e, "(-1) presentation at " + to_string(l));
            o.require(e == s.sqrt_zeta().inverse() * modified_dim(s.gw(), l), "empty presentation at " + to_string(l));
        }
    }
    return o;
}

Outcome euler_numbers() {
    Outcome o;
    const auto s = gl11(3, 1, R(3, 2));
    const std::vector<long> expect{9, 162};
    for (int g = 1; g <= 2; ++g) {
        const Cyclotomic x(expect[g - 1]);
        o.require(euler_characteristic(s, g) == x, "euler_characteristic g = " + std::to_string(g));
        o.require(gl11_chi(3, 1, R(3, 2), g) == expect[g - 1], "gl11_chi g = " + std::to_string(g));
        const auto b = bethe_check(s, g);
        o.require(b.equal && b.chi_via_bethe == x, "bethe_check g = " + std::to_string(g));
    }
    const auto t = toral_two();
    for (int g = 1; g <= 4; ++g) {
        const Integer d = Integer(1) << g;
        o.require(state_space_dimension(t, g) == d, "toral dimension g = " + std::to_string(g));
        o.require(euler_characteristic(t, g) == Cyclotomic(Rational(d)), "toral Euler g = " + std::to_string(g));
    }
    const auto k = psl_kernel();
    for (int g = 1; g <= 4; ++g) {
        o.require(state_space_dimension(k, g) == Integer(1) << (2 * g - 2), "kernel dimension g = " + std::to_string(g));
        o.require(euler_characteristic(k, g) == Cyclotomic(g == 1 ? 1 : 0), "kernel Euler g = " + std::to_string(g));
    }
    return o;
}

Outcome genus_one() {
    Outcome o;
    for (const auto& s : {toral_two(), gl11(3, 1, R(3, 2))}) {
        const std::size_t r = s.gw().r();
        auto cls = [&](long x, long y) { return r == 1 ? RationalVector{R(x, 5)} : RationalVector{R(x, 5), R(y, 5)}; };
        const auto a = cls(1, 1), b = cls(2, 3), c = cls(3, 2);
        const auto z = cgp_invariant(s, three_torus(a, b, c));
        const Cyclotomic closed = verlinde_partition(s, {1, {}, a});
        o.require(z.value == closed, std::string(variant_name(s.variant())) + ": matrix " + z.value.exact_string() +
                                         " vs closed " + closed.exact_string());
    }
    return o;
}

Outcome failing_cases() {
    Outcome o;
    const auto h = RelModStructure::assess(hyper_data(), {Variant::Compact, mat({{1, 0}}), false});
    o.require(!h.all_pass() && h.find("A5") && !h.find("A5")->pass, "hypermultiplet finiteness not flagged");
    for (long s : {2, 3, 5}) {
        const auto r = RelModStructure::assess(gl11_data(), {Variant::Compact, gl11_lattice(s, 1, 0), false});
        o.require(!r.all_pass() && r.find("even") && !r.find("even")->pass, "(s,1,0) evenness not flagged, s = " + std::to_string(s));
    }
    bool threw = false;
    try {
        RelModStructure::build(hyper_data(), {Variant::Compact, mat({{1, 0}}), false});
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::HypothesisFailed;
    }
    o.require(threw, "hypermultiplet structure was built");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "input validation", 1, input_validation},
        {2, "lattice suite", 1, lattice_suite},
        {3, "relation and category axioms", 120, category_axioms},
        {4, "closed-form oracles", 60, closed_forms},
        {5, "modified trace axioms", 120, modified_trace_axioms},
        {6, "structure constants", 60, structure_constants},
        {7, "surgery invariance", 120, surgery_invariance},
        {8, "Verlinde and Euler numbers", 60, euler_numbers},
        {9, "genus-1 cross-check", 300, genus_one},
        {10, "failing-case detection", 1, failing_cases},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && t > c.limit_seconds) {
            o.pass = false;
            o.detail = "over the time limit";
        }
        failed += !o.pass;
        std::printf("CRITERION %d %s: %s (%.3f s)%s%s\n", c.number, o.pass ? "PASS" : "FAIL", c.name, t,
                    o.detail.empty() ? "" : " ", o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
