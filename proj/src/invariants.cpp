#include "gwtqft/invariants.hpp"

#include <sstream>

#include "gwtqft/error.hpp"

namespace gwtqft {

namespace {

Cyclotomic sign(long e) { return (e % 2 == 0) ? Cyclotomic(1) : Cyclotomic(-1); }

// 2 sin(pi x), exactly.
Cyclotomic two_sin_pi(const Rational& x) {
    const Rational h = x / 2;
    return -Cyclotomic::i() * (Cyclotomic::root_of_unity(h) - Cyclotomic::root_of_unity(-h));
}

// q^{2x} - q^{-2x} at q = sqrt(-1).
Cyclotomic qdiff2(const Convention& cv, const Rational& x) { return cv.q_pow(2 * x) - cv.q_pow(-2 * x); }

Integer ipow(const Integer& b, long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

Cyclotomic int_pow(const Cyclotomic& c, long e) {
    if (e == 0) return Cyclotomic(1);
    return c.pow(e);
}

RationalVector class_of(const Module& m) { return m->highest_weight(); }

void require_genus(int g, int min) {
    if (g < min) throw Error(ErrorCode::HypothesisFailed, "genus must be at least " + std::to_string(min));
}

// Delta_- from the closed form at a deterministic probe.
Cyclotomic delta_minus(const RelModStructure& s) {
    std::mt19937_64 rng(1);
    return s.stabilization_closed_form(s.sample_generic(rng)).second;
}

}  // namespace

SurgeryResult cgp_invariant(const RelModStructure& s, const SurgeryPresentation& p) {
    if (!s.gw().convention().is_standard())
        throw Error(ErrorCode::ConventionMismatch, "surgery invariants need the modified convention at q = sqrt(-1)");
    SurgeryResult res;
    res.link = link_data(p.word);
    const LinkData& ld = res.link;

    // which component carries which surgery colour
    std::vector<int> surgery_index(ld.components, -1);
    std::vector<std::string> names;
    for (const auto& [name, cls] : p.surgery_classes) {
        if (!s.is_generic(cls))
            throw Error(ErrorCode::NonGenericClass, "surgery colour " + name + " has non-generic class " + to_string(cls));
        int count = 0;
        for (std::size_t c = 0; c < ld.components; ++c)
            if (ld.colour[c] == name) {
                surgery_index[c] = static_cast<int>(names.size());
                ++count;
            }
        if (count != 1)
            throw Error(ErrorCode::NotAdmissible, "surgery colour " + name + " must colour exactly one component, found " +
                                                      std::to_string(count));
        names.push_back(name);
    }
    for (std::size_t c = 0; c < ld.components; ++c)
        if (surgery_index[c] < 0 && !p.insertions.count(ld.colour[c]))
            throw Error(ErrorCode::NotAdmissible, "component coloured " + ld.colour[c] + " has no module");

    // holonomy constraint: the longitude of each surgery component has trivial class
    auto cls = [&](std::size_t c) {
        return surgery_index[c] >= 0 ? p.surgery_classes.at(ld.colour[c]) : class_of(p.insertions.at(ld.colour[c]));
    };
    for (std::size_t c = 0; c < ld.components; ++c) {
        if (surgery_index[c] < 0) continue;
        RationalVector total(s.gw().r());
        for (std::size_t j = 0; j < ld.components; ++j)
            total = add(total, scale(cls(j), Rational(ld.linking[c][j])));
        if (!s.grading_lattice().contains(total))
            throw Error(ErrorCode::NotAdmissible, "longitude of surgery component " + ld.colour[c] + " has class " +
                                                      to_string(total) + ", not trivial");
    }

    const std::size_t l = names.size();
    res.surgery_components = l;
    RationalMatrix lk(l, l);
    for (std::size_t a = 0; a < ld.components; ++a)
        for (std::size_t b = 0; b < ld.components; ++b)
            if (surgery_index[a] >= 0 && surgery_index[b] >= 0)
                lk(surgery_index[a], surgery_index[b]) = Rational(ld.linking[a][b]);
    res.signature = l ? signature(lk).value() : 0;

    // expand every surgery component over its Kirby colour
    std::vector<KirbyColour> colours;
    for (const auto& n : names) colours.push_back(s.kirby_colour(p.surgery_classes.at(n)));
    std::vector<std::vector<Module>> term_modules(l);
    for (std::size_t c = 0; c < l; ++c)
        for (const auto& t : colours[c].terms) term_modules[c].push_back(s.term_module(t));

    ColourTable table = p.insertions;
    std::vector<std::size_t> idx(l, 0);
    Cyclotomic f;
    for (;;) {
        Cyclotomic coeff(1);
        for (std::size_t c = 0; c < l; ++c) {
            coeff *= colours[c].terms[idx[c]].coefficient;
            table[names[c]] = term_modules[c][idx[c]];
        }
        f += coeff * evaluate_cut(p.word, table);
        std::size_t pos = 0;
        while (pos < l && ++idx[pos] == colours[pos].terms.size()) idx[pos++] = 0;
        if (pos == l) break;
    }
    res.f_prime = f;

    const Cyclotomic d = s.sqrt_zeta();
    const long e = p.signature_defect - res.signature;
    Cyclotomic factor = int_pow(d.inverse(), static_cast<long>(l) + 1);
    const Cyclotomic ratio = d / delta_minus(s);
    factor *= e >= 0 ? int_pow(ratio, e) : int_pow(ratio.inverse(), -e);
    res.value = factor * f;
    return res;
}

SurgeryPresentation s3_empty(const RelModStructure& s, const RationalVector& lambda) {
    SurgeryPresentation p;
    p.word = parse_word("input: V+\nid\n").word;
    p.insertions["V"] = verma(s.data(), lambda, 0);
    return p;
}

SurgeryPresentation s3_plus(const RelModStructure& s, const RationalVector& lambda) {
    // blowing down the (+1) meridian untwists the cut strand once, compensated by t+
    SurgeryPresentation p;
    p.word = parse_word("input: V+\nt+ cup_l:K\nx+ id\nx+ id\nid t+ id\nid cap_r\n").word;
    p.insertions["V"] = verma(s.data(), lambda, 0);
    p.surgery_classes["K"] = scale(lambda, Rational(-1));
    return p;
}

SurgeryPresentation s3_minus(const RelModStructure& s, const RationalVector& lambda) {
    SurgeryPresentation p;
    p.word = parse_word("input: V+\nt- cup_l:K\nx+ id\nx+ id\nid t- id\nid cap_r\n").word;
    p.insertions["V"] = verma(s.data(), lambda, 0);
    p.surgery_classes["K"] = lambda;
    return p;
}

SurgeryPresentation three_torus(const RationalVector& a, const RationalVector& b, const RationalVector& c) {
    // closure of the pure braid (s1 s2^-1)^3 with the first strand left open
    std::string w = "input: A+\nid cup_l:B\nid id cup_l:C id\n";
    for (int i = 0; i < 3; ++i) w += "x+ id:3\nid x- id:2\n";
    w += "id id cap_r id\nid cap_r\n";
    SurgeryPresentation p;
    p.word = parse_word(w).word;
    p.surgery_classes = {{"A", a}, {"B", b}, {"C", c}};
    return p;
}

Cyclotomic verlinde_partition(const RelModStructure& s, const VerlindeRequest& req) {
    const GWInput& gw = s.gw();
    const Convention& cv = gw.convention();
    const long g = req.genus;
    const long m = static_cast<long>(req.insertions.size());
    if (g < 0 || (g == 0 && m == 0))
        throw Error(ErrorCode::HypothesisFailed, "need genus >= 1, or genus 0 with an insertion");
    if (req.beta.size() != gw.r()) throw Error(ErrorCode::ShapeMismatch, "beta has the wrong length");
    RationalVector mu(gw.r());
    long parity = 0;
    for (const auto& w : req.insertions) {
        if (w.lambda.size() != gw.r()) throw Error(ErrorCode::ShapeMismatch, "insertion weight has the wrong length");
        mu = add(mu, w.lambda);
        parity += w.parity;
    }
    const Integer order = s.order();
    // |D|^{g-1}
    const Cyclotomic dpow = g >= 1 ? Cyclotomic(Rational(ipow(order, g - 1))) : Cyclotomic(Rational(Rational(1) / Rational(order)));

    if (s.variant() == Variant::Toral) {
        Cyclotomic sum;
        for (const auto& k : s.representatives()) sum += cv.q_pow(-2 * gw.kappa_dual(add(req.beta, k), mu));
        return dpow * sum;
    }

    const long n = static_cast<long>(gw.n());
    const long e = 2 * g - 2 + m;
    Cyclotomic sum;
    for (const auto& k : s.representatives()) {
        const auto chi = gw.chi(add(req.beta, k));
        Cyclotomic prod(1);
        for (long i = 0; i < n; ++i) {
            const Cyclotomic f = qdiff2(cv, chi[i]);
            if (e < 0 && f.is_zero())
                throw Error(ErrorCode::PoleAtBeta, "factor " + std::to_string(i + 1) + " vanishes at beta + " + to_string(k));
            prod *= e >= 0 ? int_pow(f, e) : int_pow(f.inverse(), -e);
        }
        sum += prod;
    }
    const Rational phase = -4 * gw.kappa_dual(req.beta, mu) + 2 * m * gw.chi_sum(req.beta) + 2 * gw.chi_sum(mu);
    return sign((g + 1 + m) * n + parity) * dpow * cv.q_pow(phase) * sum;
}

Cyclotomic euler_characteristic(const RelModStructure& s, int genus) {
    require_genus(genus, 1);
    const GWInput& gw = s.gw();
    const long e = 2L * genus - 2;
    Cyclotomic sum;
    for (const auto& k : s.representatives()) {
        const auto chi = gw.chi(k);
        Cyclotomic prod(1);
        for (std::size_t i = 0; i < gw.n(); ++i) prod *= int_pow(two_sin_pi(chi[i]), e);
        sum += prod;
    }
    const Cyclotomic v = Cyclotomic(Rational(ipow(s.order(), genus - 1))) * sum;
    if (v != v.conj()) throw Error(ErrorCode::InternalMismatch, "Euler characteristic is not real: " + v.exact_string());
    return v;
}

std::optional<Integer> state_space_dimension(const RelModStructure& s, int genus) {
    require_genus(genus, 1);
    switch (s.variant()) {
        case Variant::Toral: return ipow(s.order(), genus);
        case Variant::Kernel: {
            Integer r = 1;
            mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), s.gw().n() * (2 * genus - 2));
            return r;
        }
        case Variant::Compact:
            if (genus == 1) return s.order();
            return std::nullopt;
    }
    return std::nullopt;
}

BetheResult bethe_check(const RelModStructure& s, int genus) {
    require_genus(genus, 1);
    if (s.variant() == Variant::Kernel) throw Error(ErrorCode::UnsupportedObject, "Bethe vacua need a lattice Gamma");
    const GWInput& gw = s.gw();
    const RationalMatrix& g = s.spec().lattice;
    const RationalMatrix b = g * gw.kappa() * g.transpose();
    if (!b.is_integer()) throw Error(ErrorCode::NonIntegerGram, "Gram matrix " + b.to_string() + " is not integral");
    const RationalMatrix q = g * gw.roots();  // roots in coordinates dual to Gamma
    const std::size_t r = gw.r(), n = gw.n();

    // prod_b y_b^{B_ab} = (-1)^{sum_i q_ai}: with y = exp(2 pi i v), B v = c + z, c_a = sum_i q_ai / 2
    RationalVector c(r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t i = 0; i < n; ++i) c[a] += q(a, i) / 2;
    const RationalMatrix binv = b.inverse();
    const DiscriminantGroup disc(b);

    BetheResult res;
    const Cyclotomic order(Rational(disc.order()));
    for (const auto& z : disc.representatives()) {
        RationalVector v = binv * add(c, z);
        for (auto& x : v) x = frac(x);
        // the equations hold exactly
        const RationalVector lhs = b * v;
        for (std::size_t a = 0; a < r; ++a)
            if (!is_integer(lhs[a] - c[a])) throw Error(ErrorCode::InternalMismatch, "Bethe solution check failed");
        Cyclotomic h = order;
        for (std::size_t i = 0; i < n; ++i) {
            Rational t;
            for (std::size_t a = 0; a < r; ++a) t += v[a] * q(a, i);
            h *= (Cyclotomic(1) - Cyclotomic::root_of_unity(t)) * (Cyclotomic(1) - Cyclotomic::root_of_unity(-t));
        }
        res.solutions.push_back(std::move(v));
        res.handle_gluing.push_back(h);
        res.chi_via_bethe += int_pow(h, genus - 1);
    }
    res.chi_closed_form = euler_characteristic(s, genus);
    res.equal = res.chi_via_bethe == res.chi_closed_form;
    return res;
}

RationalMatrix gl11_lattice(long s, long t, const Rational& u) {
    if (s <= 0 || t <= 0) throw Error(ErrorCode::HypothesisFailed, "s and t must be positive");
    RationalMatrix g(2, 2);
    g(0, 1) = Rational(s) / t;
    g(1, 0) = Rational(t);
    g(1, 1) = u / t;
    return g;
}

Integer gl11_chi(long s, long t, const Rational& u, int genus) {
    require_genus(genus, 1);
    if (s <= 0 || t <= 0) throw Error(ErrorCode::HypothesisFailed, "s and t must be positive");
    if (!is_integer(2 * u)) throw Error(ErrorCode::HypothesisFailed, "u must be a half integer");
    if (!is_integer((Rational(t * t) + 2 * u) / 2))
        throw Error(ErrorCode::HypothesisFailed, "t^2 + 2u = " + to_string(Rational(t * t) + 2 * u) + " is not even");
    RationalMatrix b(2, 2);
    b(0, 1) = b(1, 0) = Rational(s);
    b(1, 1) = 2 * u;
    const SmithDecomposition sm = smith_normal_form(b);
    const long d1 = to_long(Rational(sm.diagonal[0])), d2 = to_long(Rational(sm.diagonal[1]));
    const long e = 2L * genus - 2;
    Cyclotomic sum;
    for (long i = 0; i < d1; ++i)
        for (long j = 0; j < d2; ++j) {
            const Rational x = Rational(i) * sm.right(0, 0) + Rational(j) * sm.right(1, 0);
            sum += int_pow(two_sin_pi(x * t / s), e);
        }
    const Cyclotomic total = Cyclotomic(Rational(ipow(Integer(s), 2L * genus - 2))) * sum;
    const auto v = total.as_rational();
    if (!v || !is_integer(*v)) throw Error(ErrorCode::InternalMismatch, "gl(1|1) Euler characteristic not integral");
    return v->get_num();
}

}  // namespace gwtqft
