#include "gwtqft/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "gwtqft/error.hpp"

namespace gwtqft {

namespace {

thread_local std::uint32_t g_conductor_cap = 1u << 18;

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

long inverse_mod(long a, long m) {
    long t = 0, nt = 1, r = m, nr = mod_pos(a, m);
    while (nr != 0) {
        long q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return mod_pos(t, m);
}

// Zumbroich basis data for Q(zeta_n). Exponent k is decomposed by CRT into its
// residues k mod p^e; the residue i + p^(e-1) m (0 <= i < p^(e-1)) is a basis
// residue iff m != 0 (p odd) or m == 0 (p = 2). Non-basis residues rewrite via
// 1 + eta + ... + eta^(p-1) = 0 (p odd) or eta = -1 (p = 2).
struct Basis {
    std::uint32_t n = 1;
    std::vector<std::uint32_t> prime;
    std::vector<std::uint32_t> prime_power;
    std::vector<std::uint64_t> idempotent;
    std::vector<std::uint32_t> offset;  // CSR into expansion, size n+1
    std::vector<std::pair<std::uint32_t, int>> expansion;
    std::vector<std::uint32_t> basis_exps;  // sorted
    std::vector<std::int32_t> index_of;     // k -> position in basis_exps or -1

    explicit Basis(std::uint32_t n_) : n(n_) {
        std::uint32_t m = n;
        for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= m; ++p) {
            if (m % p) continue;
            std::uint32_t pe = 1;
            while (m % p == 0) {
                m /= p;
                pe *= p;
            }
            prime.push_back(p);
            prime_power.push_back(pe);
        }
        if (m > 1) {
            prime.push_back(m);
            prime_power.push_back(m);
        }
        for (size_t j = 0; j < prime.size(); ++j) {
            const std::uint64_t rest = n / prime_power[j];
            const std::uint64_t inv = static_cast<std::uint64_t>(
                inverse_mod(static_cast<long>(rest % prime_power[j]), static_cast<long>(prime_power[j])));
            idempotent.push_back((rest * inv) % n);
        }
        offset.assign(n + 1, 0);
        index_of.assign(n, -1);
        std::vector<std::pair<std::uint64_t, int>> cur, next;
        for (std::uint32_t k = 0; k < n; ++k) {
            cur.assign(1, {0, 1});
            bool is_basis = true;
            for (size_t j = 0; j < prime.size(); ++j) {
                const std::uint32_t p = prime[j], pe = prime_power[j], low = pe / p;
                const std::uint32_t kp = k % pe, hi = kp / low, lo = kp % low;
                std::vector<std::pair<std::uint32_t, int>> opts;
                if (p == 2) {
                    if (hi == 0) opts.push_back({kp, 1});
                    else opts.push_back({lo, -1});
                } else {
                    if (hi != 0) opts.push_back({kp, 1});
                    else
                        for (std::uint32_t mm = 1; mm < p; ++mm) opts.push_back({lo + low * mm, -1});
                }
                if (opts.size() != 1 || opts[0].second != 1) is_basis = false;
                next.clear();
                for (const auto& [e, s] : cur)
                    for (const auto& [r, t] : opts) next.push_back({(e + idempotent[j] * r) % n, s * t});
                std::swap(cur, next);
            }
            if (is_basis) index_of[k] = 0;
            for (const auto& [e, s] : cur) expansion.push_back({static_cast<std::uint32_t>(e), s});
            offset[k + 1] = static_cast<std::uint32_t>(expansion.size());
        }
        for (std::uint32_t k = 0; k < n; ++k)
            if (index_of[k] == 0) {
                index_of[k] = static_cast<std::int32_t>(basis_exps.size());
                basis_exps.push_back(k);
            }
    }
};

const Basis& basis_for(std::uint32_t n) {
    thread_local const Basis* last = nullptr;
    if (last && last->n == n) return *last;
    if (n > g_conductor_cap)
        throw Error(ErrorCode::SizeLimit, "cyclotomic conductor " + std::to_string(n) + " exceeds cap " +
                                              std::to_string(g_conductor_cap));
    static std::mutex mu;
    static std::map<std::uint32_t, std::unique_ptr<Basis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Basis>(n);
    last = slot.get();
    return *slot;
}

std::uint32_t checked_lcm(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t l = lcm_u64(a, b);
    if (l > g_conductor_cap)
        throw Error(ErrorCode::SizeLimit,
                    "cyclotomic conductor " + std::to_string(l) + " exceeds cap " + std::to_string(g_conductor_cap));
    return static_cast<std::uint32_t>(l);
}

// Dense accumulator indexed by exponent; reused per thread.
struct Accumulator {
    std::vector<Rational> value;
    std::vector<char> used;
    std::vector<std::uint32_t> touched;

    void reset(std::uint32_t n) {
        if (value.size() < n) {
            value.resize(n);
            used.resize(n, 0);
        }
    }
    void add(std::uint32_t k, const Rational& c, int sign) {
        if (!used[k]) {
            used[k] = 1;
            touched.push_back(k);
            if (sign > 0) value[k] = c;
            else value[k] = -c;
        } else if (sign > 0) {
            value[k] += c;
        } else {
            value[k] -= c;
        }
    }
    void add_expanded(const Basis& b, std::uint32_t k, const Rational& c) {
        for (std::uint32_t j = b.offset[k]; j < b.offset[k + 1]; ++j) add(b.expansion[j].first, c, b.expansion[j].second);
    }
    std::vector<Cyclotomic::Term> collect() {
        std::sort(touched.begin(), touched.end());
        std::vector<Cyclotomic::Term> out;
        out.reserve(touched.size());
        for (auto k : touched) {
            if (sgn(value[k]) != 0) out.emplace_back(k, std::move(value[k]));
            used[k] = 0;
        }
        touched.clear();
        return out;
    }
};

Accumulator& accumulator(std::uint32_t n) {
    thread_local Accumulator acc;
    acc.reset(n);
    return acc;
}

// Solves A x = b over Q for a (rows x cols) system; returns nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                                    size_t cols) {
    const size_t rows = a.size();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        const Rational inv = 1 / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            const Rational f = a[i][c];
            for (size_t j = c; j < cols; ++j)
                if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (sgn(b[i]) != 0) return std::nullopt;
    std::vector<Rational> x(cols);
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

std::vector<std::uint32_t> divisors(std::uint32_t n) {
    std::vector<std::uint32_t> d;
    for (std::uint32_t k = 1; static_cast<std::uint64_t>(k) * k <= n; ++k)
        if (n % k == 0) {
            d.push_back(k);
            if (k != n / k) d.push_back(n / k);
        }
    std::sort(d.begin(), d.end());
    return d;
}

std::uint32_t euler_phi(std::uint32_t n) {
    std::uint32_t result = n, m = n;
    for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

ConductorCap::ConductorCap(std::uint32_t cap) : previous_(g_conductor_cap) { g_conductor_cap = cap; }
ConductorCap::~ConductorCap() { g_conductor_cap = previous_; }
std::uint32_t ConductorCap::current() { return g_conductor_cap; }

Cyclotomic::Cyclotomic(long v) : Cyclotomic(Rational(v)) {}

Cyclotomic::Cyclotomic(const Rational& r) {
    if (sgn(r) != 0) terms_.emplace_back(0, r);
}

Cyclotomic Cyclotomic::zeta(std::uint32_t n, long k) {
    const Basis& b = basis_for(n);
    Accumulator& acc = accumulator(n);
    acc.add_expanded(b, static_cast<std::uint32_t>(mod_pos(k, n)), Rational(1));
    Cyclotomic out;
    out.n_ = n;
    out.terms_ = acc.collect();
    return out;
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& r) {
    const Rational f = frac(r);
    if (sgn(f) == 0) return Cyclotomic(1);
    const Integer& den = f.get_den();
    if (!den.fits_ulong_p() || den.get_ui() > g_conductor_cap)
        throw Error(ErrorCode::SizeLimit, "root of unity of order " + den.get_str() + " exceeds conductor cap");
    const long q = static_cast<long>(den.get_ui());
    const long p = f.get_num().get_si();
    if (q % 4 == 2) {
        // exp(2 pi i p/q) = -exp(2 pi i ((p - q/2)/2)/(q/2)) with q/2 odd and p odd
        const long h = q / 2;
        return -zeta(static_cast<std::uint32_t>(h), mod_pos((p - h) / 2, h));
    }
    return zeta(static_cast<std::uint32_t>(q), p);
}

Cyclotomic Cyclotomic::from_powers(std::uint32_t n, const std::vector<std::pair<long, Rational>>& powers) {
    const Basis& b = basis_for(n);
    Accumulator& acc = accumulator(n);
    for (const auto& [k, c] : powers)
        if (sgn(c) != 0) acc.add_expanded(b, static_cast<std::uint32_t>(mod_pos(k, n)), c);
    Cyclotomic out;
    out.n_ = n;
    out.terms_ = acc.collect();
    if (out.terms_.empty()) out.n_ = 1;
    return out;
}

Cyclotomic Cyclotomic::from_basis_terms(std::uint32_t n, std::vector<Term> terms) {
    const Basis& b = basis_for(n);
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    Cyclotomic out;
    out.n_ = n;
    for (auto& t : terms) {
        if (t.first >= n || b.index_of[t.first] < 0)
            throw Error(ErrorCode::InternalMismatch,
                        "exponent " + std::to_string(t.first) + " is not a basis exponent for conductor " +
                            std::to_string(n));
        if (!out.terms_.empty() && out.terms_.back().first == t.first)
            throw Error(ErrorCode::InternalMismatch, "repeated exponent");
        if (sgn(t.second) != 0) out.terms_.push_back(std::move(t));
    }
    if (out.terms_.empty()) out.n_ = 1;
    return out;
}

Cyclotomic Cyclotomic::i() { return zeta(4, 1); }

Cyclotomic Cyclotomic::sqrt_of(long m) {
    if (m <= 0) throw Error(ErrorCode::Degenerate, "sqrt_of expects a positive integer");
    long square = 1, free = 1, rest = m;
    for (long p = 2; p * p <= rest; ++p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int j = 0; j < e / 2; ++j) square *= p;
        if (e % 2) free *= p;
    }
    if (rest > 1) free *= rest;
    Cyclotomic root(square);
    long f = free;
    for (long p = 2; p <= f; ++p) {
        if (f % p) continue;
        f /= p;
        if (p == 2) {
            root *= zeta(8, 1) + zeta(8, 7);
            continue;
        }
        std::vector<std::pair<long, Rational>> powers;
        for (long a = 1; a < p; ++a) {
            // Legendre symbol via Euler's criterion
            long e = (p - 1) / 2, base = a % p, acc = 1;
            while (e) {
                if (e & 1) acc = acc * base % p;
                base = base * base % p;
                e >>= 1;
            }
            powers.emplace_back(a, Rational(acc == 1 ? 1 : -1));
        }
        Cyclotomic g = from_powers(static_cast<std::uint32_t>(p), powers);
        if (p % 4 == 3) g *= -i();
        root *= g;
    }
    mpfr_t re;
    mpfr_init2(re, 128);
    {
        auto [rs, is] = root.approx(30);
        mpfr_set_str(re, rs.c_str(), 10, MPFR_RNDN);
    }
    const bool negative = mpfr_sgn(re) < 0;
    mpfr_clear(re);
    return negative ? -root : root;
}

std::optional<Rational> Cyclotomic::as_rational() const {
    if (terms_.empty()) return Rational(0);
    if (n_ == 1) return terms_[0].second;
    const Basis& b = basis_for(n_);
    const std::uint32_t len = b.offset[1] - b.offset[0];
    if (terms_.size() != len) return std::nullopt;
    const int sign = b.expansion[b.offset[0]].second;
    std::vector<std::uint32_t> exps;
    for (std::uint32_t j = b.offset[0]; j < b.offset[1]; ++j) exps.push_back(b.expansion[j].first);
    std::sort(exps.begin(), exps.end());
    for (size_t j = 0; j < len; ++j)
        if (terms_[j].first != exps[j] || terms_[j].second != terms_[0].second) return std::nullopt;
    return sign > 0 ? terms_[0].second : Rational(-terms_[0].second);
}

Cyclotomic Cyclotomic::promoted(std::uint32_t m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw Error(ErrorCode::InternalMismatch, "promotion to a non-multiple conductor");
    Cyclotomic out;
    if (terms_.empty()) return out;
    const Basis& b = basis_for(m);
    Accumulator& acc = accumulator(m);
    const std::uint64_t scale = m / n_;
    for (const auto& [k, c] : terms_) acc.add_expanded(b, static_cast<std::uint32_t>(k * scale % m), c);
    out.n_ = m;
    out.terms_ = acc.collect();
    return out;
}

std::optional<Cyclotomic> Cyclotomic::demoted(std::uint32_t m) const {
    if (m == n_) return *this;
    if (n_ % m != 0) throw Error(ErrorCode::InternalMismatch, "demotion to a non-divisor conductor");
    if (terms_.empty()) return Cyclotomic();
    const Basis& bn = basis_for(n_);
    const Basis& bm = basis_for(m);
    const size_t rows = bn.basis_exps.size(), cols = bm.basis_exps.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (size_t j = 0; j < cols; ++j) {
        const Cyclotomic col = zeta(m, bm.basis_exps[j]).promoted(n_);
        for (const auto& [k, c] : col.terms_) a[bn.index_of[k]][j] = c;
    }
    std::vector<Rational> rhs(rows);
    for (const auto& [k, c] : terms_) rhs[bn.index_of[k]] = c;
    auto sol = solve_rational(std::move(a), std::move(rhs), cols);
    if (!sol) return std::nullopt;
    std::vector<Term> t;
    for (size_t j = 0; j < cols; ++j)
        if (sgn((*sol)[j]) != 0) t.emplace_back(bm.basis_exps[j], (*sol)[j]);
    return from_basis_terms(m, std::move(t));
}

Cyclotomic Cyclotomic::reduced() const {
    if (terms_.empty()) return Cyclotomic();
    if (auto r = as_rational()) return Cyclotomic(*r);
    const std::uint32_t phi_n = euler_phi(n_);
    auto ds = divisors(n_);
    std::stable_sort(ds.begin(), ds.end(),
                     [](std::uint32_t x, std::uint32_t y) { return euler_phi(x) < euler_phi(y); });
    for (auto m : ds) {
        if (m == 1 || m == n_ || m % 4 == 2) continue;
        const std::uint32_t phi_m = euler_phi(m);
        if (phi_m >= phi_n || phi_m > 256) continue;
        if (auto d = demoted(m)) return *d;
    }
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (n_ != o.n_) {
        const std::uint32_t m = checked_lcm(n_, o.n_);
        if (m != n_) *this = promoted(m);
        if (m != o.n_) return *this += o.promoted(m);
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].second + o.terms_[j].second;
            if (sgn(s) != 0) out.emplace_back(terms_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    if (terms_.empty()) n_ = 1;
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    if (sgn(r) == 0) {
        terms_.clear();
        n_ = 1;
        return *this;
    }
    for (auto& t : terms_) t.second *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.terms_.empty() || b.terms_.empty()) return Cyclotomic();
    if (b.n_ == 1) return a * b.terms_[0].second;
    if (a.n_ == 1) return b * a.terms_[0].second;
    const std::uint32_t m = checked_lcm(a.n_, b.n_);
    if (a.n_ != m || b.n_ != m) {
        const Cyclotomic pa = a.promoted(m), pb = b.promoted(m);
        return pa * pb;
    }
    const Basis& basis = basis_for(m);
    Accumulator& acc = accumulator(m);
    Rational prod;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            std::uint32_t k = ka + kb;
            if (k >= m) k -= m;
            acc.add_expanded(basis, k, prod);
        }
    Cyclotomic out;
    out.n_ = m;
    out.terms_ = acc.collect();
    if (out.terms_.empty()) out.n_ = 1;
    return out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
    if (a.n_ == b.n_) return a.terms_ == b.terms_;
    const std::uint32_t m = checked_lcm(a.n_, b.n_);
    return a.promoted(m).terms_ == b.promoted(m).terms_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (terms_.empty()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (n_ == 1) return Cyclotomic(Rational(1 / terms_[0].second));
    if (terms_.size() == 1) {
        Cyclotomic out = zeta(n_, -static_cast<long>(terms_[0].first));
        return out *= Rational(1 / terms_[0].second);
    }
    const Cyclotomic x = reduced();
    if (x.n_ == 1 || x.terms_.size() == 1) return x.inverse();
    const Basis& b = basis_for(x.n_);
    const size_t dim = b.basis_exps.size();
    std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim));
    for (size_t j = 0; j < dim; ++j) {
        const Cyclotomic col = x * zeta(x.n_, b.basis_exps[j]);
        for (const auto& [k, c] : col.promoted(x.n_).terms_) a[b.index_of[k]][j] = c;
    }
    std::vector<Rational> rhs(dim);
    for (const auto& [k, c] : Cyclotomic(1).promoted(x.n_).terms_) rhs[b.index_of[k]] = c;
    auto sol = solve_rational(std::move(a), std::move(rhs), dim);
    if (!sol) throw Error(ErrorCode::InternalMismatch, "cyclotomic inverse failed");
    std::vector<Term> t;
    for (size_t j = 0; j < dim; ++j)
        if (sgn((*sol)[j]) != 0) t.emplace_back(b.basis_exps[j], (*sol)[j]);
    return from_basis_terms(x.n_, std::move(t));
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic result(1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Cyclotomic Cyclotomic::galois(long a) const {
    if (terms_.empty() || n_ == 1) return *this;
    if (std::gcd(mod_pos(a, n_), static_cast<long>(n_)) != 1)
        throw Error(ErrorCode::InternalMismatch, "Galois exponent not coprime to the conductor");
    const Basis& b = basis_for(n_);
    Accumulator& acc = accumulator(n_);
    const std::uint64_t am = static_cast<std::uint64_t>(mod_pos(a, n_));
    for (const auto& [k, c] : terms_) acc.add_expanded(b, static_cast<std::uint32_t>(k * am % n_), c);
    Cyclotomic out;
    out.n_ = n_;
    out.terms_ = acc.collect();
    return out;
}

std::complex<double> Cyclotomic::to_complex() const {
    long double re = 0, im = 0;
    const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
    for (const auto& [k, c] : terms_) {
        const long double v = static_cast<long double>(c.get_d());
        const long double ang = two_pi * static_cast<long double>(k) / static_cast<long double>(n_);
        re += v * std::cos(ang);
        im += v * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::pair<std::string, std::string> Cyclotomic::approx(int digits) const {
    if (digits < 1) digits = 1;
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33 + 96);
    mpfr_t re, im, ang, tmp, c, pi;
    mpfr_inits2(prec, re, im, ang, tmp, c, pi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    mpfr_const_pi(pi, MPFR_RNDN);
    for (const auto& [k, q] : terms_) {
        mpfr_mul_ui(ang, pi, 2u * k, MPFR_RNDN);
        mpfr_div_ui(ang, ang, n_, MPFR_RNDN);
        mpfr_set_q(c, q.get_mpq_t(), MPFR_RNDN);
        mpfr_cos(tmp, ang, MPFR_RNDN);
        mpfr_mul(tmp, tmp, c, MPFR_RNDN);
        mpfr_add(re, re, tmp, MPFR_RNDN);
        mpfr_sin(tmp, ang, MPFR_RNDN);
        mpfr_mul(tmp, tmp, c, MPFR_RNDN);
        mpfr_add(im, im, tmp, MPFR_RNDN);
    }
    auto render = [digits](mpfr_t x) {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rf", digits, x);
        std::string s(buf);
        mpfr_free_str(buf);
        if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
        return s;
    };
    auto out = std::make_pair(render(re), render(im));
    mpfr_clears(re, im, ang, tmp, c, pi, static_cast<mpfr_ptr>(nullptr));
    return out;
}

std::string Cyclotomic::approx_string(int digits) const {
    auto [re, im] = approx(digits);
    if (im[0] == '-') return re + " - " + im.substr(1) + "i";
    return re + " + " + im + "i";
}

std::string Cyclotomic::exact_string() const {
    std::ostringstream os;
    os << "[" << n_ << ";";
    for (size_t j = 0; j < terms_.size(); ++j)
        os << (j ? ", " : " ") << terms_[j].first << ":" << terms_[j].second.get_str();
    os << "]";
    return os.str();
}

Cyclotomic Cyclotomic::parse_exact(const std::string& text) {
    auto fail = [&]() { return Error(ErrorCode::ParseError, "malformed cyclotomic '" + text + "'"); };
    const auto open = text.find('['), semi = text.find(';'), close = text.rfind(']');
    if (open == std::string::npos || semi == std::string::npos || close == std::string::npos || semi > close)
        throw fail();
    const Rational n = parse_rational(text.substr(open + 1, semi - open - 1));
    if (!is_integer(n) || sgn(n) <= 0 || !n.get_num().fits_ulong_p()) throw fail();
    std::vector<Term> terms;
    std::string body = text.substr(semi + 1, close - semi - 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw fail();
        const Rational k = parse_rational(item.substr(0, colon));
        if (!is_integer(k) || sgn(k) < 0) throw fail();
        terms.emplace_back(static_cast<std::uint32_t>(k.get_num().get_ui()), parse_rational(item.substr(colon + 1)));
    }
    return from_basis_terms(static_cast<std::uint32_t>(n.get_num().get_ui()), std::move(terms));
}

Cyclotomic q_power(const Rational& x) { return Cyclotomic::root_of_unity(x / 4); }

Cyclotomic quantum_number(const Rational& x) {
    // (q^x - q^-x) / (2i) = -(i/2)(q^x - q^-x)
    Cyclotomic d = q_power(x) - q_power(-x);
    return d * Cyclotomic::i() * Rational(-1, 2);
}

Cyclotomic inv_one_minus_root(const Rational& r) {
    const Rational f = frac(r);
    if (sgn(f) == 0) throw Error(ErrorCode::DivisionByZero, "1/(1 - 1)");
    const long m = f.get_den().get_si(), p = f.get_num().get_si();
    // 1/(1 - z) = -(1/m) sum_j j z^j for z^m = 1, z != 1
    std::vector<std::pair<long, Rational>> powers;
    for (long j = 1; j < m; ++j) {
        Rational c(-j, m);
        c.canonicalize();
        powers.emplace_back(p * j % m, c);
    }
    std::uint32_t cond = static_cast<std::uint32_t>(m);
    Cyclotomic out = Cyclotomic::from_powers(cond, powers);
    return out;
}

}  // namespace gwtqft
