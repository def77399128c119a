#include "gwtqft/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "gwtqft/error.hpp"

namespace gwtqft {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix to_int(const RationalMatrix& m) {
    if (!m.is_integer()) throw Error(ErrorCode::NonInteger, "expected an integer matrix, got " + m.to_string());
    IntMatrix out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num();
    return out;
}

RationalMatrix to_rational(const IntMatrix& m, std::size_t rows, std::size_t cols) {
    RationalMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = Rational(m[i][j]);
    return out;
}

IntMatrix int_identity(std::size_t n) {
    IntMatrix m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Unimodular bookkeeping: u * b * v = current, x = u^{-1}, y = v^{-1}.
struct SmithState {
    IntMatrix b, u, v, x, y;
    std::size_t m, n;

    void swap_rows(std::size_t i, std::size_t j) {
        std::swap(b[i], b[j]);
        std::swap(u[i], u[j]);
        for (std::size_t k = 0; k < m; ++k) std::swap(x[k][i], x[k][j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < m; ++k) std::swap(b[k][i], b[k][j]);
        for (std::size_t k = 0; k < n; ++k) std::swap(v[k][i], v[k][j]);
        std::swap(y[i], y[j]);
    }
    // row_i += f * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& f) {
        if (f == 0) return;
        for (std::size_t k = 0; k < n; ++k) b[i][k] += f * b[j][k];
        for (std::size_t k = 0; k < m; ++k) u[i][k] += f * u[j][k];
        for (std::size_t k = 0; k < m; ++k) x[k][j] -= f * x[k][i];
    }
    // col_i += f * col_j
    void add_col(std::size_t i, std::size_t j, const Integer& f) {
        if (f == 0) return;
        for (std::size_t k = 0; k < m; ++k) b[k][i] += f * b[k][j];
        for (std::size_t k = 0; k < n; ++k) v[k][i] += f * v[k][j];
        for (std::size_t k = 0; k < n; ++k) y[j][k] -= f * y[i][k];
    }
    void negate_row(std::size_t i) {
        for (auto& e : b[i]) e = -e;
        for (auto& e : u[i]) e = -e;
        for (std::size_t k = 0; k < m; ++k) x[k][i] = -x[k][i];
    }
};

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const RationalMatrix& bm) {
    SmithState s;
    s.m = bm.rows();
    s.n = bm.cols();
    s.b = to_int(bm);
    s.u = int_identity(s.m);
    s.x = int_identity(s.m);
    s.v = int_identity(s.n);
    s.y = int_identity(s.n);
    const std::size_t steps = std::min(s.m, s.n);
    std::vector<Integer> diag(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // pivot: minimal nonzero |entry| in the trailing block, first in row-major order
            std::size_t pi = s.m, pj = s.n;
            Integer best;
            for (std::size_t i = t; i < s.m; ++i)
                for (std::size_t j = t; j < s.n; ++j) {
                    if (s.b[i][j] == 0) continue;
                    Integer a = abs(s.b[i][j]);
                    if (pi == s.m || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == s.m) break;
            if (pi != t) s.swap_rows(pi, t);
            if (pj != t) s.swap_cols(pj, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < s.m; ++i) {
                s.add_row(i, t, -floor_div(s.b[i][t], s.b[t][t]));
                if (s.b[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < s.n; ++j) {
                s.add_col(j, t, -floor_div(s.b[t][j], s.b[t][t]));
                if (s.b[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < s.m && divides; ++i)
                for (std::size_t j = t + 1; j < s.n; ++j)
                    if (s.b[i][j] % s.b[t][t] != 0) {
                        s.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (s.b[t][t] < 0) s.negate_row(t);
        diag[t] = s.b[t][t];
    }
    SmithDecomposition out;
    out.left = to_rational(s.x, s.m, s.m);
    out.left_inv = to_rational(s.u, s.m, s.m);
    out.right = to_rational(s.y, s.n, s.n);
    out.right_inv = to_rational(s.v, s.n, s.n);
    out.diagonal = std::move(diag);
    return out;
}

DiscriminantGroup::DiscriminantGroup(const RationalMatrix& gram) : gram_(gram) {
    if (!gram.is_integer()) throw Error(ErrorCode::NonInteger, "Gram matrix must be integral: " + gram.to_string());
    if (!gram.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "Gram matrix must be symmetric");
    const Rational d = gram.det();
    if (sgn(d) == 0) throw Error(ErrorCode::Degenerate, "Gram matrix is degenerate");
    gram_inv_ = gram.inverse();
    smith_ = smith_normal_form(gram);
    order_ = abs(d.get_num());
}

std::vector<Integer> DiscriminantGroup::invariant_factors() const {
    std::vector<Integer> f;
    for (const auto& d : smith_.diagonal)
        if (d != 1) f.push_back(d);
    return f;
}

std::vector<RationalVector> DiscriminantGroup::generators() const {
    std::vector<RationalVector> g;
    for (std::size_t i = 0; i < smith_.diagonal.size(); ++i)
        if (smith_.diagonal[i] != 1) g.push_back(smith_.right.row(i));
    return g;
}

std::vector<RationalVector> DiscriminantGroup::representatives() const {
    // B symmetric: B = Y^T D X^T, so Z^r / B Z^r has representatives Y^T j, 0 <= j_i < d_i.
    const std::size_t r = gram_.rows();
    std::vector<RationalVector> reps;
    std::vector<Integer> j(r, 0);
    for (;;) {
        RationalVector x(r);
        for (std::size_t i = 0; i < r; ++i)
            if (j[i] != 0)
                for (std::size_t c = 0; c < r; ++c) x[c] += Rational(j[i]) * smith_.right(i, c);
        reps.push_back(std::move(x));
        std::size_t pos = r;
        while (pos > 0) {
            --pos;
            if (++j[pos] < smith_.diagonal[pos]) break;
            j[pos] = 0;
            if (pos == 0) return reps;
        }
        if (r == 0) return reps;
    }
}

RationalVector DiscriminantGroup::class_key(const RationalVector& x) const {
    RationalVector k = gram_inv_ * x;
    for (auto& e : k) e = frac(e);
    return k;
}

bool DiscriminantGroup::same_class(const RationalVector& x, const RationalVector& y) const {
    return class_key(x) == class_key(y);
}

MetricMaps::MetricMaps(const RationalMatrix& gram) : gram_(gram) {
    if (!gram.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "metric must be symmetric");
    if (sgn(gram.det()) == 0) throw Error(ErrorCode::Degenerate, "metric is degenerate");
    inv_ = gram.inverse();
}

RationalVector MetricMaps::kappa_flat(const RationalVector& gamma) const { return gram_.transpose() * gamma; }

Rational MetricMaps::kappa_dual(const RationalVector& lambda, const RationalVector& mu) const {
    return dot(lambda, inv_ * mu);
}

bool is_even_integral(const RationalMatrix& gram) {
    if (!gram.is_integer()) return false;
    for (std::size_t i = 0; i < gram.rows() && i < gram.cols(); ++i)
        if (gram(i, i).get_num() % 2 != 0) return false;
    return true;
}

Signature signature(const RationalMatrix& m) {
    if (!m.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "signature of a non-symmetric matrix");
    RationalMatrix a = m;
    const std::size_t n = a.rows();
    Signature sig;
    // congruence: row_i += f row_j together with col_i += f col_j
    auto add = [&](std::size_t i, std::size_t j, const Rational& f) {
        for (std::size_t k = 0; k < n; ++k) a(i, k) += f * a(j, k);
        for (std::size_t k = 0; k < n; ++k) a(k, i) += f * a(k, j);
    };
    auto swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    };
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t p = t;
        while (p < n && sgn(a(p, p)) == 0) ++p;
        if (p == n) {
            // zero diagonal: use a hyperbolic pair (i, j) with a_ij != 0
            std::size_t pi = n, pj = n;
            for (std::size_t i = t; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (sgn(a(i, j)) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) {
                sig.zeros += static_cast<int>(n - t);
                break;
            }
            add(pi, pj, 1);
            p = pi;
        }
        if (p != t) swap(p, t);
        for (std::size_t i = t + 1; i < n; ++i)
            if (sgn(a(i, t)) != 0) add(i, t, -a(i, t) / a(t, t));
        if (sgn(a(t, t)) > 0) ++sig.positives;
        else ++sig.negatives;
    }
    return sig;
}

RationalLattice::RationalLattice(std::size_t dim, std::vector<RationalVector> generators,
                                 std::vector<RationalVector> subspace)
    : dim_(dim), generators_(std::move(generators)) {
    for (const auto& g : generators_)
        if (g.size() != dim) throw Error(ErrorCode::ShapeMismatch, "lattice generator of wrong length");
    // keep an independent basis of the subspace
    for (auto& s : subspace) {
        if (s.size() != dim) throw Error(ErrorCode::ShapeMismatch, "subspace vector of wrong length");
        std::vector<RationalVector> trial = subspace_;
        trial.push_back(s);
        if (RationalMatrix::from_rows(trial).rank() == trial.size()) subspace_.push_back(std::move(s));
    }
    if (subspace_.empty()) {
        projection_ = RationalMatrix::identity(dim);
    } else {
        auto ann = RationalMatrix::from_rows(subspace_).nullspace();
        projection_ = ann.empty() ? RationalMatrix(0, dim) : RationalMatrix::from_rows(ann);
    }
}

RationalLattice RationalLattice::dual_of(const RationalMatrix& g) {
    const std::size_t m = g.rows(), r = g.cols();
    if (g.rank() != m) throw Error(ErrorCode::Degenerate, "lattice basis is not linearly independent");
    // right inverse: G^T (G G^T)^{-1}
    const RationalMatrix right = g.transpose() * (g * g.transpose()).inverse();
    std::vector<RationalVector> gens;
    for (std::size_t j = 0; j < m; ++j) gens.push_back(right.col(j));
    return RationalLattice(r, std::move(gens), g.nullspace());
}

RationalVector RationalLattice::project(const RationalVector& v) const { return projection_ * v; }

std::vector<RationalVector> RationalLattice::projected_basis() const {
    const std::size_t k = projection_.rows();
    if (generators_.empty() || k == 0) return {};
    RationalMatrix m(k, generators_.size());
    for (std::size_t j = 0; j < generators_.size(); ++j) {
        const RationalVector p = project(generators_[j]);
        for (std::size_t i = 0; i < k; ++i) m(i, j) = p[i];
    }
    const Integer c = m.denominator();
    const RationalMatrix scaled = m * Rational(c);
    const SmithDecomposition s = smith_normal_form(scaled);
    std::vector<RationalVector> basis;
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
        if (s.diagonal[i] == 0) continue;
        Rational f(s.diagonal[i], c);
        f.canonicalize();
        basis.push_back(scale(s.left.col(i), f));
    }
    return basis;
}

std::size_t RationalLattice::lattice_rank() const { return projected_basis().size(); }

bool RationalLattice::contains(const RationalVector& v) const {
    if (v.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "membership test on a vector of wrong length");
    const RationalVector p = project(v);
    if (is_zero_vector(p)) return true;
    const auto basis = projected_basis();
    if (basis.empty()) return false;
    RationalMatrix b(p.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < p.size(); ++i) b(i, j) = basis[j][i];
    const auto sol = b.solve(p);  // basis is independent, so the solution is unique
    return sol && is_integer_vector(*sol);
}

bool RationalLattice::contains_subgroup(const RationalLattice& other) const {
    for (const auto& g : other.generators_)
        if (!contains(g)) return false;
    for (const auto& s : other.subspace_)
        if (!is_zero_vector(project(s))) return false;
    return true;
}

std::optional<Integer> RationalLattice::index_of(const RationalLattice& sub) const {
    if (!contains_subgroup(sub)) throw Error(ErrorCode::InternalMismatch, "index of a non-subgroup");
    if (sub.subspace_dim() != subspace_dim()) return std::nullopt;
    const auto big = projected_basis();
    // project the subgroup with this lattice's projection (the subspaces agree)
    RationalLattice sub_here(dim_, sub.generators_, subspace_);
    const auto small = sub_here.projected_basis();
    if (small.size() != big.size()) return std::nullopt;
    if (big.empty()) return Integer(1);
    const std::size_t k = big[0].size(), rho = big.size();
    RationalMatrix bm(k, rho);
    for (std::size_t j = 0; j < rho; ++j)
        for (std::size_t i = 0; i < k; ++i) bm(i, j) = big[j][i];
    RationalMatrix coords(rho, rho);
    for (std::size_t j = 0; j < rho; ++j) {
        const auto c = bm.solve(small[j]);
        if (!c) throw Error(ErrorCode::InternalMismatch, "subgroup vector outside the lattice span");
        for (std::size_t i = 0; i < rho; ++i) coords(i, j) = (*c)[i];
    }
    return abs(coords.det().get_num());
}

std::string RationalLattice::to_string() const {
    std::ostringstream os;
    os << "Z<";
    for (std::size_t i = 0; i < generators_.size(); ++i) os << (i ? ", " : "") << gwtqft::to_string(generators_[i]);
    os << ">";
    if (!subspace_.empty()) {
        os << " + Q<";
        for (std::size_t i = 0; i < subspace_.size(); ++i) os << (i ? ", " : "") << gwtqft::to_string(subspace_[i]);
        os << ">";
    }
    return os.str();
}

}  // namespace gwtqft
