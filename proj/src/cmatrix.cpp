#include "gwtqft/cmatrix.hpp"

#include <sstream>

#include "gwtqft/error.hpp"

namespace gwtqft {

CMatrix CMatrix::identity(std::size_t n) { return scalar(n, Cyclotomic(1)); }

CMatrix CMatrix::scalar(std::size_t n, const Cyclotomic& c) {
    CMatrix m(n, n);
    if (c.is_zero()) return m;
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace(i, c);
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<Cyclotomic>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) m.data_[i].emplace(i, d[i]);
    return m;
}

std::size_t CMatrix::nonzeros() const {
    std::size_t k = 0;
    for (const auto& r : data_) k += r.size();
    return k;
}

Cyclotomic CMatrix::at(std::size_t i, std::size_t j) const {
    const auto it = data_[i].find(j);
    return it == data_[i].end() ? Cyclotomic() : it->second;
}

void CMatrix::set(std::size_t i, std::size_t j, const Cyclotomic& v) {
    if (v.is_zero()) data_[i].erase(j);
    else data_[i][j] = v;
}

void CMatrix::add_to(std::size_t i, std::size_t j, const Cyclotomic& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = data_[i].try_emplace(j, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) data_[i].erase(it);
    }
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
    CMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [k, a] : data_[i])
            for (const auto& [j, b] : o.data_[k]) p.add_to(i, j, a * b);
    return p;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix sum shape mismatch");
    CMatrix s = *this;
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [j, v] : o.data_[i]) s.add_to(i, j, v);
    return s;
}

CMatrix CMatrix::operator-(const CMatrix& o) const { return *this + o * Cyclotomic(-1); }

CMatrix CMatrix::operator*(const Cyclotomic& s) const {
    CMatrix m(rows_, cols_);
    if (s.is_zero()) return m;
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[i]) m.data_[i].emplace(j, v * s);
    return m;
}

bool CMatrix::operator==(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (data_[i].size() != o.data_[i].size()) return false;
        auto a = data_[i].begin();
        auto b = o.data_[i].begin();
        for (; a != data_[i].end(); ++a, ++b)
            if (a->first != b->first || a->second != b->second) return false;
    }
    return true;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[i]) t.data_[j].emplace(i, v);
    return t;
}

CMatrix CMatrix::kron(const CMatrix& o) const {
    CMatrix k(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [j, a] : data_[i])
            for (std::size_t p = 0; p < o.rows_; ++p)
                for (const auto& [q, b] : o.data_[p]) k.data_[i * o.rows_ + p].emplace(j * o.cols_ + q, a * b);
    return k;
}

bool CMatrix::is_zero() const {
    for (const auto& r : data_)
        if (!r.empty()) return false;
    return true;
}

std::optional<Cyclotomic> CMatrix::as_scalar() const {
    if (rows_ != cols_) return std::nullopt;
    if (rows_ == 0) return Cyclotomic(1);
    const Cyclotomic c = at(0, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (c.is_zero()) {
            if (!data_[i].empty()) return std::nullopt;
            continue;
        }
        if (data_[i].size() != 1 || data_[i].begin()->first != i || data_[i].begin()->second != c) return std::nullopt;
    }
    return c;
}

std::string CMatrix::to_string(int digits) const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " matrix, " << nonzeros() << " nonzero entries\n";
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[i])
            os << "  (" << i << "," << j << ") " << v.exact_string() << " ~ " << v.approx_string(digits) << "\n";
    return os.str();
}

std::vector<std::vector<Cyclotomic>> nullspace(const CMatrix& a) {
    const std::size_t n = a.cols();
    // row reduction on sparse rows; pivots normalized to 1
    std::vector<CMatrix::Row> rows;
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!a.row(i).empty()) rows.push_back(a.row(i));
    std::vector<std::size_t> pivot_col;
    std::vector<CMatrix::Row> reduced;
    for (auto& r : rows) {
        // eliminate existing pivots from r
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            const auto it = r.find(pivot_col[k]);
            if (it == r.end()) continue;
            const Cyclotomic f = it->second;
            for (const auto& [j, v] : reduced[k]) {
                auto [jt, ins] = r.try_emplace(j, -(f * v));
                if (!ins) {
                    jt->second -= f * v;
                    if (jt->second.is_zero()) r.erase(jt);
                }
            }
        }
        if (r.empty()) continue;
        const std::size_t pc = r.begin()->first;
        const Cyclotomic inv = r.begin()->second.inverse();
        for (auto& [j, v] : r) v *= inv;
        // keep reduced rows free of the new pivot
        for (auto& other : reduced) {
            const auto it = other.find(pc);
            if (it == other.end()) continue;
            const Cyclotomic f = it->second;
            for (const auto& [j, v] : r) {
                auto [jt, ins] = other.try_emplace(j, -(f * v));
                if (!ins) {
                    jt->second -= f * v;
                    if (jt->second.is_zero()) other.erase(jt);
                }
            }
        }
        reduced.push_back(std::move(r));
        pivot_col.push_back(pc);
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Cyclotomic>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Cyclotomic> v(n);
        v[f] = Cyclotomic(1);
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            const auto it = reduced[k].find(f);
            if (it != reduced[k].end()) v[pivot_col[k]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace gwtqft
