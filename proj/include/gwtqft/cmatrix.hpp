#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwtqft/cyclotomic.hpp"

namespace gwtqft {

/// Sparse matrix over the cyclotomic numbers (row-wise ordered maps).
class CMatrix {
public:
    using Row = std::map<std::size_t, Cyclotomic>;

    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}
    static CMatrix identity(std::size_t n);
    static CMatrix scalar(std::size_t n, const Cyclotomic& c);
    static CMatrix diagonal(const std::vector<Cyclotomic>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;

    /// Entry (i, j); zero when absent.
    Cyclotomic at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Cyclotomic& v);
    void add_to(std::size_t i, std::size_t j, const Cyclotomic& v);
    const Row& row(std::size_t i) const { return data_[i]; }

    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const Cyclotomic& s) const;
    bool operator==(const CMatrix& o) const;
    bool operator!=(const CMatrix& o) const { return !(*this == o); }

    CMatrix transpose() const;
    /// Plain Kronecker product (no Koszul signs).
    CMatrix kron(const CMatrix& o) const;
    bool is_zero() const;
    /// c when the matrix is c * identity.
    std::optional<Cyclotomic> as_scalar() const;

    std::string to_string(int digits = 6) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Row> data_;
};

/// Basis of {x : A x = 0} for a matrix over the cyclotomic numbers.
std::vector<std::vector<Cyclotomic>> nullspace(const CMatrix& a);

}  // namespace gwtqft
