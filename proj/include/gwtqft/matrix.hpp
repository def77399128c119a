#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gwtqft/rational.hpp"

namespace gwtqft {

/// Dense row-major matrix of rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Throws ShapeMismatch on ragged input.
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix column(const RationalVector& v);
    static RationalMatrix diagonal(const RationalVector& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const;
    RationalVector col(std::size_t j) const;
    std::vector<RationalVector> to_rows() const;

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalVector operator*(const RationalVector& v) const;
    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator*(const Rational& s) const;
    bool operator==(const RationalMatrix& o) const = default;

    bool is_symmetric() const;
    bool is_integer() const;
    bool is_zero() const;

    Rational det() const;
    std::size_t rank() const;
    /// Throws Degenerate when singular.
    RationalMatrix inverse() const;
    /// Basis of {x : A x = 0}.
    std::vector<RationalVector> nullspace() const;
    /// Some x with A x = b, or nullopt.
    std::optional<RationalVector> solve(const RationalVector& b) const;
    /// Common denominator of all entries.
    Integer denominator() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const RationalVector& a, const Rational& s);
bool is_integer_vector(const RationalVector& v);
bool is_zero_vector(const RationalVector& v);

}  // namespace gwtqft
