#pragma once

#include <optional>
#include <vector>

#include "qsym/rational.hpp"

namespace qsym::exact {

// Dense rational matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<int> rref(Matrix& m);

int rank(Matrix m);

// Basis of {x : m x = 0}, one vector per free column, with a 1 in that column.
std::vector<std::vector<Rational>> nullspace(Matrix m);

// Solves a x = b for square nonsingular a; std::nullopt when a is singular.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b);

// Polynomial with rational coefficients, coefficient k multiplies x^k.
// Always trimmed: no trailing zero coefficients (the zero polynomial is empty).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;
    Polynomial derivative() const;
    Polynomial monic() const;

    friend Polynomial operator-(const Polynomial& p);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Rational> coeffs_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(Polynomial a, Polynomial b);  // monic, or zero

// det(x I - a) for square integer-valued a, via Faddeev-LeVerrier.
Polynomial characteristic_polynomial(const Matrix& a);

// Largest real root of a monic integer polynomial p, isolated with a Sturm
// sequence of the square-free part. `exact` is set when the root is rational
// (hence an integer); otherwise [lower, upper] brackets it
// with width below 2^-64 * max(1, |root|).
struct RealRoot {
    Rational lower;
    Rational upper;
    std::optional<Rational> exact;
    double approx() const;
};
std::optional<RealRoot> largest_real_root(const Polynomial& p);

}  // namespace qsym::exact
