#pragma once

#include <string>
#include <vector>

#include "qsym/rational.hpp"

namespace qsym {

// z = exp(2 pi i * power / order)
struct RootOfUnity {
    int order = 1;
    int power = 0;
};

// Element of Q(i)(zeta_N), stored as a polynomial in zeta_N of degree
// < phi(N) with Gaussian-rational coefficients, reduced modulo the N-th
// cyclotomic polynomial. Reduced form makes equality a coefficient compare.
class CyclotomicNumber {
public:
    explicit CyclotomicNumber(int order);
    CyclotomicNumber(int order, const ComplexRational& value);

    int order() const { return order_; }
    const std::vector<ComplexRational>& coefficients() const { return coeffs_; }

    // multiplies by zeta^k (k may be negative)
    CyclotomicNumber times_zeta_power(long long k) const;

    CyclotomicNumber& operator+=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const ComplexRational& s);
    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const ComplexRational& s) { return a *= s; }
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    std::complex<double> to_complex() const;
    std::string to_string() const;

private:
    int order_;
    std::vector<ComplexRational> coeffs_;
};

// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
std::vector<long long> cyclotomic_polynomial(int order);

}  // namespace qsym
