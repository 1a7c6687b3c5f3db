#include "qsym/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsym/error.hpp"

namespace qsym {

std::vector<long long> cyclotomic_polynomial(int order) {
    if (order < 1) throw InvalidArgument("cyclotomic order must be positive");
    // x^N - 1 = prod_{d | N} Phi_d(x)
    std::vector<long long> num(static_cast<std::size_t>(order) + 1, 0);
    num.front() = -1;
    num.back() = 1;
    for (int d = 1; d < order; ++d) {
        if (order % d != 0) continue;
        std::vector<long long> den = cyclotomic_polynomial(d);
        const std::size_t dd = den.size() - 1;
        std::vector<long long> quot(num.size() - dd, 0);
        for (std::size_t k = num.size(); k-- > dd;) {
            long long f = num[k];  // den is monic
            quot[k - dd] = f;
            for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= f * den[j];
        }
        num = std::move(quot);
    }
    return num;
}

namespace {

std::vector<ComplexRational> reduce(std::vector<ComplexRational> poly, const std::vector<long long>& phi) {
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = poly.size(); k-- > deg;) {
        ComplexRational f = poly[k];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j <= deg; ++j) poly[k - deg + j] -= f * ComplexRational(Rational(phi[j]));
    }
    poly.resize(deg);
    return poly;
}

}  // namespace

CyclotomicNumber::CyclotomicNumber(int order) : order_(order) {
    coeffs_.assign(cyclotomic_polynomial(order).size() - 1, ComplexRational());
}

CyclotomicNumber::CyclotomicNumber(int order, const ComplexRational& value) : CyclotomicNumber(order) {
    coeffs_.front() = value;
}

CyclotomicNumber CyclotomicNumber::times_zeta_power(long long k) const {
    long long shift = ((k % order_) + order_) % order_;
    std::vector<ComplexRational> poly(coeffs_.size() + static_cast<std::size_t>(shift));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[j + static_cast<std::size_t>(shift)] = coeffs_[j];
    CyclotomicNumber out(order_);
    out.coeffs_ = reduce(std::move(poly), cyclotomic_polynomial(order_));
    return out;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
    if (o.order_ != order_) throw DimensionMismatch("cyclotomic numbers of different order");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const ComplexRational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

std::complex<double> CyclotomicNumber::to_complex() const {
    std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi / order_);
    std::complex<double> acc = 0, power = 1;
    for (const auto& c : coeffs_) {
        acc += c.to_complex() * power;
        power *= zeta;
    }
    return acc;
}

std::string CyclotomicNumber::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j].is_zero()) continue;
        if (!first) out << " + ";
        out << '(' << qsym::to_string(coeffs_[j]) << ')';
        if (j > 0) out << "*z" << order_ << '^' << j;
        first = false;
    }
    return first ? "0" : out.str();
}

}  // namespace qsym
