#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "a", "-a/b" or a terminating decimal "1.25" into an exact rational.
// Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Exact rational image of a finite double (every binary double is a dyadic rational).
Rational rational_from_double(double x);

// Element of Q(i): re + im*i with exact rational parts.
class ComplexRational {
public:
    ComplexRational() = default;
    ComplexRational(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by intent
    ComplexRational(int re) : re_(re) {}                   // NOLINT
    ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    ComplexRational conj() const { return {re_, -im_}; }
    Rational norm_squared() const { return re_ * re_ + im_ * im_; }
    ComplexRational inverse() const;  // throws std::domain_error on zero
    ComplexRational pow(long long e) const;

    std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    ComplexRational operator-() const { return {-re_, -im_}; }
    ComplexRational& operator+=(const ComplexRational& o);
    ComplexRational& operator-=(const ComplexRational& o);
    ComplexRational& operator*=(const ComplexRational& o);

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

// Renders "3/2", "-i", "1/2+1/3i", "2i". Parsing lives with the element grammar.
std::string to_string(const ComplexRational& z);
std::ostream& operator<<(std::ostream& os, const ComplexRational& z);

}  // namespace qsym
