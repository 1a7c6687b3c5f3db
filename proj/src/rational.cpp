#include "qsym/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qsym/error.hpp"

namespace qsym {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Decimal digits to an integer. cpp_int's string constructor reads a leading
// 0 as an octal prefix, so leading zeros are stripped first.
Integer decimal_integer(std::string_view digits) {
    auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return 0;
    return Integer(std::string(digits.substr(first)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        Integer d = decimal_integer(den);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = Rational(decimal_integer(num), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty()))
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Integer w = whole.empty() ? Integer(0) : decimal_integer(whole);
        Integer f = frac.empty() ? Integer(0) : decimal_integer(frac);
        value = Rational(w * scale + f, scale);
    } else {
        if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(text) + "'");
        value = Rational(decimal_integer(s));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
    const Integer& num = boost::multiprecision::numerator(r);
    const Integer& den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite value");
    int exponent = 0;
    double mantissa = std::frexp(x, &exponent);
    // 53 bits of mantissa make the scaled value an exact integer.
    auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational r{Integer(scaled)};
    if (exponent > 0) r *= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(exponent)));
    if (exponent < 0)
        r /= Rational(boost::multiprecision::pow(Integer(2), static_cast<unsigned>(-exponent)));
    return r;
}

ComplexRational ComplexRational::inverse() const {
    Rational n = norm_squared();
    if (n == 0) throw std::domain_error("inverse of zero");
    return {re_ / n, -im_ / n};
}

ComplexRational ComplexRational::pow(long long e) const {
    ComplexRational base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    ComplexRational result(1);
    while (k) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string to_string(const ComplexRational& z) {
    if (z.is_real()) return to_string(z.real());
    auto imag_part = [](const Rational& im) -> std::string {
        if (im == 1) return "i";
        if (im == -1) return "-i";
        return to_string(im) + "i";
    };
    if (z.real() == 0) return imag_part(z.imag());
    std::string im = imag_part(z.imag());
    if (im.front() != '-') im = "+" + im;
    return to_string(z.real()) + im;
}

std::ostream& operator<<(std::ostream& os, const ComplexRational& z) { return os << to_string(z); }

}  // namespace qsym
