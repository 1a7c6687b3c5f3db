#include "qsym/loop_algebra.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qsym/error.hpp"

namespace qsym {

LoopElement::LoopElement(int n) : n_(n) {
    if (n < 1) throw InvalidArgument("loop algebra needs n >= 1");
}

LoopElement LoopElement::monomial(int n, LoopMonomial m, const ComplexRational& coefficient) {
    LoopElement x(n);
    x.add_term(m, coefficient);
    return x;
}

LoopElement LoopElement::unit(int n) {
    LoopElement x(n);
    for (int i = 1; i <= n; ++i) x.add_term({i, 0}, ComplexRational(1));
    return x;
}

void LoopElement::check_monomial(const LoopMonomial& m) const {
    if (m.loop < 1 || m.loop > n_)
        throw InvalidArgument("loop index " + std::to_string(m.loop) + " outside 1.." + std::to_string(n_));
}

ComplexRational LoopElement::coefficient(const LoopMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ComplexRational() : it->second;
}

long long LoopElement::degree() const {
    long long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, std::llabs(m.exponent));
    return d;
}

void LoopElement::add_term(const LoopMonomial& m, const ComplexRational& c) {
    check_monomial(m);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
    if (o.n_ != n_) throw DimensionMismatch("loop algebras of different size");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
    if (o.n_ != n_) throw DimensionMismatch("loop algebras of different size");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

LoopElement& LoopElement::operator*=(const ComplexRational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

LoopElement operator*(const LoopElement& a, const LoopElement& b) { return multiply(a, b); }

LoopElement mono_multiply(int n, const LoopMonomial& x, const LoopMonomial& y) {
    LoopElement out(n);
    if (x.loop < 1 || x.loop > n || y.loop < 1 || y.loop > n)
        throw DimensionMismatch("monomial loop index outside 1.." + std::to_string(n));
    // S_i S_j = S_i^* S_j = S_i S_j^* = 0 for i != j; on one loop S_i is a
    // unitary of the corner p_i, so exponents add.
    if (x.loop == y.loop) out.add_term({x.loop, x.exponent + y.exponent}, ComplexRational(1));
    return out;
}

LoopElement multiply(const LoopElement& x, const LoopElement& y) {
    if (x.size() != y.size()) throw DimensionMismatch("loop algebras of different size");
    LoopElement out(x.size());
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms())
            if (mx.loop == my.loop) out.add_term({mx.loop, mx.exponent + my.exponent}, cx * cy);
    return out;
}

LoopElement adjoint(const LoopElement& x) {
    LoopElement out(x.size());
    for (const auto& [m, c] : x.terms()) out.add_term({m.loop, -m.exponent}, c.conj());
    return out;
}

bool is_projection(const LoopElement& x) { return adjoint(x) == x && multiply(x, x) == x; }

namespace {

void check_tau_weights(int n, const KmsWeightVector& c) {
    if (c.size() != n)
        throw DimensionMismatch("weight vector has " + std::to_string(c.size()) + " entries, algebra has " +
                                std::to_string(n) + " loops");
}

}  // namespace

ComplexRational tau(const LoopElement& x, const KmsWeightVector& c) {
    check_tau_weights(x.size(), c);
    if (c.mode() != NumericMode::exact || c.beta().value != 0.0)
        throw InvalidArgument("exact tau needs exact weights at beta = 0");
    ComplexRational acc;
    for (const auto& [m, coeff] : x.terms())
        if (m.exponent == 0) acc += coeff * ComplexRational(c[m.loop - 1]);
    return acc;
}

LoopElement gauge_action(const ComplexRational& z, const LoopElement& x) {
    if (z.norm_squared() != 1) throw InvalidArgument("gauge parameter must have modulus 1");
    LoopElement out(x.size());
    for (const auto& [m, c] : x.terms()) out.add_term(m, c * z.pow(m.exponent));
    return out;
}

CyclotomicLoopElement gauge_action(const RootOfUnity& z, const LoopElement& x) {
    if (z.order < 1) throw InvalidArgument("root of unity needs a positive order");
    CyclotomicLoopElement out{x.size(), z.order, {}};
    for (const auto& [m, c] : x.terms()) {
        CyclotomicNumber v = CyclotomicNumber(z.order, c).times_zeta_power(static_cast<long long>(z.power) * m.exponent);
        out.terms.emplace(m, std::move(v));
    }
    return out;
}

CyclotomicNumber tau(const CyclotomicLoopElement& x, const KmsWeightVector& c) {
    check_tau_weights(x.n, c);
    if (c.mode() != NumericMode::exact || c.beta().value != 0.0)
        throw InvalidArgument("exact tau needs exact weights at beta = 0");
    CyclotomicNumber acc(x.order);
    for (const auto& [m, coeff] : x.terms)
        if (m.exponent == 0) acc += coeff * ComplexRational(c[m.loop - 1]);
    return acc;
}

NumericLoopElement gauge_action(std::complex<double> z, const LoopElement& x) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) throw InvalidArgument("gauge parameter must have modulus 1");
    NumericLoopElement out{x.size(), {}};
    for (const auto& [m, c] : x.terms())
        out.terms.emplace(m, c.to_complex() * std::pow(z, static_cast<double>(m.exponent)));
    return out;
}

std::complex<double> tau(const NumericLoopElement& x, const std::vector<double>& weights) {
    if (static_cast<int>(weights.size()) != x.n) throw DimensionMismatch("weight vector does not match algebra");
    std::complex<double> acc = 0;
    for (const auto& [m, coeff] : x.terms)
        if (m.exponent == 0) acc += coeff * weights[static_cast<std::size_t>(m.loop - 1)];
    return acc;
}

LoopElement embed_general_word(const DirectedMultigraph& g, const GeneralWord& word) {
    if (!is_disjoint_loops(g)) throw InvalidArgument("word calculus needs the disjoint-loops graph");
    int vertex = validate_word(g, word);
    // edge e is the loop at vertex s(e), so a valid path never leaves its vertex
    auto mu = static_cast<long long>(word.mu.size());
    auto nu = static_cast<long long>(word.nu.size());
    return LoopElement::monomial(g.num_vertices(), {vertex, mu - nu});
}

namespace {

std::string monomial_text(const LoopMonomial& m) {
    std::string base = (m.exponent == 0 ? "p" : "S") + std::to_string(m.loop);
    if (m.exponent == 0 || m.exponent == 1) return base;
    if (m.exponent == -1) return base + "*";
    if (m.exponent > 1) return base + "^" + std::to_string(m.exponent);
    return base + "*^" + std::to_string(-m.exponent);
}

}  // namespace

std::string to_string(const LoopElement& x) {
    if (x.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : x.terms()) {
        std::string mono = monomial_text(m);
        if (c.is_real()) {
            bool negative = c.real() < 0;
            Rational mag = negative ? Rational(-c.real()) : c.real();
            if (first)
                out << (negative ? "-" : "");
            else
                out << (negative ? " - " : " + ");
            if (mag != 1) out << to_string(mag) << '*';
        } else {
            if (!first) out << " + ";
            out << '(' << to_string(c) << ")*";
        }
        out << mono;
        first = false;
    }
    return out.str();
}

namespace {

class ElementParser {
public:
    ElementParser(std::string_view text, int n) : text_(text), n_(n) {}

    LoopElement parse() {
        LoopElement result(n_);
        skip_ws();
        if (at_end()) fail("empty element");
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            skip_ws();
            LoopElement term = parse_term();
            result += ComplexRational(sign) * term;
            first = false;
            skip_ws();
            if (at_end()) break;
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("element '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool is_digit() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    long long parse_int() {
        if (!is_digit()) fail("expected an integer");
        std::size_t start = pos_;
        while (is_digit()) ++pos_;
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 15) fail("integer too large");
        return std::stoll(digits);
    }

    // digits [/digits | .digits]
    Rational parse_number() {
        std::size_t start = pos_;
        while (is_digit()) ++pos_;
        if (peek() == '/' || peek() == '.') {
            ++pos_;
            while (is_digit()) ++pos_;
        }
        if (start == pos_) fail("expected a number");
        return parse_rational(text_.substr(start, pos_ - start));
    }

    // number ['i'] | 'i'
    ComplexRational parse_real_or_imag() {
        if (peek() == 'i') {
            ++pos_;
            return ComplexRational::i();
        }
        Rational v = parse_number();
        if (peek() == 'i') {
            ++pos_;
            return {Rational(0), v};
        }
        return v;
    }

    ComplexRational parse_parenthesized() {
        ++pos_;  // '('
        ComplexRational acc;
        bool first = true;
        while (true) {
            skip_ws();
            if (peek() == ')') {
                if (first) fail("empty coefficient");
                ++pos_;
                return acc;
            }
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+', '-' or ')'");
            }
            acc += ComplexRational(sign) * parse_real_or_imag();
            first = false;
        }
    }

    LoopElement parse_monomial() {
        char kind = peek();
        ++pos_;
        int loop = static_cast<int>(parse_int());
        if (loop < 1 || loop > n_) fail("loop index " + std::to_string(loop) + " outside 1.." + std::to_string(n_));
        if (kind == 'p') return LoopElement::projection(n_, loop);
        long long exponent = 1;
        if (peek() == '*') {
            ++pos_;
            exponent = -1;
        }
        if (peek() == '^') {
            ++pos_;
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                ++pos_;
            }
            long long e = parse_int();
            exponent *= neg ? -e : e;
        }
        return LoopElement::monomial(n_, {loop, exponent});
    }

    LoopElement parse_term() {
        if (peek() == 'S' || peek() == 'p') return parse_monomial();
        ComplexRational coeff = peek() == '(' ? parse_parenthesized() : parse_real_or_imag();
        skip_ws();
        if (peek() == '*') {
            ++pos_;
            skip_ws();
            if (peek() != 'S' && peek() != 'p') fail("expected a monomial after '*'");
            return coeff * parse_monomial();
        }
        return coeff * LoopElement::unit(n_);
    }

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

LoopElement parse_element(std::string_view text, int n) { return ElementParser(text, n).parse(); }

LoopElement random_element(int n, long long max_degree, int max_terms, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> loop(1, n);
    std::uniform_int_distribution<long long> exponent(-max_degree, max_degree);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_int_distribution<int> numerator(-5, 5);
    std::uniform_int_distribution<int> denominator(1, 4);
    LoopElement x(n);
    for (int k = count(rng); k > 0; --k) {
        LoopMonomial m{loop(rng), exponent(rng)};
        Rational re(numerator(rng), denominator(rng));
        Rational im(numerator(rng), denominator(rng));
        x.add_term(m, {re, im});
    }
    return x;
}

}  // namespace qsym
