#pragma once

#include <complex>
#include <compare>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "qsym/cyclotomic.hpp"
#include "qsym/graph.hpp"
#include "qsym/kms.hpp"
#include "qsym/rational.hpp"

// Exact word calculus for the C*-algebra of n disjoint loops. Every element of
// the dense *-subalgebra is a finite combination of the normal-form monomials
//   (i, a) = S_i^a (a > 0),  p_i (a = 0),  (S_i^*)^{-a} (a < 0),
// and these monomials are linearly independent, so equality is decidable.
namespace qsym {

struct LoopMonomial {
    int loop = 1;            // 1..n
    long long exponent = 0;  // a in Z

    friend auto operator<=>(const LoopMonomial&, const LoopMonomial&) = default;
};

class LoopElement {
public:
    using Terms = std::map<LoopMonomial, ComplexRational>;

    explicit LoopElement(int n);

    static LoopElement monomial(int n, LoopMonomial m, const ComplexRational& coefficient = ComplexRational(1));
    static LoopElement generator_s(int n, int loop) { return monomial(n, {loop, 1}); }
    static LoopElement generator_s_star(int n, int loop) { return monomial(n, {loop, -1}); }
    static LoopElement projection(int n, int loop) { return monomial(n, {loop, 0}); }
    // The unit, sum_i p_i.
    static LoopElement unit(int n);

    int size() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    ComplexRational coefficient(const LoopMonomial& m) const;
    long long degree() const;  // max |a| over the support, 0 for the zero element

    // Adds c * m, dropping the term if it cancels.
    void add_term(const LoopMonomial& m, const ComplexRational& c);

    LoopElement& operator+=(const LoopElement& o);
    LoopElement& operator-=(const LoopElement& o);
    LoopElement& operator*=(const ComplexRational& s);

    friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
    friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
    friend LoopElement operator*(const ComplexRational& s, LoopElement a) { return a *= s; }
    friend LoopElement operator*(const LoopElement& a, const LoopElement& b);
    friend bool operator==(const LoopElement&, const LoopElement&) = default;

private:
    void check_monomial(const LoopMonomial& m) const;

    int n_;
    Terms terms_;
};

// (i, a)(j, b) = delta_ij (i, a + b).
LoopElement mono_multiply(int n, const LoopMonomial& x, const LoopMonomial& y);
LoopElement multiply(const LoopElement& x, const LoopElement& y);
LoopElement adjoint(const LoopElement& x);
bool is_projection(const LoopElement& x);

// KMS state at beta = 0: tau((i, a)) = delta_{a,0} c_i. Requires exact weights
// of matching length with beta = 0.
ComplexRational tau(const LoopElement& x, const KmsWeightVector& c);

// Gauge action gamma_z: the coefficient of (i, a) is multiplied by z^a.
// Exact for unimodular z in Q(i); throws InvalidArgument if |z| != 1.
LoopElement gauge_action(const ComplexRational& z, const LoopElement& x);

// Same action at an exact root of unity; coefficients land in Q(i)(zeta_N).
struct CyclotomicLoopElement {
    int n = 0;
    int order = 1;
    std::map<LoopMonomial, CyclotomicNumber> terms;
};
CyclotomicLoopElement gauge_action(const RootOfUnity& z, const LoopElement& x);
CyclotomicNumber tau(const CyclotomicLoopElement& x, const KmsWeightVector& c);

// Float version; |z| must be 1 within 1e-12.
struct NumericLoopElement {
    int n = 0;
    std::map<LoopMonomial, std::complex<double>> terms;
};
NumericLoopElement gauge_action(std::complex<double> z, const LoopElement& x);
std::complex<double> tau(const NumericLoopElement& x, const std::vector<double>& weights);

// S_mu S_nu^* on the disjoint-loops graph collapses to (i, |mu| - |nu|).
LoopElement embed_general_word(const DirectedMultigraph& g, const GeneralWord& word);

// Text syntax: "S1^3", "S2*^2", "S1^-2", "p4", combined with + / - and
// optional coefficients "3/2*S1", "2i*p1", "(1/2+1/3i)*S1^2". A bare scalar
// means that multiple of the unit; "0" is the zero element.
std::string to_string(const LoopElement& x);
LoopElement parse_element(std::string_view text, int n);

// Random element for property checks: up to max_terms monomials with
// |a| <= max_degree and small Gaussian-rational coefficients.
LoopElement random_element(int n, long long max_degree, int max_terms, std::mt19937_64& rng);

}  // namespace qsym
