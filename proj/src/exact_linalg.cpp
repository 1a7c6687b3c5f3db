#include "qsym/exact_linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "qsym/error.hpp"

namespace qsym::exact {

std::vector<int> rref(Matrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Rational>> nullspace(Matrix m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(m.cols()), Rational(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -m(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n) throw DimensionMismatch("solve: shape mismatch");
    Matrix aug(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[static_cast<std::size_t>(i)];
    }
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) < n || pivots.back() >= n) return std::nullopt;
    std::vector<Rational> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = aug(i, n);
    return x;
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long long>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    std::vector<Rational> c = coeffs_;
    Rational lead = c.back();
    for (auto& v : c) v /= lead;
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p) {
    std::vector<Rational> c = p.coeffs_;
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    for (int k = a.degree(); k >= db; --k) {
        Rational f = rem[static_cast<std::size_t>(k)] / b.leading();
        quot[static_cast<std::size_t>(k - db)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coefficients()[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Polynomial characteristic_polynomial(const Matrix& a) {
    const int n = a.rows();
    if (a.cols() != n) throw DimensionMismatch("characteristic polynomial needs a square matrix");
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
    c[static_cast<std::size_t>(n)] = 1;
    Matrix m(n, n);
    for (int k = 1; k <= n; ++k) {
        Matrix next(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational s = 0;
                for (int l = 0; l < n; ++l)
                    if (a(i, l) != 0 && m(l, j) != 0) s += a(i, l) * m(l, j);
                next(i, j) = s;
            }
        for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
        Rational trace = 0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) trace += a(i, l) * next(l, i);
        c[static_cast<std::size_t>(n - k)] = -trace / k;
        m = std::move(next);
    }
    return Polynomial(std::move(c));
}

double RealRoot::approx() const {
    if (exact) return to_double(*exact);
    return to_double((lower + upper) / 2);
}

namespace {

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        Polynomial r = divmod(chain[chain.size() - 2], chain.back()).remainder;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const auto& q : chain) {
        int s = sign(q(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

std::optional<RealRoot> largest_real_root(const Polynomial& p) {
    if (p.degree() < 1) return std::nullopt;
    Polynomial sf = divmod(p, gcd(p, p.derivative())).quotient.monic();
    if (sf.degree() == 0) return std::nullopt;
    auto chain = sturm_chain(sf);

    // Cauchy bound: every root lies in (-bound, bound).
    Rational bound = 0;
    for (int k = 0; k < sf.degree(); ++k) bound = std::max(bound, Rational(abs(sf.coefficients()[static_cast<std::size_t>(k)])));
    bound += 1;

    Rational lo = -bound;
    Rational hi = bound;
    const int v_hi = sign_changes(chain, hi);
    if (sign_changes(chain, lo) - v_hi == 0) return std::nullopt;  // no real roots

    const Rational eps = Rational(1, Integer(1) << 64);
    bool integer_checked = false;
    while (true) {
        Rational width = hi - lo;
        Rational scale = std::max(Rational(1), Rational(abs(hi)));
        if (!integer_checked && width < 1) {
            // sf is monic with integer coefficients (Gauss), so a rational root is an
            // integer; with width < 1 the only candidate is floor(hi).
            Integer k = boost::multiprecision::numerator(hi) / boost::multiprecision::denominator(hi);
            if (Rational(k) > hi) k -= 1;
            Rational cand(k);
            if (cand > lo && sf(cand) == 0 && sign_changes(chain, cand) - v_hi == 0)
                return RealRoot{cand, cand, cand};
            integer_checked = true;
        }
        if (width <= eps * scale) break;
        Rational mid = (lo + hi) / 2;
        if (sf(mid) == 0) {
            if (sign_changes(chain, mid) - v_hi == 0) return RealRoot{mid, mid, mid};
            mid = lo + (hi - lo) / 3;  // step off the smaller root
        }
        if (sign_changes(chain, mid) - v_hi > 0)
            lo = mid;
        else
            hi = mid;
    }
    return RealRoot{lo, hi, std::nullopt};
}

}  // namespace qsym::exact
