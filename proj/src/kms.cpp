#include "qsym/kms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Dense>

#include "qsym/error.hpp"
#include "qsym/exact_linalg.hpp"

namespace qsym {

InverseTemperature InverseTemperature::log_of(const Rational& r) {
    if (r <= 0) throw InvalidArgument("ln of a non-positive number");
    return {std::log(to_double(r)), r};
}

InverseTemperature InverseTemperature::from_value(double beta) {
    if (beta == 0.0) return zero();
    return {beta, std::nullopt};
}

KmsWeightVector KmsWeightVector::exact(InverseTemperature beta, std::vector<Rational> weights) {
    if (weights.empty()) throw InvalidArgument("empty weight vector");
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw InvalidArgument("negative weight " + to_string(w));
        total += w;
    }
    if (total != 1) throw InvalidArgument("weights sum to " + to_string(total) + ", not 1");
    KmsWeightVector v;
    v.beta_ = std::move(beta);
    v.mode_ = NumericMode::exact;
    v.weights_ = std::move(weights);
    return v;
}

KmsWeightVector KmsWeightVector::floating(InverseTemperature beta, const std::vector<double>& weights) {
    if (weights.empty()) throw InvalidArgument("empty weight vector");
    double total = 0;
    KmsWeightVector v;
    v.beta_ = std::move(beta);
    v.mode_ = NumericMode::floating;
    for (double w : weights) {
        if (!(w >= 0)) throw InvalidArgument("negative weight " + std::to_string(w));
        total += w;
        v.weights_.push_back(rational_from_double(w));
    }
    if (std::abs(total - 1.0) > kCompareEpsilon)
        throw InvalidArgument("weights sum to " + std::to_string(total) + ", not 1");
    return v;
}

std::vector<double> KmsWeightVector::as_doubles() const {
    std::vector<double> out;
    out.reserve(weights_.size());
    for (const auto& w : weights_) out.push_back(to_double(w));
    return out;
}

bool KmsWeightVector::strictly_positive() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w > 0; });
}

namespace {

// Strongly connected components of i -> j whenever D(i, j) > 0, in Tarjan order
// (a class is emitted after every class it can reach).
struct Classes {
    std::vector<std::vector<int>> members;
    std::vector<int> class_of;
};

Classes strongly_connected(const VertexMatrix& d) {
    const int n = d.size();
    Classes out;
    out.class_of.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w = 0; w < n; ++w) {
            if (d(v, w) == 0) continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> cls;
            int w = -1;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                out.class_of[w] = static_cast<int>(out.members.size());
                cls.push_back(w);
            } while (w != v);
            std::sort(cls.begin(), cls.end());
            out.members.push_back(std::move(cls));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);
    return out;
}

exact::Matrix to_exact(const VertexMatrix& d, const std::vector<int>& rows, const std::vector<int>& cols) {
    exact::Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = d(rows[i], cols[j]);
    return m;
}

Eigen::MatrixXd to_eigen(const VertexMatrix& d, const std::vector<int>& rows, const std::vector<int>& cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(d(rows[i], cols[j]));
    return m;
}

struct PowerResult {
    double rho = 0;
    Eigen::VectorXd vector;
};

// Power iteration on B + I for an irreducible nonnegative block B; the shift
// makes the block primitive so the iteration converges.
PowerResult power_iteration(const Eigen::MatrixXd& block) {
    const Eigen::Index n = block.rows();
    Eigen::MatrixXd shifted = block + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double estimate = 0;
    for (long it = 0; it < kPowerIterationCap; ++it) {
        Eigen::VectorXd y = shifted * x;
        double next = y.sum();
        y /= next;
        double change = (y - x).lpNorm<Eigen::Infinity>();
        x = y;
        estimate = next;
        if (change <= kSpectralEpsilon) break;
    }
    return {estimate - 1.0, x};
}

SpectralRadius class_radius(const VertexMatrix& d, const std::vector<int>& cls) {
    if (cls.size() == 1) {
        Rational r(d(cls[0], cls[0]));
        return {to_double(r), r, "characteristic_polynomial"};
    }
    if (static_cast<int>(cls.size()) <= kExactSpectralMaxDim) {
        auto root = exact::largest_real_root(exact::characteristic_polynomial(to_exact(d, cls, cls)));
        if (root) return {root->approx(), root->exact, "characteristic_polynomial"};
    }
    PowerResult p = power_iteration(to_eigen(d, cls, cls));
    SpectralRadius out{p.rho, std::nullopt, "power_iteration"};
    // Snap to an integer eigenvalue when the exact singularity check confirms it.
    double nearest = std::round(p.rho);
    if (std::abs(p.rho - nearest) < 1e-6) {
        exact::Matrix m = to_exact(d, cls, cls);
        for (int i = 0; i < m.rows(); ++i) m(i, i) -= Rational(static_cast<long long>(nearest));
        if (exact::rank(m) < m.rows()) {
            out.value = nearest;
            out.exact = Rational(static_cast<long long>(nearest));
        }
    }
    return out;
}

bool same_radius(const SpectralRadius& a, const SpectralRadius& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    return std::abs(a.value - b.value) <= 1e-9 * std::max(1.0, std::abs(a.value));
}

struct Analysis {
    Classes classes;
    std::vector<SpectralRadius> radii;
    SpectralRadius rho;
};

Analysis analyze(const VertexMatrix& d) {
    Analysis a;
    a.classes = strongly_connected(d);
    a.rho = {0.0, Rational(0), "characteristic_polynomial"};
    for (const auto& cls : a.classes.members) {
        a.radii.push_back(class_radius(d, cls));
        const SpectralRadius& r = a.radii.back();
        bool larger = r.value > a.rho.value && !same_radius(r, a.rho);
        if (larger || (same_radius(r, a.rho) && r.exact && !a.rho.exact)) a.rho = r;
    }
    for (const auto& r : a.radii)
        if (r.method == "power_iteration") a.rho.method = "power_iteration";
    return a;
}

// reach[c][k]: class c has a path into class k (c reaches itself).
std::vector<std::vector<bool>> class_reachability(const VertexMatrix& d, const Classes& classes) {
    const std::size_t k = classes.members.size();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    // Tarjan emits sinks first, so successors of class c have smaller indices.
    for (std::size_t c = 0; c < k; ++c) {
        reach[c][c] = true;
        for (int v : classes.members[c])
            for (int w = 0; w < d.size(); ++w) {
                if (d(v, w) == 0) continue;
                auto target = static_cast<std::size_t>(classes.class_of[static_cast<std::size_t>(w)]);
                if (target == c) continue;
                for (std::size_t j = 0; j < k; ++j)
                    if (reach[target][j]) reach[c][j] = true;
            }
    }
    return reach;
}

std::vector<int> distinguished_classes(const Analysis& a, const std::vector<std::vector<bool>>& reach) {
    std::vector<int> out;
    const std::size_t k = a.classes.members.size();
    auto basic = [&](std::size_t c) { return same_radius(a.radii[c], a.rho); };
    for (std::size_t c = 0; c < k; ++c) {
        if (!basic(c)) continue;
        bool upstream_basic = false;
        for (std::size_t b = 0; b < k; ++b)
            if (b != c && reach[b][c] && basic(b)) upstream_basic = true;
        if (!upstream_basic) out.push_back(static_cast<int>(c));
    }
    return out;
}

// Generator of the nonnegative eigencone attached to a distinguished class,
// exact arithmetic (rho an integer).
std::vector<Rational> exact_generator(const VertexMatrix& d, const Analysis& a,
                                      const std::vector<std::vector<bool>>& reach, int cls) {
    const Rational& rho = *a.rho.exact;
    const auto& members = a.classes.members[static_cast<std::size_t>(cls)];
    exact::Matrix block = to_exact(d, members, members);
    for (int i = 0; i < block.rows(); ++i) block(i, i) -= rho;
    auto kernel = exact::nullspace(block);
    if (kernel.size() != 1) throw Error("internal: irreducible class without a simple Perron root");
    std::vector<Rational> core = kernel.front();
    Rational sum = std::accumulate(core.begin(), core.end(), Rational(0));
    for (auto& v : core) v /= sum;

    std::vector<Rational> x(static_cast<std::size_t>(d.size()), Rational(0));
    for (std::size_t i = 0; i < members.size(); ++i) x[static_cast<std::size_t>(members[i])] = core[i];

    std::vector<int> upstream;
    for (std::size_t b = 0; b < a.classes.members.size(); ++b)
        if (static_cast<int>(b) != cls && reach[b][static_cast<std::size_t>(cls)])
            for (int v : a.classes.members[b]) upstream.push_back(v);
    if (!upstream.empty()) {
        std::sort(upstream.begin(), upstream.end());
        exact::Matrix lhs = to_exact(d, upstream, upstream);
        for (int i = 0; i < lhs.rows(); ++i)
            for (int j = 0; j < lhs.cols(); ++j) lhs(i, j) = (i == j ? rho : Rational(0)) - lhs(i, j);
        std::vector<Rational> rhs(upstream.size(), Rational(0));
        for (std::size_t i = 0; i < upstream.size(); ++i)
            for (std::size_t j = 0; j < members.size(); ++j) rhs[i] += d(upstream[i], members[j]) * core[j];
        auto sol = exact::solve(std::move(lhs), std::move(rhs));
        if (!sol) throw Error("internal: singular upstream system");
        for (std::size_t i = 0; i < upstream.size(); ++i) x[static_cast<std::size_t>(upstream[i])] = (*sol)[i];
    }
    Rational total = std::accumulate(x.begin(), x.end(), Rational(0));
    for (auto& v : x) v /= total;
    return x;
}

std::vector<double> float_generator(const VertexMatrix& d, const Analysis& a,
                                    const std::vector<std::vector<bool>>& reach, int cls) {
    const double rho = a.rho.value;
    const auto& members = a.classes.members[static_cast<std::size_t>(cls)];
    PowerResult core = power_iteration(to_eigen(d, members, members));
    std::vector<double> x(static_cast<std::size_t>(d.size()), 0.0);
    for (std::size_t i = 0; i < members.size(); ++i)
        x[static_cast<std::size_t>(members[i])] = core.vector(static_cast<Eigen::Index>(i));

    std::vector<int> upstream;
    for (std::size_t b = 0; b < a.classes.members.size(); ++b)
        if (static_cast<int>(b) != cls && reach[b][static_cast<std::size_t>(cls)])
            for (int v : a.classes.members[b]) upstream.push_back(v);
    if (!upstream.empty()) {
        std::sort(upstream.begin(), upstream.end());
        Eigen::MatrixXd lhs = rho * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(upstream.size()),
                                                              static_cast<Eigen::Index>(upstream.size())) -
                              to_eigen(d, upstream, upstream);
        Eigen::VectorXd rhs = to_eigen(d, upstream, members) * core.vector;
        Eigen::VectorXd sol = lhs.partialPivLu().solve(rhs);
        for (std::size_t i = 0; i < upstream.size(); ++i)
            x[static_cast<std::size_t>(upstream[i])] = std::max(0.0, sol(static_cast<Eigen::Index>(i)));
    }
    double total = std::accumulate(x.begin(), x.end(), 0.0);
    for (auto& v : x) v /= total;
    return x;
}

}  // namespace

SpectralRadius spectral_radius(const VertexMatrix& d) { return analyze(d).rho; }

InverseTemperature critical_beta(const VertexMatrix& d) {
    SpectralRadius r = spectral_radius(d);
    if (r.value <= 0) throw NoCriticalTemperature();
    if (r.exact) return InverseTemperature::log_of(*r.exact);
    return InverseTemperature::from_value(std::log(r.value));
}

std::optional<PerronVector> perron_vector(const VertexMatrix& d) {
    Analysis a = analyze(d);
    if (a.rho.value <= 0) return std::nullopt;
    auto reach = class_reachability(d, a.classes);
    auto distinguished = distinguished_classes(a, reach);
    if (distinguished.empty()) return std::nullopt;

    PerronVector out;
    if (a.rho.exact) {
        std::vector<Rational> acc(static_cast<std::size_t>(d.size()), Rational(0));
        for (int c : distinguished) {
            auto g = exact_generator(d, a, reach, c);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
        }
        for (auto& v : acc) v /= static_cast<long long>(distinguished.size());
        for (const auto& v : acc) out.values.push_back(to_double(v));
        out.exact = std::move(acc);
    } else {
        out.values.assign(static_cast<std::size_t>(d.size()), 0.0);
        for (int c : distinguished) {
            auto g = float_generator(d, a, reach, c);
            for (std::size_t i = 0; i < g.size(); ++i) out.values[i] += g[i] / static_cast<double>(distinguished.size());
        }
    }
    return out;
}

int eigenspace_dimension(const VertexMatrix& d) {
    SpectralRadius r = spectral_radius(d);
    const int n = d.size();
    if (r.exact) {
        exact::Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Rational(d(i, j)) - (i == j ? *r.exact : Rational(0));
        return n - exact::rank(std::move(m));
    }
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    Eigen::MatrixXd m = to_eigen(d, all, all) - r.value * Eigen::MatrixXd::Identity(n, n);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.dimensionOfKernel());
}

bool kms_exists_at_critical(const VertexMatrix& d) { return perron_vector(d).has_value(); }

namespace {

enum class Relation { at_most, equal };

bool check_weights(const VertexMatrix& d, const KmsWeightVector& w, Relation rel) {
    const int n = d.size();
    if (w.size() != n)
        throw DimensionMismatch("weight vector has " + std::to_string(w.size()) + " entries, matrix is " +
                                std::to_string(n) + "x" + std::to_string(n));
    if (w.mode() == NumericMode::exact && w.beta().exp_value) {
        const Rational& scale = *w.beta().exp_value;
        for (int i = 0; i < n; ++i) {
            Rational lhs = 0;
            for (int j = 0; j < n; ++j) lhs += d(i, j) * w[j];
            Rational rhs = scale * w[i];
            if (rel == Relation::at_most ? lhs > rhs : lhs != rhs) return false;
        }
        return true;
    }
    const double scale = w.beta().exp_value ? to_double(*w.beta().exp_value) : std::exp(w.beta().value);
    auto x = w.as_doubles();
    for (int i = 0; i < n; ++i) {
        double lhs = 0;
        for (int j = 0; j < n; ++j) lhs += static_cast<double>(d(i, j)) * x[static_cast<std::size_t>(j)];
        double rhs = scale * x[static_cast<std::size_t>(i)];
        if (rel == Relation::at_most ? lhs > rhs + kCompareEpsilon : std::abs(lhs - rhs) > kCompareEpsilon)
            return false;
    }
    return true;
}

}  // namespace

bool check_subinvariance(const VertexMatrix& d, const KmsWeightVector& w) {
    return check_weights(d, w, Relation::at_most);
}

bool check_invariance(const VertexMatrix& d, const KmsWeightVector& w) {
    return check_weights(d, w, Relation::equal);
}

SpectralReport spectral_report(const VertexMatrix& d) {
    SpectralReport r;
    r.rho = spectral_radius(d);
    if (r.rho.value > 0) {
        r.critical_beta = critical_beta(d);
    } else {
        r.warnings.emplace_back("no critical temperature");
    }
    r.perron = perron_vector(d);
    r.kms_exists_at_critical = r.perron.has_value();
    r.eigenspace_dimension = eigenspace_dimension(d);
    if (r.perron) {
        bool positive = r.perron->exact
                            ? std::all_of(r.perron->exact->begin(), r.perron->exact->end(),
                                          [](const Rational& v) { return v > 0; })
                            : std::all_of(r.perron->values.begin(), r.perron->values.end(),
                                          [](double v) { return v > kCompareEpsilon; });
        if (!positive) r.warnings.emplace_back("weight not strictly positive");
    }
    return r;
}

int validate_word(const DirectedMultigraph& g, const GeneralWord& word) {
    auto check_path = [&](const std::vector<int>& path, const char* name) {
        for (std::size_t k = 0; k < path.size(); ++k) {
            g.edge(path[k]);
            if (k + 1 < path.size() && g.edge(path[k]).target != g.edge(path[k + 1]).source)
                throw InvalidArgument(std::string(name) + " is not a path: edge " + std::to_string(path[k]) +
                                      " does not end where edge " + std::to_string(path[k + 1]) + " starts");
        }
    };
    check_path(word.mu, "mu");
    check_path(word.nu, "nu");
    if (word.anchor != 0 && (word.anchor < 1 || word.anchor > g.num_vertices()))
        throw InvalidArgument("anchor vertex out of range");
    if ((word.mu.empty() || word.nu.empty()) && word.anchor == 0)
        throw InvalidArgument("an empty path needs an anchor vertex");
    auto target = [&](const std::vector<int>& path) {
        return path.empty() ? word.anchor : g.edge(path.back()).target;
    };
    int t_mu = target(word.mu);
    int t_nu = target(word.nu);
    if (t_mu != t_nu) throw InvalidArgument("t(mu) != t(nu)");
    if (word.anchor != 0 && word.anchor != t_mu) throw InvalidArgument("anchor does not match t(mu)");
    return t_mu;
}

Scalar tau_eval_word(const DirectedMultigraph& g, const KmsWeightVector& w, const GeneralWord& word) {
    if (w.size() != g.num_vertices()) throw DimensionMismatch("weights do not match the graph");
    int v = validate_word(g, word);
    bool exact = w.mode() == NumericMode::exact && w.beta().exp_value.has_value();
    if (word.mu != word.nu) return {0.0, exact ? std::optional<Rational>(0) : std::nullopt};
    const auto length = static_cast<long long>(word.mu.size());
    const Rational& weight = w[v - 1];
    if (exact) {
        Rational factor = 1;
        for (long long k = 0; k < length; ++k) factor /= *w.beta().exp_value;
        Rational value = factor * weight;
        return {to_double(value), value};
    }
    return {std::exp(-w.beta().value * static_cast<double>(length)) * to_double(weight), std::nullopt};
}

}  // namespace qsym
