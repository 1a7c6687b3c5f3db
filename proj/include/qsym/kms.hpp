#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsym/graph.hpp"
#include "qsym/rational.hpp"

namespace qsym {

// Comparison tolerance for float-mode weight checks.
inline constexpr double kCompareEpsilon = 1e-10;
// Residual tolerance for numerically computed spectral data.
inline constexpr double kSpectralEpsilon = 1e-12;
inline constexpr long kPowerIterationCap = 1'000'000;
// Largest dimension handled by exact characteristic-polynomial root isolation.
inline constexpr int kExactSpectralMaxDim = 12;

// Inverse temperature beta. When e^beta is a known rational (beta = 0, or
// beta = ln r) it is carried exactly so that weight checks stay exact.
struct InverseTemperature {
    double value = 0.0;
    std::optional<Rational> exp_value;

    static InverseTemperature zero() { return {0.0, Rational(1)}; }
    static InverseTemperature log_of(const Rational& r);  // r > 0
    static InverseTemperature from_value(double beta);
};

enum class NumericMode { exact, floating };

// Vertex weights of a KMS state: a probability vector on V plus beta.
// Float-mode weights are stored as the exact rational image of the doubles
// and compared with kCompareEpsilon.
class KmsWeightVector {
public:
    // Throws InvalidArgument unless entries are >= 0 and sum to exactly 1.
    static KmsWeightVector exact(InverseTemperature beta, std::vector<Rational> weights);
    // Throws InvalidArgument unless entries are >= 0 and sum to 1 within kCompareEpsilon.
    static KmsWeightVector floating(InverseTemperature beta, const std::vector<double>& weights);

    const InverseTemperature& beta() const { return beta_; }
    NumericMode mode() const { return mode_; }
    int size() const { return static_cast<int>(weights_.size()); }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& operator[](int vertex_index) const { return weights_[static_cast<std::size_t>(vertex_index)]; }
    std::vector<double> as_doubles() const;
    bool strictly_positive() const;

private:
    InverseTemperature beta_;
    NumericMode mode_ = NumericMode::exact;
    std::vector<Rational> weights_;
};

// Spectral radius of a nonnegative integer matrix. `exact` is set when rho is
// rational (then an integer).
struct SpectralRadius {
    double value = 0.0;
    std::optional<Rational> exact;
    std::string method;  // "characteristic_polynomial" or "power_iteration"
};

struct PerronVector {
    std::vector<double> values;
    std::optional<std::vector<Rational>> exact;
};

struct SpectralReport {
    SpectralRadius rho;
    std::optional<InverseTemperature> critical_beta;
    std::optional<PerronVector> perron;
    int eigenspace_dimension = 0;
    bool kms_exists_at_critical = false;
    std::vector<std::string> warnings;
};

SpectralRadius spectral_radius(const VertexMatrix& d);

// ln rho(D); throws NoCriticalTemperature when rho = 0.
InverseTemperature critical_beta(const VertexMatrix& d);

// Nonnegative eigenvector for rho(D), normalized to sum 1. For reducible D the
// nonnegative eigenvectors form a cone spanned by one generator per
// distinguished class; the result is the normalized uniform combination of
// those generators. std::nullopt when rho(D) = 0 (no critical temperature).
std::optional<PerronVector> perron_vector(const VertexMatrix& d);

// dim ker(D - rho I).
int eigenspace_dimension(const VertexMatrix& d);

bool kms_exists_at_critical(const VertexMatrix& d);

// (D w)_i <= e^beta w_i for all i. Exact when w is exact and e^beta is rational.
bool check_subinvariance(const VertexMatrix& d, const KmsWeightVector& w);
// (D w)_i == e^beta w_i for all i.
bool check_invariance(const VertexMatrix& d, const KmsWeightVector& w);

SpectralReport spectral_report(const VertexMatrix& d);

// S_mu S_nu^* with t(mu) = t(nu). An empty path sits at `anchor`, which is
// required (and must match) whenever either path is empty.
struct GeneralWord {
    std::vector<int> mu;
    std::vector<int> nu;
    int anchor = 0;
};

// Target vertex of the word; throws InvalidArgument for an invalid path pair.
int validate_word(const DirectedMultigraph& g, const GeneralWord& word);

struct Scalar {
    double value = 0.0;
    std::optional<Rational> exact;
};

// tau(S_mu S_nu^*) = delta_{mu,nu} e^{-beta |mu|} N_{t(mu)}.
Scalar tau_eval_word(const DirectedMultigraph& g, const KmsWeightVector& w, const GeneralWord& word);

}  // namespace qsym
