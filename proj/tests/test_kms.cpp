#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "qsym/error.hpp"
#include "qsym/exact_linalg.hpp"
#include "qsym/kms.hpp"

using namespace qsym;

namespace {

KmsWeightVector exact_weights(std::vector<Rational> w, InverseTemperature beta = InverseTemperature::zero()) {
    return KmsWeightVector::exact(std::move(beta), std::move(w));
}

VertexMatrix random_matrix(std::mt19937_64& rng, int n, int max_entry) {
    VertexMatrix d(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = static_cast<long long>(rng() % (max_entry + 1));
    return d;
}

}  // namespace

TEST_CASE("characteristic polynomial and root isolation") {
    exact::Matrix a(2, 2);
    a(0, 0) = 1; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 1;
    // x^2 - 2x
    CHECK(exact::characteristic_polynomial(a) == exact::Polynomial({0, -2, 1}));
    auto root = exact::largest_real_root(exact::Polynomial({-2, 0, 1}));
    REQUIRE(root);
    CHECK_FALSE(root->exact);
    CHECK(root->approx() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    auto triple = exact::largest_real_root(exact::Polynomial({-27, 27, -9, 1}));  // (x-3)^3
    REQUIRE(triple);
    CHECK(triple->exact == Rational(3));
    CHECK_FALSE(exact::largest_real_root(exact::Polynomial({1, 0, 1})));
}

TEST_CASE("spectral radius examples") {
    CHECK(spectral_radius(VertexMatrix::identity(3)).exact == Rational(1));
    CHECK(spectral_radius(VertexMatrix{{2}}).value == 2.0);
    auto r = spectral_radius(VertexMatrix{{1, 1}, {1, 1}});
    CHECK(r.exact == Rational(2));
    CHECK(r.value == doctest::Approx(oracle::rho_2x2(1, 1, 1, 1)));
    CHECK(spectral_radius(VertexMatrix(3)).value == 0.0);
    // golden ratio: irrational radius
    auto g = spectral_radius(VertexMatrix{{1, 1}, {1, 0}});
    CHECK_FALSE(g.exact);
    CHECK(g.value == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));
}

TEST_CASE("spectral radius of 2x2 matrices against the closed form") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        auto d = random_matrix(rng, 2, 5);
        CHECK(spectral_radius(d).value ==
              doctest::Approx(oracle::rho_2x2(d(0, 0), d(0, 1), d(1, 0), d(1, 1))).epsilon(1e-12));
    }
}

TEST_CASE("spectral radius on large matrices uses power iteration and matches Eigen") {
    std::mt19937_64 rng(17);
    VertexMatrix d(14);
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j) d(i, j) = static_cast<long long>(rng() % 3);
    auto r = spectral_radius(d);
    Eigen::MatrixXd m(14, 14);
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j) m(i, j) = static_cast<double>(d(i, j));
    double expected = m.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-9));
    // the loops graph stays exact at any size because each class is a single vertex
    CHECK(spectral_radius(VertexMatrix::identity(40)).exact == Rational(1));
}

TEST_CASE("critical beta") {
    CHECK(critical_beta(VertexMatrix::identity(5)).value == 0.0);
    auto b = critical_beta(VertexMatrix{{2}});
    CHECK(b.value == doctest::Approx(std::log(2.0)));
    CHECK(b.exp_value == Rational(2));
    CHECK(critical_beta(VertexMatrix{{1, 1}, {1, 1}}).value == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(critical_beta(VertexMatrix{{0, 1}, {0, 0}}), NoCriticalTemperature);
}

TEST_CASE("perron vector examples") {
    auto id = perron_vector(VertexMatrix::identity(2));
    REQUIRE(id);
    CHECK(id->exact == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    auto upper = perron_vector(VertexMatrix{{1, 1}, {0, 1}});
    REQUIRE(upper);
    CHECK(upper->exact == std::vector<Rational>{1, 0});
    auto swap = perron_vector(VertexMatrix{{0, 1}, {1, 0}});
    REQUIRE(swap);
    CHECK(swap->exact == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK_FALSE(perron_vector(VertexMatrix{{0, 1}, {0, 0}}));
    CHECK(eigenspace_dimension(VertexMatrix::identity(6)) == 6);
    CHECK(eigenspace_dimension(VertexMatrix{{1, 1}, {0, 1}}) == 1);
    CHECK(kms_exists_at_critical(VertexMatrix::identity(3)));
    CHECK(kms_exists_at_critical(VertexMatrix{{1, 1}, {0, 1}}));
    CHECK(kms_exists_at_critical(VertexMatrix{{0, 1}, {1, 0}}));
}

TEST_CASE("property: perron vectors are nonnegative eigenvectors summing to 1") {
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        int n = 1 + static_cast<int>(rng() % 5);
        auto d = random_matrix(rng, n, 2);
        auto rho = spectral_radius(d);
        auto v = perron_vector(d);
        if (rho.value == 0) {
            CHECK_FALSE(v);
            continue;
        }
        REQUIRE(v);
        ++checked;
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            CHECK(v->values[static_cast<std::size_t>(i)] >= 0);
            sum += v->values[static_cast<std::size_t>(i)];
            double dv = 0;
            for (int j = 0; j < n; ++j) dv += static_cast<double>(d(i, j)) * v->values[static_cast<std::size_t>(j)];
            CHECK(std::abs(dv - rho.value * v->values[static_cast<std::size_t>(i)]) <= 1e-9);
        }
        CHECK(sum == doctest::Approx(1.0));
        if (v->exact) {
            // exact mode: D v = rho v with no rounding at all
            for (int i = 0; i < n; ++i) {
                Rational dv = 0;
                for (int j = 0; j < n; ++j) dv += Rational(d(i, j)) * (*v->exact)[static_cast<std::size_t>(j)];
                CHECK(dv == *rho.exact * (*v->exact)[static_cast<std::size_t>(i)]);
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("property: spectral radius is invariant under relabeling") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto d = random_matrix(rng, n, 3);
        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        VertexMatrix e(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e(sigma[i], sigma[j]) = d(i, j);
        CHECK(spectral_radius(e).value == doctest::Approx(spectral_radius(d).value).epsilon(1e-12));
    }
}

TEST_CASE("subinvariance and invariance") {
    VertexMatrix upper{{1, 1}, {0, 1}};
    CHECK(check_subinvariance(VertexMatrix::identity(2), exact_weights({Rational(1, 3), Rational(2, 3)})));
    CHECK_FALSE(check_subinvariance(upper, exact_weights({Rational(1, 2), Rational(1, 2)})));
    CHECK(check_subinvariance(upper, exact_weights({1, 0})));
    CHECK(check_invariance(upper, exact_weights({1, 0})));
    CHECK_FALSE(check_invariance(upper, exact_weights({Rational(2, 3), Rational(1, 3)})));
    CHECK(check_invariance(VertexMatrix::identity(3), exact_weights({Rational(1, 6), Rational(1, 3), Rational(1, 2)})));
    CHECK_THROWS_AS(check_invariance(upper, exact_weights({1})), DimensionMismatch);
    // float mode with an irrational e^beta
    VertexMatrix golden{{1, 1}, {1, 0}};
    auto v = perron_vector(golden);
    auto w = KmsWeightVector::floating(critical_beta(golden), v->values);
    CHECK(check_invariance(golden, w));
}

TEST_CASE("property: invariance implies subinvariance") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        int n = 1 + static_cast<int>(rng() % 4);
        auto d = random_matrix(rng, n, 2);
        std::vector<Rational> w;
        Rational total = 0;
        for (int i = 0; i < n; ++i) {
            w.emplace_back(static_cast<long long>(rng() % 4));
            total += w.back();
        }
        if (total == 0) continue;
        for (auto& x : w) x /= total;
        auto weights = exact_weights(w);
        if (check_invariance(d, weights)) CHECK(check_subinvariance(d, weights));
    }
}

TEST_CASE("weight vectors") {
    CHECK_THROWS_AS(exact_weights({Rational(1, 2), Rational(1, 3)}), InvalidArgument);
    CHECK_THROWS_AS(exact_weights({Rational(3, 2), Rational(-1, 2)}), InvalidArgument);
    CHECK_NOTHROW(KmsWeightVector::floating(InverseTemperature::zero(), {0.1, 0.2, 0.7}));
    CHECK_THROWS_AS(KmsWeightVector::floating(InverseTemperature::zero(), {0.1, 0.2}), InvalidArgument);
    CHECK_FALSE(exact_weights({1, 0}).strictly_positive());
}

TEST_CASE("spectral report") {
    auto r = spectral_report(VertexMatrix{{1, 1}, {0, 1}});
    CHECK(r.kms_exists_at_critical);
    CHECK(r.warnings == std::vector<std::string>{"weight not strictly positive"});
    auto loops = spectral_report(VertexMatrix::identity(4));
    CHECK(loops.rho.exact == Rational(1));
    CHECK(loops.critical_beta->value == 0.0);
    CHECK(loops.eigenspace_dimension == 4);
    CHECK(loops.warnings.empty());
    auto nil = spectral_report(VertexMatrix{{0, 1}, {0, 0}});
    CHECK_FALSE(nil.critical_beta);
    CHECK_FALSE(nil.perron);
    CHECK(nil.warnings == std::vector<std::string>{"no critical temperature"});
}

TEST_CASE("tau on general words") {
    auto loops = loops_graph(2);
    auto c = exact_weights({Rational(1, 3), Rational(2, 3)});
    auto s = tau_eval_word(loops, c, {{1}, {1}, 0});
    CHECK(s.exact == Rational(1, 3));
    auto parallel = build_graph(1, {{1, 1}, {1, 1}});
    auto one = exact_weights({1});
    CHECK(tau_eval_word(parallel, one, {{1}, {2}, 0}).exact == Rational(0));
    auto at_ln2 = KmsWeightVector::exact(critical_beta(VertexMatrix{{2}}), {1});
    CHECK(tau_eval_word(parallel, at_ln2, {{1, 1}, {1, 1}, 0}).exact == Rational(1, 4));
    CHECK(tau_eval_word(parallel, at_ln2, {{1, 1}, {1, 1}, 0}).value == doctest::Approx(0.25));
    // vertex projections recover the weights and sum to 1
    Rational total = 0;
    for (int v = 1; v <= 2; ++v) total += *tau_eval_word(loops, c, {{}, {}, v}).exact;
    CHECK(total == 1);
    CHECK_THROWS_AS(tau_eval_word(loops, c, {{1}, {2}, 0}), InvalidArgument);  // different targets
    CHECK_THROWS_AS(tau_eval_word(build_graph(2, {{1, 2}, {2, 1}}), c, {{1, 1}, {}, 2}), InvalidArgument);
}
