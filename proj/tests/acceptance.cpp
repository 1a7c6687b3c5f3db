// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qsym/cqg_verify.hpp"
#include "qsym/error.hpp"
#include "qsym/graph.hpp"
#include "qsym/kms.hpp"
#include "qsym/loop_algebra.hpp"
#include "qsym/partitions.hpp"

using namespace qsym;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = "failed: " + what;
        pass = pass && ok;
    }
};

KmsWeightVector weights(std::vector<Rational> w) {
    return KmsWeightVector::exact(InverseTemperature::zero(), std::move(w));
}

std::vector<Rational> fractions(std::initializer_list<std::pair<int, int>> parts) {
    std::vector<Rational> out;
    for (auto [p, q] : parts) out.emplace_back(p, q);
    return out;
}

std::string subscript(int m) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string out;
    for (char ch : std::to_string(m)) out += digits[ch - '0'];
    return out;
}

// Shared corpus for the trace and gauge criteria.
std::vector<std::pair<LoopElement, LoopElement>> random_pairs() {
    std::mt19937_64 rng(20240611);
    std::vector<std::pair<LoopElement, LoopElement>> out;
    for (int t = 0; t < 500; ++t) {
        auto x = random_element(3, 6, 5, rng);
        auto y = random_element(3, 6, 5, rng);
        out.emplace_back(std::move(x), std::move(y));
    }
    return out;
}

const KmsWeightVector& corpus_weights() {
    static const KmsWeightVector w = weights(fractions({{1, 6}, {1, 3}, {1, 2}}));
    return w;
}

Outcome loops_spectral() {
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        auto d = vertex_matrix(loops_graph(n));
        auto r = spectral_report(d);
        std::string at = " at n=" + std::to_string(n);
        o.require(d == VertexMatrix::identity(n), "vertex matrix is not Id" + at);
        o.require(r.rho.exact == Rational(1), "rho != 1" + at);
        o.require(r.critical_beta && r.critical_beta->value == 0.0 && r.critical_beta->exp_value == Rational(1),
                  "critical beta != 0" + at);
        o.require(r.eigenspace_dimension == n, "eigenspace dimension != n" + at);
        o.require(r.kms_exists_at_critical, "no KMS state" + at);
    }
    o.detail = o.pass ? "n = 1..8, exact" : o.detail;
    return o;
}

Outcome word_oracle() {
    Outcome o;
    long long compared = 0;
    for (int n = 1; n <= 3; ++n) {
        std::vector<oracle::Letter> letters;
        for (int i = 1; i <= n; ++i)
            for (auto k : {oracle::Kind::s, oracle::Kind::s_star, oracle::Kind::p}) letters.push_back({k, i});
        std::vector<std::vector<oracle::Letter>> words{{}};
        for (int len = 1; len <= 4; ++len) {
            std::vector<std::vector<oracle::Letter>> next;
            for (const auto& w : words)
                for (const auto& l : letters) {
                    auto v = w;
                    v.push_back(l);
                    next.push_back(std::move(v));
                }
            words = std::move(next);
            for (const auto& w : words) {
                LoopElement product = oracle::letter_element(n, w.front());
                for (std::size_t k = 1; k < w.size(); ++k) product = product * oracle::letter_element(n, w[k]);
                o.require(product == oracle::word_value(n, w), "word of length " + std::to_string(len));
                ++compared;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(compared) + " words, exact";
    return o;
}

Outcome trace_property(const std::vector<std::pair<LoopElement, LoopElement>>& corpus) {
    Outcome o;
    for (const auto& [x, y] : corpus) o.require(tau(x * y, corpus_weights()) == tau(y * x, corpus_weights()), "tau(xy) != tau(yx)");
    if (o.pass) o.detail = std::to_string(corpus.size()) + " pairs, degree <= 6, n = 3";
    return o;
}

Outcome gauge_invariance(const std::vector<std::pair<LoopElement, LoopElement>>& corpus) {
    Outcome o;
    const auto& c = corpus_weights();
    int evaluated = 0;
    for (const auto& [x, y] : corpus)
        for (const auto* e : {&x, &y}) {
            auto base = tau(*e, c);
            for (int order : {4, 6})
                for (int power = 0; power < order; ++power) {
                    o.require(tau(gauge_action(RootOfUnity{order, power}, *e), c) == CyclotomicNumber(order, base),
                              "gauge invariance at a root of order " + std::to_string(order));
                    ++evaluated;
                }
            // the 4th roots also lie in Q(i)
            o.require(tau(gauge_action(ComplexRational::i(), *e), c) == base, "gauge invariance at z = i");
        }
    if (o.pass) o.detail = std::to_string(evaluated) + " evaluations over 4th and 6th roots, exact";
    return o;
}

Outcome partition_correspondence() {
    Outcome o;
    const std::vector<std::size_t> known{1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int n = 1; n <= 30; ++n)
        o.require(descriptors_for_n(n).size() == partition_count(n), "|descriptors| != p(n) at n=" + std::to_string(n));
    for (int n = 1; n <= 12; ++n) {
        auto brute = oracle::partitions_by_compositions(n).size();
        o.require(brute == known[static_cast<std::size_t>(n - 1)], "brute force disagrees with the table");
        o.require(partition_count(n) == brute, "p(n) != brute force at n=" + std::to_string(n));
    }
    if (o.pass) o.detail = "n <= 30; p(n) = brute force for n <= 12";
    return o;
}

Outcome descriptor_spot_checks() {
    Outcome o;
    for (int n = 2; n <= 8; ++n) {
        auto s = classify_weights(weights(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n))));
        o.require(symmetry_descriptor(s.partition).canonical_name == "C(S¹) ≀ S" + subscript(n) + "⁺",
                  "uniform weights at n=" + std::to_string(n));
    }
    for (int n = 1; n <= 8; ++n) {
        std::vector<Rational> w;
        for (int i = 1; i <= n; ++i) w.emplace_back(2 * i, n * (n + 1));
        std::string expected = "C(S¹)";
        for (int i = 1; i < n; ++i) expected += " ⋆ C(S¹)";
        o.require(symmetry_descriptor(classify_weights(weights(w)).partition).canonical_name == expected,
                  "distinct weights at n=" + std::to_string(n));
    }
    auto s = classify_weights(weights(fractions({{1, 2}, {1, 4}, {1, 4}})));
    o.require(symmetry_descriptor(s.partition).canonical_name == "(C(S¹) ≀ S₂⁺) ⋆ C(S¹)", "(1/2, 1/4, 1/4)");
    if (o.pass) o.detail = "uniform, distinct and (1/2, 1/4, 1/4) weights";
    return o;
}

Outcome model_soundness() {
    Outcome o;
    std::mt19937_64 rng(7);
    double worst = 0;
    int built = 0;
    const int dims[] = {1, 2, 4};
    for (int t = 0; built < 100; ++t) {
        int m = 1 + t % 7;
        int d = dims[(t / 7) % 3];
        if (m >= 4 && d == 1) continue;
        auto u = model_magic_unitary(m, d, rng);
        auto q = build_qblock(u, random_phases(m, rng));
        auto magic = check_magic_relations(u, kVerificationTolerance);
        auto hinf = check_hinf_relations(q, kVerificationTolerance);
        worst = std::max({worst, magic.max_deviation(), hinf.max_deviation()});
        o.require(magic.pass() && hinf.pass(), "QBlock with m=" + std::to_string(m) + ", d=" + std::to_string(d));
        ++built;
    }
    if (o.pass) {
        std::ostringstream s;
        s << built << " QBlocks, m = 1..7, d in {1, 2, 4}, max deviation " << worst;
        o.detail = s.str();
    }
    return o;
}

Outcome coaction_verification() {
    Outcome o;
    struct Case {
        const char* name;
        std::vector<Rational> w;
    };
    std::vector<Case> cases{{"(4)", fractions({{1, 4}, {1, 4}, {1, 4}, {1, 4}})},
                            {"(2,2)", fractions({{1, 8}, {3, 8}, {1, 8}, {3, 8}})},
                            {"(2,1,1)", fractions({{1, 8}, {1, 2}, {1, 8}, {1, 4}})},
                            {"(1,1,1,1)", fractions({{1, 10}, {2, 10}, {3, 10}, {4, 10}})}};
    VerifyOptions opts{100, 6, 1e-10, 11};
    double worst = 0;
    std::mt19937_64 rng(13);
    for (const auto& c : cases) {
        auto w = weights(c.w);
        auto s = classify_weights(w);
        o.require(to_string(s.partition) == c.name, std::string("weights do not realize ") + c.name);
        QRep rep = model_qrep(layout_from_class(s), rng, 2);
        auto hom = verify_homomorphism(rep, opts);
        auto tau = verify_tau_preservation(rep, w, opts);
        const auto* degree_zero = tau.find("tau_degree_zero");
        o.require(degree_zero && degree_zero->pass, std::string("degree-zero identity for ") + c.name);
        o.require(hom.pass(), std::string("homomorphism for ") + c.name);
        o.require(tau.pass(), std::string("tau preservation for ") + c.name);
        worst = std::max({worst, hom.max_deviation(), tau.max_deviation()});
    }
    if (o.pass) {
        std::ostringstream s;
        s << "4 partitions, d = 2, L = 6, 100 trials, max deviation " << worst;
        o.detail = s.str();
    }
    return o;
}

Outcome negative_control() {
    Outcome o;
    auto w = weights(fractions({{1, 3}, {2, 3}}));
    BlockLayout single = consecutive_layout(Partition({2}));
    auto witness = find_tau_witness(single, w);
    o.require(witness.deviation >= kFailureThreshold, "no classical witness with deviation >= 1e-3");
    QRep at_witness = make_qrep(single, {build_qblock(magic_unitary_classical(witness.sigma),
                                                      std::vector<std::complex<double>>(4, 1.0))});
    auto forced = verify_tau_preservation(at_witness, w, {10, 6, kVerificationTolerance, 1}, true);
    o.require(!forced.pass() && forced.max_deviation() >= kFailureThreshold, "forced check did not fail");
    bool refused = false;
    try {
        verify_tau_preservation(at_witness, w, {10, 6, kVerificationTolerance, 1});
    } catch (const PartitionMismatch&) {
        refused = true;
    }
    o.require(refused, "unforced check accepted mismatched weights");

    std::mt19937_64 rng(17);
    auto q = build_qblock(model_magic_unitary(4, 2, rng), random_phases(4, rng));
    // corrupt a nonzero entry; scaling a zero operator changes nothing
    int target = 0;
    for (int k = 1; k < 16; ++k)
        if (operator_norm(q.entries[static_cast<std::size_t>(k)]) > operator_norm(q.entries[static_cast<std::size_t>(target)]))
            target = k;
    q.entries[static_cast<std::size_t>(target)] *= 1.5;
    auto corrupted = check_hinf_relations(q, kVerificationTolerance);
    o.require(!corrupted.pass() && corrupted.max_deviation() >= kFailureThreshold, "corrupted phase not detected");
    if (o.pass) {
        std::ostringstream s;
        s << "witness deviation " << witness.deviation << ", corrupted-phase deviation " << corrupted.max_deviation();
        o.detail = s.str();
    }
    return o;
}

Outcome classical_group_law() {
    Outcome o;
    std::mt19937_64 rng(19);
    int pairs = 0;
    for (const auto& p : enumerate_partitions(4)) {
        BlockLayout layout = consecutive_layout(p);
        for (int t = 0; t < 50; ++t) {
            auto g = random_classical_point(layout, rng);
            auto h = random_classical_point(layout, rng);
            auto r = verify_classical_group_law(layout, g, h, 4);
            o.require(r.pass() && r.max_deviation() == 0.0, "group law at partition " + to_string(p));
            ++pairs;
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs over the 5 partitions of 4, L = 4, exact";
    return o;
}

Outcome subinvariance() {
    Outcome o;
    VertexMatrix d{{1, 1}, {0, 1}};
    auto perron = perron_vector(d);
    o.require(perron && perron->exact == std::vector<Rational>{1, 0}, "Perron vector is not (1, 0)");
    // invariant probability vectors are the normalized rho-eigenvectors; a
    // one-dimensional eigenspace leaves exactly one
    o.require(eigenspace_dimension(d) == 1, "invariant vector is not unique");
    o.require(check_invariance(d, weights({1, 0})), "(1, 0) is not invariant");
    o.require(check_subinvariance(d, weights({1, 0})), "(1, 0) is not subinvariant");
    auto half = weights(fractions({{1, 2}, {1, 2}}));
    o.require(!check_subinvariance(d, half) && !check_invariance(d, half), "(1/2, 1/2) accepted");
    if (o.pass) o.detail = "(1, 0) unique and invariant, (1/2, 1/2) rejected, exact";
    return o;
}

}  // namespace

int main() {
    auto corpus = random_pairs();
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"loops-graph spectral pipeline", 1, loops_spectral},
        {"word calculus vs free-rewriting oracle", 5, word_oracle},
        {"trace property", 5, [&] { return trace_property(corpus); }},
        {"gauge invariance", 2, [&] { return gauge_invariance(corpus); }},
        {"partition correspondence", 2, partition_correspondence},
        {"descriptor spot checks", 1, descriptor_spot_checks},
        {"model representation soundness", 30, model_soundness},
        {"coaction verification", 60, coaction_verification},
        {"negative control", 10, negative_control},
        {"classical group law", 10, classical_group_law},
        {"subinvariance and invariance", 1, subinvariance},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && seconds > criteria[k].budget_seconds) {
            o.pass = false;
            o.detail += " (over the time budget)";
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %2zu %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, o.detail.c_str(),
                    seconds);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
