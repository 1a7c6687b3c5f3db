#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsym/cqg_verify.hpp"
#include "qsym/error.hpp"
#include "qsym/graph.hpp"
#include "qsym/kms.hpp"
#include "qsym/partitions.hpp"
#include "qsym/report.hpp"

using namespace qsym;

namespace {

enum ExitCode { kOk = 0, kBadInput = 2, kSink = 3, kNonPositive = 4, kInconsistent = 5, kVerifyFailed = 6 };

class SinkError : public Error {
public:
    SinkError() : Error("graph has a sink; the no-sink hypothesis is violated") {}
};

struct Output {
    bool pretty = false;
    bool ascii = false;
};

int emit(const Json& doc, const Output& out) {
    std::cout << render(doc, out.pretty) << '\n';
    return kOk;
}

int fail(Json doc, int code, const std::string& message, const Output& out) {
    doc["error"] = Json{{"code", code}, {"message", message}};
    std::cerr << "qsym: " << message << '\n';
    emit(doc, out);
    return code;
}

// Runs a subcommand body on a document that already carries the request;
// every failure still produces a report.
int guarded(Json request, const Output& out, const std::function<int(Json&)>& body) {
    Json doc;
    doc["request"] = std::move(request);
    try {
        return body(doc);
    } catch (const SinkError& e) {
        return fail(std::move(doc), kSink, e.what(), out);
    } catch (const NonPositiveWeight& e) {
        return fail(std::move(doc), kNonPositive, e.what(), out);
    } catch (const InconsistentGrouping& e) {
        return fail(std::move(doc), kInconsistent, e.what(), out);
    } catch (const PartitionMismatch& e) {
        return fail(std::move(doc), kVerifyFailed, e.what(), out);
    } catch (const std::exception& e) {
        return fail(std::move(doc), kBadInput, e.what(), out);
    }
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Weight list "1/2,1/4,0.25". Decimals select float mode unless exact_decimal.
struct ParsedWeights {
    std::vector<Rational> values;
    NumericMode mode = NumericMode::exact;
};

ParsedWeights parse_weights(const std::string& text, const std::string& mode, bool exact_decimal) {
    ParsedWeights out;
    bool decimal = false;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        auto first = token.find_first_not_of(" \t");
        auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParseError("empty weight in \"" + text + "\"");
        token = token.substr(first, last - first + 1);
        decimal = decimal || token.find_first_of(".eE") != std::string::npos;
        out.values.push_back(parse_rational(token));
    }
    if (out.values.empty()) throw ParseError("no weights given");
    if (mode == "float") {
        out.mode = NumericMode::floating;
    } else if (mode == "exact") {
        if (decimal && !exact_decimal)
            throw InvalidArgument("decimal weights in exact mode need --exact-decimal");
    } else {
        out.mode = decimal && !exact_decimal ? NumericMode::floating : NumericMode::exact;
    }
    return out;
}

KmsWeightVector make_weights(const ParsedWeights& p, InverseTemperature beta) {
    if (p.mode == NumericMode::exact) return KmsWeightVector::exact(std::move(beta), p.values);
    std::vector<double> x;
    for (const auto& v : p.values) x.push_back(to_double(v));
    return KmsWeightVector::floating(std::move(beta), x);
}

// The symmetry pipeline rejects zero and negative weights before anything else.
void require_positive(const ParsedWeights& p) {
    for (std::size_t v = 0; v < p.values.size(); ++v)
        if (p.values[v] <= 0)
            throw NonPositiveWeight("weight of vertex " + std::to_string(v + 1) + " is " + to_string(p.values[v]));
}

void check_size(int n, const ParsedWeights& p) {
    if (n != 0 && static_cast<std::size_t>(n) != p.values.size())
        throw DimensionMismatch("n = " + std::to_string(n) + " but " + std::to_string(p.values.size()) +
                                " weights were given");
}

std::string mode_name(NumericMode m) { return m == NumericMode::exact ? "exact" : "float"; }

Json weights_json(const KmsWeightVector& w) {
    Json arr = Json::array();
    if (w.mode() == NumericMode::exact) {
        for (const auto& v : w.weights()) arr.push_back(to_string(v));
    } else {
        for (double v : w.as_doubles()) arr.push_back(v);
    }
    return arr;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QSYM_SEED")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        std::cerr << "qsym: ignoring malformed QSYM_SEED=" << env << '\n';
    }
    return 1;
}

Partition parse_partition(const std::string& text) {
    std::vector<int> blocks;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(token, &used);
            if (token.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("");
            blocks.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("malformed partition \"" + text + "\"");
        }
    }
    return Partition(blocks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical KMS states of graph algebras and the quantum symmetries of the n-loops graph"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    app.add_flag("--pretty", out.pretty, "Indented output");
    app.add_flag("--ascii", out.ascii, "ASCII group names");

    std::string graph_path, weights_text, mode = "auto", beta_text = "critical", partition_text;
    int n = 0, trials = 100, d = 0;
    long long max_degree = 6;
    double eps = 1e-9;
    bool exact_decimal = false, force_single_block = false;
    std::uint64_t seed = default_seed();
    int result = kOk;

    auto add_weights = [&](CLI::App* sub) {
        sub->add_option("--weights,-w", weights_text, "Comma-separated weights, e.g. 1/2,1/4,1/4")->required();
        sub->add_option("--mode", mode, "exact, float or auto (decimals select float)")
            ->check(CLI::IsMember({"auto", "exact", "float"}));
        sub->add_flag("--exact-decimal", exact_decimal, "Read decimals as exact rationals");
    };

    auto* analyze = app.add_subcommand("analyze", "Vertex matrix, spectral radius and critical KMS data of a graph");
    analyze->add_option("graph", graph_path, "Edge-list or adjacency file, - for stdin")->required();
    analyze->callback([&] {
        Json request{{"subcommand", "analyze"}, {"graph", graph_path}};
        result = guarded(request, out, [&](Json& doc) {
            DirectedMultigraph g = parse_graph(read_input(graph_path));
            VertexMatrix dm = vertex_matrix(g);
            doc["vertices"] = g.num_vertices();
            doc["edges"] = g.num_edges();
            doc["has_sink"] = has_sink(g);
            doc["is_connected"] = is_connected(g);
            doc["is_disjoint_loops"] = is_disjoint_loops(g);
            doc["vertex_matrix"] = to_json(dm);
            if (has_sink(g)) throw SinkError();
            doc["spectral"] = to_json(spectral_report(dm));
            return emit(doc, out);
        });
    });

    auto* kms = app.add_subcommand("kms-check", "Subinvariance and invariance of a weight vector");
    kms->add_option("graph", graph_path, "Edge-list or adjacency file, - for stdin")->required();
    add_weights(kms);
    kms->add_option("--beta", beta_text, "critical, a number, or ln:r for beta = ln r");
    kms->callback([&] {
        Json request{{"subcommand", "kms-check"}, {"graph", graph_path}, {"weights", weights_text},
                     {"mode", mode},           {"exact_decimal", exact_decimal}, {"beta", beta_text}};
        result = guarded(request, out, [&](Json& doc) {
            DirectedMultigraph g = parse_graph(read_input(graph_path));
            if (has_sink(g)) throw SinkError();
            VertexMatrix dm = vertex_matrix(g);
            InverseTemperature beta;
            if (beta_text == "critical")
                beta = critical_beta(dm);
            else if (beta_text.starts_with("ln:"))
                beta = InverseTemperature::log_of(parse_rational(beta_text.substr(3)));
            else
                beta = InverseTemperature::from_value(to_double(parse_rational(beta_text)));
            ParsedWeights parsed = parse_weights(weights_text, mode, exact_decimal);
            check_size(dm.size(), parsed);
            KmsWeightVector w = make_weights(parsed, beta);
            bool invariant = check_invariance(dm, w);
            doc["mode"] = mode_name(w.mode());
            doc["beta"] = to_json(beta);
            doc["weights"] = weights_json(w);
            doc["subinvariant"] = check_subinvariance(dm, w);
            doc["invariant"] = invariant;
            doc["factors_through_graph_algebra"] = invariant;
            doc["strictly_positive"] = w.strictly_positive();
            doc["warnings"] = w.strictly_positive() ? Json::array() : Json::array({"weight not strictly positive"});
            return emit(doc, out);
        });
    });

    auto* classify = app.add_subcommand("classify", "Partition class and quantum symmetry of a weight vector");
    classify->add_option("-n,--n", n, "Number of loops (defaults to the number of weights)");
    add_weights(classify);
    classify->add_option("--eps", eps, "Float-mode grouping threshold")->check(CLI::PositiveNumber);
    classify->callback([&] {
        Json request{{"subcommand", "classify"}, {"n", n}, {"weights", weights_text}, {"mode", mode},
                     {"exact_decimal", exact_decimal}, {"eps", eps}, {"ascii", out.ascii}};
        result = guarded(request, out, [&](Json& doc) {
            ParsedWeights parsed = parse_weights(weights_text, mode, exact_decimal);
            check_size(n, parsed);
            require_positive(parsed);
            KmsWeightVector w = make_weights(parsed, InverseTemperature::zero());
            StateClass s = classify_weights(w, {w.mode(), eps});
            doc["mode"] = mode_name(w.mode());
            merge(doc, to_json(s, w.mode(), out.ascii));
            return emit(doc, out);
        });
    });

    auto* symmetry = app.add_subcommand("symmetry", "Quantum symmetry descriptor of a partition");
    symmetry->add_option("partition", partition_text, "Block sizes, e.g. 2,1")->required();
    symmetry->callback([&] {
        Json request{{"subcommand", "symmetry"}, {"partition", partition_text}, {"ascii", out.ascii}};
        result = guarded(request, out, [&](Json& doc) {
            Partition p = parse_partition(partition_text);
            doc["n"] = p.total();
            doc["partition"] = to_json(p);
            merge(doc, to_json(symmetry_descriptor(p), out.ascii));
            return emit(doc, out);
        });
    });

    auto* verify = app.add_subcommand("verify-action", "Check the block coaction in seeded model representations");
    verify->add_option("-n,--n", n, "Number of loops (defaults to the number of weights)");
    add_weights(verify);
    verify->add_option("--L", max_degree, "Degree cap")->check(CLI::Range(1, 12));
    verify->add_option("--trials", trials, "Random trials per check")->check(CLI::Range(0, 100000));
    verify->add_option("--seed", seed, "Seed (default from QSYM_SEED, else 1)");
    verify->add_option("--d", d, "Operator dimension (0 picks the smallest that fits)")->check(CLI::Range(0, 8));
    verify->add_flag("--force-single-block", force_single_block,
                     "Use one block for all loops regardless of the weights");
    verify->callback([&] {
        Json request{{"subcommand", "verify-action"},
                     {"n", n},
                     {"weights", weights_text},
                     {"mode", mode},
                     {"exact_decimal", exact_decimal},
                     {"L", max_degree},
                     {"trials", trials},
                     {"seed", seed},
                     {"d", d},
                     {"force_single_block", force_single_block}};
        result = guarded(request, out, [&](Json& doc) {
            ParsedWeights parsed = parse_weights(weights_text, mode, exact_decimal);
            check_size(n, parsed);
            require_positive(parsed);
            KmsWeightVector w = make_weights(parsed, InverseTemperature::zero());
            const int loops = w.size();
            StateClass s = classify_weights(w, {w.mode(), 1e-9});
            BlockLayout layout =
                force_single_block ? consecutive_layout(Partition({loops})) : layout_from_class(s);
            for (int m : layout.partition.blocks())
                if (m >= 4 && d % 2 == 1) throw InvalidArgument("blocks of size >= 4 need an even --d");

            std::mt19937_64 rng(seed);
            std::vector<MagicUnitary> magic;
            QRep rep = model_qrep(layout, rng, d, &magic);
            VerifyOptions opts{trials, max_degree, kVerificationTolerance, seed};

            CheckReport checks;
            double commutator = 0.0;
            for (std::size_t b = 0; b < rep.blocks.size(); ++b) {
                commutator = std::max(commutator, noncommutativity(magic[b]));
                std::string prefix = "block" + std::to_string(b + 1) + ".";
                checks.append(check_magic_relations(magic[b], kConstructionTolerance), prefix + "magic.");
                checks.append(check_hinf_relations(rep.blocks[b], kConstructionTolerance), prefix + "hinf.");
            }
            checks.append(verify_homomorphism(rep, opts), "homomorphism.");
            checks.append(verify_tau_preservation(rep, w, opts, force_single_block), "tau.");
            CheckReport group;
            const int pairs = std::min(trials, 50);
            const long long group_degree = std::min(max_degree, 4LL);
            for (int t = 0; t < pairs; ++t) {
                ClassicalPoint g = random_classical_point(layout, rng);
                ClassicalPoint h = random_classical_point(layout, rng);
                auto r = verify_classical_group_law(layout, g, h, group_degree);
                if (group.checks.empty() || r.max_deviation() > group.max_deviation()) group = r;
            }
            if (group.checks.empty()) group.add("group_law", 0.0, 0.0);
            checks.append(group, "classical.");

            VerificationSummary summary{seed, layout.partition, rep.model, rep.d, max_degree, checks};
            doc["weights_partition"] = to_json(s.partition);
            doc["symmetry"] = out.ascii ? symmetry_descriptor(s.partition).ascii_name
                                        : symmetry_descriptor(s.partition).canonical_name;
            merge(doc, to_json(summary));
            doc["noncommutativity"] = commutator;
            if (force_single_block) {
                ClassicalWitness wit = find_tau_witness(layout, w);
                Json sigma = Json::array();
                for (int v : wit.sigma) sigma.push_back(v + 1);
                doc["witness"] = Json{{"block", wit.block + 1},
                                      {"sigma", sigma},
                                      {"loop", wit.loop},
                                      {"deviation", wit.deviation},
                                      {"detected", wit.deviation >= kFailureThreshold}};
            }
            emit(doc, out);
            if (!checks.pass()) {
                std::cerr << "qsym: verification failed\n";
                return static_cast<int>(kVerifyFailed);
            }
            return static_cast<int>(kOk);
        });
    });

    auto* partitions = app.add_subcommand("partitions", "Partitions of n with their quantum symmetry descriptors");
    partitions->add_option("n", n, "Number of loops")->required();
    partitions->callback([&] {
        Json request{{"subcommand", "partitions"}, {"n", n}, {"ascii", out.ascii}};
        result = guarded(request, out, [&](Json& doc) {
            auto all = enumerate_partitions(n);
            doc["n"] = n;
            doc["count"] = partition_count(n);
            Json list = Json::array();
            for (const auto& p : all) {
                auto desc = symmetry_descriptor(p);
                list.push_back(Json{{"partition", to_json(p)},
                                    {"symmetry", out.ascii ? desc.ascii_name : desc.canonical_name}});
            }
            doc["partitions"] = std::move(list);
            return emit(doc, out);
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Json doc;
        doc["request"] = nullptr;
        return fail(std::move(doc), kBadInput, e.what(), out);
    }
    return result;
}
