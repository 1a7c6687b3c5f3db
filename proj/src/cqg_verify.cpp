#include "qsym/cqg_verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsym/error.hpp"

namespace qsym {

bool is_permutation(const Permutation& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (int v : sigma) {
        if (v < 0 || v >= static_cast<int>(sigma.size()) || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

double operator_norm(const OpMatrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    Eigen::JacobiSVD<OpMatrix> svd(m);
    return svd.singularValues()(0);
}

namespace {

OpMatrix identity(int d) { return OpMatrix::Identity(d, d); }
OpMatrix zero(int d) { return OpMatrix::Zero(d, d); }

OpMatrix matrix_power(const OpMatrix& a, long long e) {
    OpMatrix result = identity(static_cast<int>(a.rows()));
    for (long long k = 0; k < e; ++k) result = result * a;
    return result;
}

Permutation random_permutation(int m, std::mt19937_64& rng) {
    Permutation p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

double noncommutativity(const MagicUnitary& u) {
    double out = 0.0;
    for (std::size_t a = 0; a < u.entries.size(); ++a)
        for (std::size_t b = a + 1; b < u.entries.size(); ++b)
            out = std::max(out, operator_norm(u.entries[a] * u.entries[b] - u.entries[b] * u.entries[a]));
    return out;
}

MagicUnitary magic_unitary_classical(const Permutation& sigma) {
    if (!is_permutation(sigma)) throw InvalidArgument("not a permutation");
    const int m = static_cast<int>(sigma.size());
    MagicUnitary u{m, 1, std::vector<OpMatrix>(static_cast<std::size_t>(m * m), zero(1))};
    for (int j = 0; j < m; ++j) u(sigma[static_cast<std::size_t>(j)], j)(0, 0) = 1.0;
    return u;
}

MagicUnitary magic_unitary_two_projections(double theta) {
    OpMatrix p = zero(2);
    p(0, 0) = 1.0;
    const double c = std::cos(theta), s = std::sin(theta);
    OpMatrix q(2, 2);
    q << c * c, c * s, c * s, s * s;
    const OpMatrix one = identity(2);
    MagicUnitary u{4, 2, std::vector<OpMatrix>(16, zero(2))};
    u(0, 0) = p;
    u(0, 1) = one - p;
    u(1, 0) = one - p;
    u(1, 1) = p;
    u(2, 2) = q;
    u(2, 3) = one - q;
    u(3, 2) = one - q;
    u(3, 3) = q;
    return u;
}

MagicUnitary operator_direct_sum(const MagicUnitary& a, const MagicUnitary& b) {
    if (a.m != b.m) throw DimensionMismatch("operator direct sum needs equal m");
    MagicUnitary u{a.m, a.d + b.d, {}};
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
        OpMatrix e = zero(u.d);
        e.topLeftCorner(a.d, a.d) = a.entries[k];
        e.bottomRightCorner(b.d, b.d) = b.entries[k];
        u.entries.push_back(std::move(e));
    }
    return u;
}

MagicUnitary index_direct_sum(const MagicUnitary& a, const MagicUnitary& b) {
    if (a.d != b.d) throw DimensionMismatch("index direct sum needs equal d");
    const int m = a.m + b.m;
    MagicUnitary u{m, a.d, std::vector<OpMatrix>(static_cast<std::size_t>(m * m), zero(a.d))};
    for (int i = 0; i < a.m; ++i)
        for (int j = 0; j < a.m; ++j) u(i, j) = a(i, j);
    for (int i = 0; i < b.m; ++i)
        for (int j = 0; j < b.m; ++j) u(a.m + i, a.m + j) = b(i, j);
    return u;
}

MagicUnitary permute_indices(const MagicUnitary& u, const Permutation& rows, const Permutation& cols) {
    if (static_cast<int>(rows.size()) != u.m || static_cast<int>(cols.size()) != u.m || !is_permutation(rows) ||
        !is_permutation(cols))
        throw InvalidArgument("index permutation does not match the magic unitary");
    MagicUnitary out = u;
    for (int i = 0; i < u.m; ++i)
        for (int j = 0; j < u.m; ++j)
            out(i, j) = u(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    return out;
}

MagicUnitary conjugate(const MagicUnitary& u, const OpMatrix& w) {
    MagicUnitary out = u;
    for (auto& e : out.entries) e = w * e * w.adjoint();
    return out;
}

OpMatrix random_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    OpMatrix z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = {gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<OpMatrix> qr(z);
    return qr.householderQ() * identity(d);
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::classical: return "classical";
        case ModelKind::two_projection: return "two_projection";
        case ModelKind::mixed: return "mixed";
    }
    return "unknown";
}

ModelKind model_kind_for_size(int m) {
    if (m <= 3) return ModelKind::classical;
    return m == 4 ? ModelKind::two_projection : ModelKind::mixed;
}

MagicUnitary model_magic_unitary(int m, int d, std::mt19937_64& rng) {
    if (m < 1 || d < 1) throw InvalidArgument("model needs m >= 1 and d >= 1");
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    MagicUnitary u;
    if (m <= 3) {
        // S_m^+ = S_m for m <= 3: commuting models are all there is
        u = magic_unitary_classical(random_permutation(m, rng));
        for (int k = 1; k < d; ++k) u = operator_direct_sum(u, magic_unitary_classical(random_permutation(m, rng)));
    } else {
        if (d % 2 != 0) throw InvalidArgument("noncommutative models need an even operator dimension");
        for (int copy = 0; copy < d / 2; ++copy) {
            MagicUnitary piece = magic_unitary_two_projections(angle(rng));
            if (m > 4) {
                MagicUnitary rest = operator_direct_sum(magic_unitary_classical(random_permutation(m - 4, rng)),
                                                        magic_unitary_classical(random_permutation(m - 4, rng)));
                piece = index_direct_sum(piece, rest);
            }
            piece = permute_indices(piece, random_permutation(m, rng), random_permutation(m, rng));
            u = copy == 0 ? piece : operator_direct_sum(u, piece);
        }
    }
    return conjugate(u, random_unitary(d, rng));
}

QBlock build_qblock(const MagicUnitary& u, const std::vector<std::complex<double>>& phases) {
    if (static_cast<int>(phases.size()) != u.m * u.m) throw DimensionMismatch("need m x m phases");
    QBlock q{u.m, u.d, {}};
    for (std::size_t k = 0; k < phases.size(); ++k) {
        if (std::abs(std::abs(phases[k]) - 1.0) > kConstructionTolerance)
            throw InvalidArgument("phase with modulus " + std::to_string(std::abs(phases[k])) + " is not unimodular");
        q.entries.push_back(phases[k] * u.entries[k]);
    }
    return q;
}

std::vector<std::complex<double>> random_phases(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<std::complex<double>> out;
    for (int k = 0; k < m * m; ++k) out.push_back(std::polar(1.0, angle(rng)));
    return out;
}

bool CheckReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double CheckReport::max_deviation() const {
    double out = 0.0;
    for (const auto& c : checks) out = std::max(out, c.max_deviation);
    return out;
}

const CheckResult* CheckReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

void CheckReport::add(std::string name, double deviation, double tol) {
    checks.push_back({std::move(name), deviation, deviation <= tol});
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
    for (auto c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
}

CheckReport check_magic_relations(const MagicUnitary& u, double tol) {
    double idempotent = 0, self_adjoint = 0, rows = 0, cols = 0;
    const OpMatrix one = identity(u.d);
    for (int i = 0; i < u.m; ++i) {
        OpMatrix row_sum = zero(u.d), col_sum = zero(u.d);
        for (int j = 0; j < u.m; ++j) {
            const OpMatrix& e = u(i, j);
            idempotent = std::max(idempotent, operator_norm(e * e - e));
            self_adjoint = std::max(self_adjoint, operator_norm(e.adjoint() - e));
            row_sum += e;
            col_sum += u(j, i);
        }
        rows = std::max(rows, operator_norm(row_sum - one));
        cols = std::max(cols, operator_norm(col_sum - one));
    }
    CheckReport r;
    r.add("idempotent", idempotent, tol);
    r.add("self_adjoint", self_adjoint, tol);
    r.add("row_sums", rows, tol);
    r.add("column_sums", cols, tol);
    return r;
}

namespace {

// Unitarity defect of the m d x m d block matrix with blocks f(q_{nu mu}).
template <typename F>
double block_unitarity_defect(const QBlock& q, F&& f) {
    const int size = q.m * q.d;
    OpMatrix big(size, size);
    for (int nu = 0; nu < q.m; ++nu)
        for (int mu = 0; mu < q.m; ++mu) big.block(nu * q.d, mu * q.d, q.d, q.d) = f(q(nu, mu));
    const OpMatrix one = identity(size);
    return std::max(operator_norm(big * big.adjoint() - one), operator_norm(big.adjoint() * big - one));
}

}  // namespace

CheckReport check_hinf_relations(const QBlock& q, double tol) {
    double partial = 0, normal = 0, row_orth = 0, col_orth = 0;
    for (int nu = 0; nu < q.m; ++nu)
        for (int mu = 0; mu < q.m; ++mu) {
            const OpMatrix& e = q(nu, mu);
            partial = std::max(partial, operator_norm(e * e.adjoint() * e - e));
            normal = std::max(normal, operator_norm(e * e.adjoint() - e.adjoint() * e));
            for (int other = 0; other < q.m; ++other) {
                if (other == mu) continue;
                row_orth = std::max(row_orth, operator_norm(q(nu, mu).adjoint() * q(nu, other)));
                col_orth = std::max(col_orth, operator_norm(q(mu, nu).adjoint() * q(other, nu)));
            }
        }
    CheckReport r;
    r.add("partial_isometry", partial, tol);
    r.add("normality", normal, tol);
    r.add("unitarity_q", block_unitarity_defect(q, [](const OpMatrix& e) { return OpMatrix(e); }), tol);
    r.add("unitarity_q_star", block_unitarity_defect(q, [](const OpMatrix& e) { return OpMatrix(e.adjoint()); }),
          tol);
    r.add("row_orthogonality", row_orth, tol);
    r.add("column_orthogonality", col_orth, tol);
    return r;
}

BlockLayout consecutive_layout(const Partition& p) {
    BlockLayout layout{p, {}, {}};
    int next = 1;
    for (std::size_t b = 0; b < p.blocks().size(); ++b) {
        std::vector<int> members;
        for (int k = 0; k < p.blocks()[b]; ++k) {
            members.push_back(next++);
            layout.position.emplace_back(static_cast<int>(b), k);
        }
        layout.members.push_back(std::move(members));
    }
    return layout;
}

BlockLayout layout_from_class(const StateClass& s) {
    BlockLayout layout{s.partition, {}, std::vector<std::pair<int, int>>(s.assignment.size())};
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
        layout.members.push_back(s.blocks[b].vertices);
        for (std::size_t k = 0; k < s.blocks[b].vertices.size(); ++k)
            layout.position[static_cast<std::size_t>(s.blocks[b].vertices[k] - 1)] = {static_cast<int>(b),
                                                                                      static_cast<int>(k)};
    }
    return layout;
}

QRep make_qrep(BlockLayout layout, std::vector<QBlock> blocks) {
    if (blocks.size() != layout.members.size()) throw DimensionMismatch("one QBlock per partition block");
    if (blocks.empty()) throw DimensionMismatch("empty representation");
    const int d = blocks.front().d;
    bool all_classical = true, all_four = true;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].m != static_cast<int>(layout.members[b].size()))
            throw DimensionMismatch("QBlock size does not match its partition block");
        if (blocks[b].d != d) throw DimensionMismatch("QBlocks must share the operator dimension");
        all_classical = all_classical && blocks[b].m <= 3;
        all_four = all_four && blocks[b].m == 4;
    }
    QRep rep{std::move(layout), std::move(blocks), d, ModelKind::mixed};
    if (all_classical) rep.model = ModelKind::classical;
    if (all_four) rep.model = ModelKind::two_projection;
    return rep;
}

QRep model_qrep(const BlockLayout& layout, std::mt19937_64& rng, int d, std::vector<MagicUnitary>* magic) {
    if (d == 0) {
        d = 1;
        for (int m : layout.partition.blocks())
            if (m >= 4) d = 2;
    }
    std::vector<QBlock> blocks;
    for (const auto& members : layout.members) {
        const int m = static_cast<int>(members.size());
        MagicUnitary u = model_magic_unitary(m, d, rng);
        blocks.push_back(build_qblock(u, random_phases(m, rng)));
        if (magic) magic->push_back(std::move(u));
    }
    return make_qrep(layout, std::move(blocks));
}

CoactionImage apply_coaction(const QRep& rep, const LoopElement& x, long long max_degree) {
    if (x.size() != rep.layout.n())
        throw DimensionMismatch("element lives over " + std::to_string(x.size()) + " loops, representation over " +
                                std::to_string(rep.layout.n()));
    if (x.degree() > max_degree)
        throw InvalidArgument("element degree " + std::to_string(x.degree()) + " exceeds L = " +
                              std::to_string(max_degree));
    CoactionImage image;
    for (const auto& [mono, coeff] : x.terms()) {
        auto [b, mu] = rep.layout.position[static_cast<std::size_t>(mono.loop - 1)];
        const QBlock& q = rep.blocks[static_cast<std::size_t>(b)];
        const auto& members = rep.layout.members[static_cast<std::size_t>(b)];
        const std::complex<double> c = coeff.to_complex();
        for (int nu = 0; nu < q.m; ++nu) {
            const OpMatrix& e = q(nu, mu);
            OpMatrix term;
            if (mono.exponent > 0)
                term = matrix_power(e, mono.exponent);
            else if (mono.exponent < 0)
                term = matrix_power(e.adjoint(), -mono.exponent);
            else
                term = e * e.adjoint();
            if (term.isZero(0.0)) continue;
            LoopMonomial key{members[static_cast<std::size_t>(nu)], mono.exponent};
            auto [it, inserted] = image.try_emplace(key, zero(rep.d));
            it->second += c * term;
        }
    }
    return image;
}

CoactionImage multiply(const CoactionImage& a, const CoactionImage& b) {
    CoactionImage out;
    for (const auto& [ka, ma] : a)
        for (const auto& [kb, mb] : b) {
            if (ka.loop != kb.loop) continue;
            LoopMonomial key{ka.loop, ka.exponent + kb.exponent};
            auto [it, inserted] = out.try_emplace(key, OpMatrix::Zero(ma.rows(), mb.cols()));
            it->second += ma * mb;
        }
    return out;
}

CoactionImage adjoint(const CoactionImage& a) {
    CoactionImage out;
    for (const auto& [k, m] : a) out.emplace(LoopMonomial{k.loop, -k.exponent}, m.adjoint());
    return out;
}

double image_distance(const CoactionImage& a, const CoactionImage& b) {
    double out = 0.0;
    for (const auto& [k, m] : a) {
        auto it = b.find(k);
        out = std::max(out, operator_norm(it == b.end() ? m : OpMatrix(m - it->second)));
    }
    for (const auto& [k, m] : b)
        if (!a.contains(k)) out = std::max(out, operator_norm(m));
    return out;
}

namespace {

std::vector<LoopElement> generators(int n) {
    std::vector<LoopElement> out;
    for (int i = 1; i <= n; ++i) {
        out.push_back(LoopElement::generator_s(n, i));
        out.push_back(LoopElement::generator_s_star(n, i));
        out.push_back(LoopElement::projection(n, i));
    }
    return out;
}

}  // namespace

CheckReport verify_homomorphism(const QRep& rep, const VerifyOptions& options) {
    const int n = rep.layout.n();
    const long long cap = 2 * std::max(options.max_degree, 1LL);
    double gen_mult = 0, gen_star = 0, rnd_mult = 0, rnd_star = 0;
    auto gens = generators(n);
    for (const auto& x : gens) {
        CoactionImage ax = apply_coaction(rep, x, cap);
        gen_star = std::max(gen_star, image_distance(apply_coaction(rep, adjoint(x), cap), adjoint(ax)));
        for (const auto& y : gens) {
            CoactionImage lhs = apply_coaction(rep, multiply(x, y), cap);
            gen_mult = std::max(gen_mult, image_distance(lhs, multiply(ax, apply_coaction(rep, y, cap))));
        }
    }
    std::mt19937_64 rng(options.seed);
    for (int t = 0; t < options.trials; ++t) {
        LoopElement x = random_element(n, options.max_degree, 4, rng);
        LoopElement y = random_element(n, options.max_degree, 4, rng);
        CoactionImage ax = apply_coaction(rep, x, options.max_degree);
        CoactionImage ay = apply_coaction(rep, y, options.max_degree);
        rnd_mult = std::max(rnd_mult, image_distance(apply_coaction(rep, multiply(x, y), cap), multiply(ax, ay)));
        rnd_star = std::max(rnd_star, image_distance(apply_coaction(rep, adjoint(x), cap), adjoint(ax)));
    }
    CoactionImage unit_image;
    for (int v = 1; v <= n; ++v) unit_image.emplace(LoopMonomial{v, 0}, identity(rep.d));
    double unit = image_distance(apply_coaction(rep, LoopElement::unit(n), cap), unit_image);

    CheckReport r;
    r.add("multiplicative_generators", gen_mult, options.tol);
    r.add("star_generators", gen_star, options.tol);
    r.add("multiplicative_random", rnd_mult, options.tol);
    r.add("star_random", rnd_star, options.tol);
    r.add("unital", unit, options.tol);
    return r;
}

namespace {

OpMatrix tau_of_image(const CoactionImage& image, const std::vector<double>& w, int d) {
    OpMatrix out = zero(d);
    for (const auto& [k, m] : image)
        if (k.exponent == 0) out += w[static_cast<std::size_t>(k.loop - 1)] * m;
    return out;
}

std::complex<double> tau_numeric(const LoopElement& x, const std::vector<double>& w) {
    std::complex<double> acc = 0;
    for (const auto& [m, c] : x.terms())
        if (m.exponent == 0) acc += c.to_complex() * w[static_cast<std::size_t>(m.loop - 1)];
    return acc;
}

// Weights constant on every block of the layout and classifying to its partition.
bool weights_match_layout(const BlockLayout& layout, const KmsWeightVector& c) {
    for (const auto& members : layout.members)
        for (int v : members)
            if (c[v - 1] != c[members.front() - 1]) {
                if (c.mode() == NumericMode::exact) return false;
                if (std::abs(to_double(c[v - 1]) - to_double(c[members.front() - 1])) > 1e-9) return false;
            }
    try {
        ClassifyOptions opts;
        opts.mode = c.mode();
        return classify_weights(c, opts).partition == layout.partition;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

CheckReport verify_tau_preservation(const QRep& rep, const KmsWeightVector& c, const VerifyOptions& options,
                                    bool force) {
    const int n = rep.layout.n();
    if (c.size() != n) throw DimensionMismatch("weight vector does not match the representation");
    if (!force && !weights_match_layout(rep.layout, c))
        throw PartitionMismatch("weights are not constant on the representation's blocks with partition " +
                                to_string(rep.layout.partition) +
                                "; generators joining different weight classes must vanish");
    const auto w = c.as_doubles();
    const OpMatrix one = identity(rep.d);

    double degree_zero = 0;
    for (std::size_t b = 0; b < rep.blocks.size(); ++b) {
        const QBlock& q = rep.blocks[b];
        const auto& members = rep.layout.members[b];
        for (int mu = 0; mu < q.m; ++mu) {
            OpMatrix acc = zero(rep.d);
            for (int nu = 0; nu < q.m; ++nu)
                acc += w[static_cast<std::size_t>(members[static_cast<std::size_t>(nu)] - 1)] * q(nu, mu) *
                       q(nu, mu).adjoint();
            double target = w[static_cast<std::size_t>(members[static_cast<std::size_t>(mu)] - 1)];
            degree_zero = std::max(degree_zero, operator_norm(acc - target * one));
        }
    }

    auto deviation = [&](const LoopElement& x, long long cap) {
        OpMatrix lhs = tau_of_image(apply_coaction(rep, x, cap), w, rep.d);
        return operator_norm(lhs - tau_numeric(x, w) * one);
    };
    double basis = 0;
    for (int v = 1; v <= n; ++v)
        for (long long a = -options.max_degree; a <= options.max_degree; ++a)
            basis = std::max(basis, deviation(LoopElement::monomial(n, {v, a}), options.max_degree));

    double random = 0;
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int t = 0; t < options.trials; ++t)
        random = std::max(random, deviation(random_element(n, options.max_degree, 4, rng), options.max_degree));

    CheckReport r;
    r.add("tau_degree_zero", degree_zero, options.tol);
    r.add("tau_basis", basis, options.tol);
    r.add("tau_random", random, options.tol);
    return r;
}

ClassicalWitness find_tau_witness(const BlockLayout& layout, const KmsWeightVector& c) {
    const int n = layout.n();
    if (c.size() != n) throw DimensionMismatch("weight vector does not match the layout");
    const auto w = c.as_doubles();
    ClassicalWitness best;
    // max over sigma of |c_sigma(mu) - c_mu| is attained at a transposition
    for (std::size_t b = 0; b < layout.members.size(); ++b) {
        const int m = static_cast<int>(layout.members[b].size());
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                std::vector<QBlock> blocks;
                for (std::size_t other = 0; other < layout.members.size(); ++other) {
                    const int mo = static_cast<int>(layout.members[other].size());
                    Permutation sigma(static_cast<std::size_t>(mo));
                    std::iota(sigma.begin(), sigma.end(), 0);
                    if (other == b) std::swap(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]);
                    blocks.push_back(build_qblock(magic_unitary_classical(sigma),
                                                  std::vector<std::complex<double>>(static_cast<std::size_t>(mo * mo), 1.0)));
                }
                QRep rep = make_qrep(layout, std::move(blocks));
                for (int mu : {i, j}) {
                    int loop = layout.members[b][static_cast<std::size_t>(mu)];
                    OpMatrix lhs = tau_of_image(apply_coaction(rep, LoopElement::projection(n, loop), 0), w, 1);
                    double dev = std::abs(lhs(0, 0) - w[static_cast<std::size_t>(loop - 1)]);
                    if (dev > best.deviation) {
                        Permutation sigma(static_cast<std::size_t>(m));
                        std::iota(sigma.begin(), sigma.end(), 0);
                        std::swap(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]);
                        best = {dev, static_cast<int>(b), sigma, loop};
                    }
                }
            }
    }
    return best;
}

namespace {

const std::vector<ComplexRational>& unit_gaussian_rationals() {
    static const std::vector<ComplexRational> values = [] {
        std::vector<ComplexRational> v;
        const std::vector<std::pair<Rational, Rational>> base = {
            {1, 0}, {0, 1}, {Rational(3, 5), Rational(4, 5)}, {Rational(5, 13), Rational(12, 13)}};
        for (const auto& [re, im] : base)
            for (int sr : {1, -1})
                for (int si : {1, -1}) {
                    ComplexRational z(re * sr, im * si);
                    if (std::find(v.begin(), v.end(), z) == v.end()) v.push_back(z);
                }
        return v;
    }();
    return values;
}

}  // namespace

ClassicalPoint classical_point(const BlockLayout& layout, const std::vector<Permutation>& perms,
                               const std::vector<std::vector<ComplexRational>>& phases) {
    const int n = layout.n();
    if (perms.size() != layout.members.size() || phases.size() != layout.members.size())
        throw InvalidArgument("one permutation and one phase list per block");
    ClassicalPoint g{n, std::vector<ComplexRational>(static_cast<std::size_t>(n * n))};
    for (std::size_t b = 0; b < layout.members.size(); ++b) {
        const auto& members = layout.members[b];
        const auto& sigma = perms[b];
        if (sigma.size() != members.size() || !is_permutation(sigma) || phases[b].size() != members.size())
            throw InvalidArgument("classical point data does not match block " + std::to_string(b + 1));
        for (std::size_t mu = 0; mu < members.size(); ++mu) {
            auto nu = static_cast<std::size_t>(sigma[mu]);
            if (phases[b][nu].norm_squared() != 1) throw InvalidArgument("classical phases must be unimodular");
            g.matrix[static_cast<std::size_t>((members[nu] - 1) * n + (members[mu] - 1))] = phases[b][nu];
        }
    }
    return g;
}

ClassicalPoint random_classical_point(const BlockLayout& layout, std::mt19937_64& rng) {
    const auto& units = unit_gaussian_rationals();
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    std::vector<Permutation> perms;
    std::vector<std::vector<ComplexRational>> phases;
    for (const auto& members : layout.members) {
        const int m = static_cast<int>(members.size());
        perms.push_back(random_permutation(m, rng));
        std::vector<ComplexRational> z;
        for (int k = 0; k < m; ++k) z.push_back(units[pick(rng)]);
        phases.push_back(std::move(z));
    }
    return classical_point(layout, perms, phases);
}

ClassicalPoint identity_point(int n) {
    ClassicalPoint g{n, std::vector<ComplexRational>(static_cast<std::size_t>(n * n))};
    for (int i = 0; i < n; ++i) g.matrix[static_cast<std::size_t>(i * n + i)] = 1;
    return g;
}

ClassicalPoint operator*(const ClassicalPoint& g, const ClassicalPoint& h) {
    if (g.n != h.n) throw DimensionMismatch("classical points of different size");
    const int n = g.n;
    ClassicalPoint out{n, std::vector<ComplexRational>(static_cast<std::size_t>(n * n))};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (g(i, k).is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!h(k, j).is_zero()) out.matrix[static_cast<std::size_t>(i * n + j)] += g(i, k) * h(k, j);
        }
    return out;
}

bool is_block_compatible(const ClassicalPoint& g, const BlockLayout& layout) {
    const int n = layout.n();
    if (g.n != n) return false;
    std::vector<int> row_hits(static_cast<std::size_t>(n), 0);
    for (int mu = 0; mu < n; ++mu) {
        int hits = 0;
        for (int nu = 0; nu < n; ++nu) {
            const auto& v = g(nu, mu);
            if (v.is_zero()) continue;
            if (v.norm_squared() != 1) return false;
            if (layout.position[static_cast<std::size_t>(nu)].first != layout.position[static_cast<std::size_t>(mu)].first)
                return false;
            ++hits;
            ++row_hits[static_cast<std::size_t>(nu)];
        }
        if (hits != 1) return false;
    }
    return std::all_of(row_hits.begin(), row_hits.end(), [](int h) { return h == 1; });
}

LoopElement act(const ClassicalPoint& g, const LoopElement& x) {
    if (g.n != x.size()) throw DimensionMismatch("classical point does not match the algebra");
    LoopElement out(x.size());
    for (const auto& [m, c] : x.terms())
        for (int nu = 0; nu < g.n; ++nu) {
            const ComplexRational& s = g(nu, m.loop - 1);
            if (s.is_zero()) continue;
            ComplexRational factor = m.exponent > 0   ? s.pow(m.exponent)
                                     : m.exponent < 0 ? s.conj().pow(-m.exponent)
                                                      : ComplexRational(s.norm_squared());
            out.add_term({nu + 1, m.exponent}, c * factor);
        }
    return out;
}

CheckReport verify_classical_group_law(const BlockLayout& layout, const ClassicalPoint& g, const ClassicalPoint& h,
                                       long long max_degree) {
    if (!is_block_compatible(g, layout) || !is_block_compatible(h, layout))
        throw InvalidArgument("classical point is not compatible with partition " + to_string(layout.partition));
    const ClassicalPoint gh = g * h;
    double deviation = 0;
    const int n = layout.n();
    for (int v = 1; v <= n; ++v)
        for (long long a = -max_degree; a <= max_degree; ++a) {
            LoopElement m = LoopElement::monomial(n, {v, a});
            LoopElement diff = act(gh, m) - act(g, act(h, m));
            for (const auto& [k, c] : diff.terms()) deviation = std::max(deviation, std::abs(c.to_complex()));
        }
    CheckReport r;
    r.add("group_law", deviation, 0.0);
    return r;
}

}  // namespace qsym
