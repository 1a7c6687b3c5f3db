#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsym/kms.hpp"
#include "qsym/loop_algebra.hpp"
#include "qsym/partitions.hpp"

// Finite-dimensional models of the quantum symmetry generators and
// representation-level checks of the relations they must satisfy.
namespace qsym {

using OpMatrix = Eigen::MatrixXcd;

// Tolerances: constructions are checked at 1e-12, verification passes at
// 1e-10, and a forced failure must show a deviation of at least 1e-3.
inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kVerificationTolerance = 1e-10;
inline constexpr double kFailureThreshold = 1e-3;

// 0-based images: sigma[j] = sigma(j).
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& sigma);

// Largest singular value.
double operator_norm(const OpMatrix& m);

// m x m array of d x d operators, entry (i, j) stored row-major.
struct MagicUnitary {
    int m = 0;
    int d = 0;
    std::vector<OpMatrix> entries;

    const OpMatrix& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * m + j)]; }
    OpMatrix& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * m + j)]; }
};

// max ||u_ij u_kl - u_kl u_ij|| over all pairs of entries; 0 for classical models.
double noncommutativity(const MagicUnitary& u);

// u_ij = 1 if i = sigma(j), as 1 x 1 matrices.
MagicUnitary magic_unitary_classical(const Permutation& sigma);

// m = 4, d = 2: blockdiag([[P, 1-P], [1-P, P]], [[Q, 1-Q], [1-Q, Q]]) with
// P = diag(1, 0) and Q = P rotated by theta.
MagicUnitary magic_unitary_two_projections(double theta);

// Entrywise operator direct sum (same m): u_ij = diag(a_ij, b_ij).
MagicUnitary operator_direct_sum(const MagicUnitary& a, const MagicUnitary& b);
// Index direct sum (same d): blockdiag(a, b) with zero operators off the blocks.
MagicUnitary index_direct_sum(const MagicUnitary& a, const MagicUnitary& b);
// u'_ij = u_{row(i), col(j)}
MagicUnitary permute_indices(const MagicUnitary& u, const Permutation& rows, const Permutation& cols);
// u'_ij = w u_ij w^*
MagicUnitary conjugate(const MagicUnitary& u, const OpMatrix& w);

OpMatrix random_unitary(int d, std::mt19937_64& rng);

enum class ModelKind { classical, two_projection, mixed };
std::string to_string(ModelKind kind);
ModelKind model_kind_for_size(int m);

// Seeded model: classical points (direct sums of permutations) for m <= 3,
// the two-projection model for m = 4, and for m >= 5 the two-projection model
// index-summed with a classical block; d/2 copies are operator-summed and the
// result is conjugated by a random unitary. m >= 4 needs an even d.
MagicUnitary model_magic_unitary(int m, int d, std::mt19937_64& rng);

// q_{nu mu} = c_{nu mu} u_{nu mu} with unimodular scalars c.
struct QBlock {
    int m = 0;
    int d = 0;
    std::vector<OpMatrix> entries;

    const OpMatrix& operator()(int nu, int mu) const { return entries[static_cast<std::size_t>(nu * m + mu)]; }
    OpMatrix& operator()(int nu, int mu) { return entries[static_cast<std::size_t>(nu * m + mu)]; }
};

// phases are m x m, row-major; throws InvalidArgument if some |phase| - 1 > 1e-12.
QBlock build_qblock(const MagicUnitary& u, const std::vector<std::complex<double>>& phases);
std::vector<std::complex<double>> random_phases(int m, std::mt19937_64& rng);

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    bool pass = true;
};

struct CheckReport {
    std::vector<CheckResult> checks;

    bool pass() const;
    double max_deviation() const;
    const CheckResult* find(const std::string& name) const;
    void add(std::string name, double deviation, double tol);
    void append(const CheckReport& other, const std::string& prefix = "");
};

// u^2 = u, u^* = u, row and column sums equal to 1.
CheckReport check_magic_relations(const MagicUnitary& u, double tol);

// Partial isometry, normality, unitarity of ((q)) and ((q^*)), and the
// vanishing of q^* q products within a row and within a column.
CheckReport check_hinf_relations(const QBlock& q, double tol);

// Which loop sits where: block b holds members[b] (1-based loop indices,
// ascending), and position[loop - 1] = (block, index within block).
struct BlockLayout {
    Partition partition;
    std::vector<std::vector<int>> members;
    std::vector<std::pair<int, int>> position;

    int n() const { return static_cast<int>(position.size()); }
};

// Blocks take consecutive loops: block 0 gets 1..m_1, and so on.
BlockLayout consecutive_layout(const Partition& p);
// Blocks follow the weight classes of a classified state.
BlockLayout layout_from_class(const StateClass& s);

struct QRep {
    BlockLayout layout;
    std::vector<QBlock> blocks;
    int d = 1;
    ModelKind model = ModelKind::classical;
};

// Throws DimensionMismatch unless block sizes follow the layout and share d.
QRep make_qrep(BlockLayout layout, std::vector<QBlock> blocks);

// d defaults to 2 when some block has m >= 4 and to 1 otherwise. The magic
// unitaries behind each block are handed back through `magic` when given.
QRep model_qrep(const BlockLayout& layout, std::mt19937_64& rng, int d = 0,
                std::vector<MagicUnitary>* magic = nullptr);

// Coefficient matrices of S_nu^a (x) (-) in alpha(x), keyed by (nu, a).
using CoactionImage = std::map<LoopMonomial, OpMatrix>;

// alpha(S_mu^a) = sum_nu S_nu^a (x) q_{nu mu}^a for a > 0, adjoint powers for
// a < 0, and alpha(p_mu) = sum_nu p_nu (x) q_{nu mu} q_{nu mu}^*; linear in x.
// Throws DimensionMismatch for a size mismatch and InvalidArgument when
// degree(x) > max_degree.
CoactionImage apply_coaction(const QRep& rep, const LoopElement& x, long long max_degree);

CoactionImage multiply(const CoactionImage& a, const CoactionImage& b);
CoactionImage adjoint(const CoactionImage& a);
double image_distance(const CoactionImage& a, const CoactionImage& b);

struct VerifyOptions {
    int trials = 100;
    long long max_degree = 6;  // L
    double tol = kVerificationTolerance;
    std::uint64_t seed = 0;
};

// alpha(xy) = alpha(x) alpha(y) and alpha(x^*) = alpha(x)^* on all generator
// pairs and on random elements of degree <= L, plus alpha(1) = 1 (x) 1.
CheckReport verify_homomorphism(const QRep& rep, const VerifyOptions& options);

// (tau (x) id) alpha(x) = tau(x) 1 on basis monomials of degree <= L and random
// elements, with the degree-zero identity sum_nu c_nu q q^* = c_mu 1 checked
// per column. Throws PartitionMismatch unless the weights are constant on the
// rep's blocks and classify to its partition; `force` skips that check.
CheckReport verify_tau_preservation(const QRep& rep, const KmsWeightVector& c, const VerifyOptions& options,
                                    bool force = false);

// Largest |(tau (x) id) alpha(p_mu) - tau(p_mu)| over classical points
// (permutations with trivial phases) of a rep layout, with the point found.
struct ClassicalWitness {
    double deviation = 0.0;
    int block = 0;
    Permutation sigma;
    int loop = 0;  // 1-based loop mu where the deviation occurs
};
ClassicalWitness find_tau_witness(const BlockLayout& layout, const KmsWeightVector& c);

// One-dimensional representation: q_{nu mu} -> G(nu, mu), where G is a
// block-diagonal monomial matrix with unimodular Gaussian-rational entries.
struct ClassicalPoint {
    int n = 0;
    std::vector<ComplexRational> matrix;  // row-major, entry (nu, mu), 0-based

    const ComplexRational& operator()(int nu, int mu) const { return matrix[static_cast<std::size_t>(nu * n + mu)]; }
    friend bool operator==(const ClassicalPoint&, const ClassicalPoint&) = default;
};

// Per block b: entry (sigma_b(mu), mu) = phases_b[sigma_b(mu)], all else zero.
ClassicalPoint classical_point(const BlockLayout& layout, const std::vector<Permutation>& perms,
                               const std::vector<std::vector<ComplexRational>>& phases);
ClassicalPoint random_classical_point(const BlockLayout& layout, std::mt19937_64& rng);
ClassicalPoint identity_point(int n);
ClassicalPoint operator*(const ClassicalPoint& g, const ClassicalPoint& h);
bool is_block_compatible(const ClassicalPoint& g, const BlockLayout& layout);

// The *-automorphism of the loop algebra induced by a classical point.
LoopElement act(const ClassicalPoint& g, const LoopElement& x);

// act(g h, m) = act(g, act(h, m)) for every monomial of degree <= L.
// Throws InvalidArgument for points that are not block compatible.
CheckReport verify_classical_group_law(const BlockLayout& layout, const ClassicalPoint& g, const ClassicalPoint& h,
                                       long long max_degree);

}  // namespace qsym
