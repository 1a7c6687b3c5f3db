#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsym/kms.hpp"
#include "qsym/rational.hpp"

namespace qsym {

inline constexpr int kDefaultPartitionCap = 60;
// p(n) fits in 64 bits up to n = 405.
inline constexpr int kMaxPartitionCount = 405;

// Partition of n, blocks sorted in descending order.
class Partition {
public:
    Partition() = default;
    // Sorts the blocks; throws InvalidArgument on an empty list or a block < 1.
    explicit Partition(std::vector<int> blocks);

    const std::vector<int>& blocks() const { return blocks_; }
    int total() const;
    int length() const { return static_cast<int>(blocks_.size()); }

    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> blocks_;
};

std::string to_string(const Partition& p);

// All partitions of n, lexicographically descending: (n), (n-1, 1), ..., (1, ..., 1).
std::vector<Partition> enumerate_partitions(int n, int cap = kDefaultPartitionCap);

// p(n) by Euler's pentagonal-number recurrence. cap is clamped to kMaxPartitionCount.
std::uint64_t partition_count(int n, int cap = kDefaultPartitionCap);

struct WeightBlock {
    Rational value;
    std::vector<int> vertices;  // 1-based, ascending
};

// A KMS weight vector grouped into its class [P]: equal weights share a block.
struct StateClass {
    Partition partition;
    std::vector<WeightBlock> blocks;  // size descending, then value descending
    std::vector<int> assignment;      // vertex (0-based) -> block index
};

struct ClassifyOptions {
    NumericMode mode = NumericMode::exact;
    double epsilon = 1e-9;  // float mode: single-linkage threshold
};

// Throws NonPositiveWeight when some weight is <= 0 and InconsistentGrouping
// when float-mode single-linkage chains values further apart than epsilon.
StateClass classify_weights(const KmsWeightVector& c, const ClassifyOptions& options = {});

// Weight vector reassembled from a class (exact inverse of classify in exact mode).
std::vector<Rational> reconstruct_weights(const StateClass& s);

struct WreathFactor {
    int size = 1;
    bool is_trivial_permutation_part = false;  // m = 1: S_1^+ is trivial
    bool classical_permutation_part = false;   // m <= 3: S_m^+ = S_m
    std::string uncollapsed_name;              // always "C(S¹) ≀ S_m⁺"
    std::string name;                          // "C(S¹)" when m = 1
    std::string ascii_name;                    // "C(S^1) wr S_m^+" or "C(S^1)"
    std::string ascii_uncollapsed_name;
};

struct SymmetryDescriptor {
    std::vector<WreathFactor> factors;
    std::string canonical_name;
    std::string ascii_name;

    friend bool operator==(const SymmetryDescriptor& a, const SymmetryDescriptor& b) {
        return a.canonical_name == b.canonical_name;
    }
};

// Free product over the blocks of C(S¹) ≀ S_m⁺, e.g. "(C(S¹) ≀ S₂⁺) ⋆ C(S¹)".
SymmetryDescriptor symmetry_descriptor(const Partition& p);
std::vector<SymmetryDescriptor> descriptors_for_n(int n, int cap = kDefaultPartitionCap);

}  // namespace qsym
