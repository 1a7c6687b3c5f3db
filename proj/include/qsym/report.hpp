#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "qsym/cqg_verify.hpp"
#include "qsym/graph.hpp"
#include "qsym/kms.hpp"
#include "qsym/partitions.hpp"

// Structured documents for every result type. Keys keep insertion order so
// that identical inputs always render to identical bytes.
namespace qsym {

using Json = nlohmann::ordered_json;

Json to_json(const VertexMatrix& d);
Json to_json(const InverseTemperature& beta);
Json to_json(const SpectralReport& r);
Json to_json(const Partition& p);
Json to_json(const SymmetryDescriptor& d, bool ascii);
// {"partition", "blocks", "symmetry", "factor_count", "factors"}; float-mode
// block values are written as numbers, exact ones as "p/q" strings.
Json to_json(const StateClass& s, NumericMode mode, bool ascii);
Json to_json(const CheckReport& r);

struct VerificationSummary {
    std::uint64_t seed = 0;
    Partition partition;
    ModelKind model = ModelKind::classical;
    int d = 1;
    long long max_degree = 0;
    CheckReport checks;
};
Json to_json(const VerificationSummary& v);

// Copies the top-level keys of `from` into `into`.
void merge(Json& into, const Json& from);

// Compact single-line document, or two-space indentation with `pretty`.
std::string render(const Json& doc, bool pretty);

}  // namespace qsym
