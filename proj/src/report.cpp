#include "qsym/report.hpp"

namespace qsym {

Json to_json(const VertexMatrix& d) {
    Json rows = Json::array();
    for (int i = 0; i < d.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < d.size(); ++j) row.push_back(d(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const InverseTemperature& beta) {
    Json j;
    j["value"] = beta.value;
    j["exp_exact"] = beta.exp_value ? Json(to_string(*beta.exp_value)) : Json(nullptr);
    return j;
}

Json to_json(const SpectralReport& r) {
    Json j;
    j["rho"] = r.rho.value;
    j["rho_exact"] = r.rho.exact ? Json(to_string(*r.rho.exact)) : Json(nullptr);
    j["rho_method"] = r.rho.method;
    j["critical_beta"] = r.critical_beta ? Json(r.critical_beta->value) : Json(nullptr);
    j["perron"] = r.perron ? Json(r.perron->values) : Json(nullptr);
    if (r.perron && r.perron->exact) {
        Json exact = Json::array();
        for (const auto& v : *r.perron->exact) exact.push_back(to_string(v));
        j["perron_exact"] = std::move(exact);
    } else {
        j["perron_exact"] = nullptr;
    }
    j["eigenspace_dimension"] = r.eigenspace_dimension;
    j["kms_exists_at_critical"] = r.kms_exists_at_critical;
    j["warnings"] = r.warnings;
    return j;
}

Json to_json(const Partition& p) { return Json(p.blocks()); }

Json to_json(const SymmetryDescriptor& d, bool ascii) {
    Json j;
    j["symmetry"] = ascii ? d.ascii_name : d.canonical_name;
    j["factor_count"] = d.factors.size();
    Json factors = Json::array();
    for (const auto& f : d.factors) {
        Json fj;
        fj["size"] = f.size;
        fj["name"] = ascii ? f.ascii_name : f.name;
        fj["uncollapsed_name"] = ascii ? f.ascii_uncollapsed_name : f.uncollapsed_name;
        fj["is_trivial_permutation_part"] = f.is_trivial_permutation_part;
        fj["classical_permutation_part"] = f.classical_permutation_part;
        factors.push_back(std::move(fj));
    }
    j["factors"] = std::move(factors);
    return j;
}

Json to_json(const StateClass& s, NumericMode mode, bool ascii) {
    Json j;
    j["partition"] = to_json(s.partition);
    Json blocks = Json::array();
    for (const auto& b : s.blocks) {
        Json bj;
        bj["value"] = mode == NumericMode::exact ? Json(to_string(b.value)) : Json(to_double(b.value));
        bj["vertices"] = b.vertices;
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = std::move(blocks);
    merge(j, to_json(symmetry_descriptor(s.partition), ascii));
    return j;
}

Json to_json(const CheckReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["max_deviation"] = c.max_deviation;
        cj["pass"] = c.pass;
        checks.push_back(std::move(cj));
    }
    return checks;
}

Json to_json(const VerificationSummary& v) {
    Json j;
    j["seed"] = v.seed;
    j["partition"] = to_json(v.partition);
    j["model"] = to_string(v.model);
    j["d"] = v.d;
    j["L"] = v.max_degree;
    j["checks"] = to_json(v.checks);
    j["pass"] = v.checks.pass();
    return j;
}

void merge(Json& into, const Json& from) {
    for (const auto& [key, value] : from.items()) into[key] = value;
}

std::string render(const Json& doc, bool pretty) { return pretty ? doc.dump(2) : doc.dump(); }

}  // namespace qsym
