#include "htheta/jobio.hpp"

#include <fstream>

namespace htheta {

using nlohmann::json;

CoefficientField field_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "rational")
        return CoefficientField::rationals();
    if (j.is_object() && j.contains("prime"))
        return CoefficientField::prime_field(j.at("prime").get<std::uint64_t>());
    throw InvalidParameter("field must be \"rational\" or {\"prime\": p}");
}

json field_to_json(const CoefficientField& k) {
    if (k.kind() == FieldKind::rationals) return "rational";
    return json{{"prime", k.characteristic()}};
}

json matrix_to_json(const FreeMap& m) {
    json rows = json::array();
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::uint32_t j = 0; j < m.cols(); ++j) row.push_back(m.entry(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

FreeMap matrix_from_json(const json& j, const RingPtr& ring) {
    if (!j.is_array()) throw InvalidParameter("matrix must be an array of rows");
    std::uint32_t r = static_cast<std::uint32_t>(j.size());
    std::uint32_t c = r ? static_cast<std::uint32_t>(j.at(0).size()) : 0;
    FreeMap m(ring, r, c);
    for (std::uint32_t i = 0; i < r; ++i) {
        if (j.at(i).size() != c) throw InvalidParameter("ragged matrix");
        for (std::uint32_t k = 0; k < c; ++k)
            m.set_entry(i, k, parse_poly(j.at(i).at(k).get<std::string>(), ring));
    }
    return m;
}

Job parse_job(const json& j) {
    Job job;
    CoefficientField field = field_from_json(j.at("field"));
    std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
    RingPtr Q = PolyRing::make(field, vars);
    job.ring = HypersurfaceRing::make(parse_poly(j.at("f").get<std::string>(), Q));

    if (j.contains("options")) {
        const json& o = j.at("options");
        if (o.contains("max_steps")) job.options.max_steps = o.at("max_steps").get<int>();
        if (o.contains("assume_stable_at"))
            job.options.assume_stable_at = o.at("assume_stable_at").get<int>();
    }

    if (j.contains("modules")) {
        for (const auto& [name, spec] : j.at("modules").items()) {
            if (spec.contains("presentation")) {
                FreeMap pres = matrix_from_json(spec.at("presentation"), Q);
                job.modules.push_back(
                    {name, std::nullopt, RModulePresentation(job.ring, pres, name)});
            } else if (spec.contains("mf")) {
                FreeMap a = matrix_from_json(spec.at("mf").at("A"), Q);
                FreeMap b = matrix_from_json(spec.at("mf").at("B"), Q);
                MatrixFactorization mf(job.ring, std::move(a), std::move(b));
                RModulePresentation coker = mf.cokernel(name);
                job.modules.push_back({name, std::move(mf), std::move(coker)});
            } else {
                throw InvalidParameter("module '" + name +
                                       "' needs a presentation or an mf entry");
            }
        }
    }

    if (j.contains("pairs")) {
        for (const auto& p : j.at("pairs")) {
            if (!p.is_array() || p.size() != 2)
                throw InvalidParameter("each pair must be [name, name]");
            job.pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        }
    }
    return job;
}

Job load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open job file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("malformed JSON: ") + e.what());
    }
    return parse_job(j);
}

const JobModule& find_module(const Job& job, const std::string& name) {
    for (const auto& m : job.modules)
        if (m.name == name) return m;
    throw InvalidParameter("job references unknown module '" + name + "'");
}

json extnat_to_json(const ExtNat& n) {
    if (n.is_finite()) return n.value();
    return "infinite";
}

json theta_report_to_json(const ThetaReport& r) {
    return json{{"theta", r.value},
                {"len_even", r.even_length},
                {"len_odd", r.odd_length},
                {"stab_index", r.stabilization_index},
                {"periodicity_verified", r.periodicity_verified},
                {"notes", r.hypothesis_notes}};
}

ThetaReport theta_report_from_json(const json& j) {
    ThetaReport r;
    r.value = j.at("theta").get<long long>();
    r.even_length = j.at("len_even").get<std::uint64_t>();
    r.odd_length = j.at("len_odd").get<std::uint64_t>();
    r.stabilization_index = j.at("stab_index").get<int>();
    r.periodicity_verified = j.at("periodicity_verified").get<bool>();
    r.hypothesis_notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

json singularity_to_json(const SingularityReport& rep, const VanishingPrediction& pred) {
    return json{{"isolated", rep.isolated_at_origin},
                {"milnor", extnat_to_json(rep.milnor_number)},
                {"tjurina", extnat_to_json(rep.tjurina_number)},
                {"dim", rep.dim},
                {"parity", rep.dim_even ? "even" : "odd"},
                {"vanishing_predicted", pred.predicted},
                {"justification", pred.justification},
                {"char_warnings", rep.char_warnings}};
}

}  // namespace htheta
