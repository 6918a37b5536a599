#pragma once

#include "htheta/harness.hpp"

// Vendored nlohmann/json single header.
#include "json.hpp"

namespace htheta {

// One named module of a job: either a raw presentation or a matrix
// factorization (kept for deep verification) together with its cokernel.
struct JobModule {
    std::string name;
    std::optional<MatrixFactorization> mf;
    RModulePresentation module;
};

struct Job {
    HRingPtr ring;
    std::vector<JobModule> modules;
    std::vector<std::pair<std::string, std::string>> pairs;
    ThetaOptions options;
};

CoefficientField field_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(const CoefficientField& k);

Job parse_job(const nlohmann::json& j);
Job load_job(const std::string& path);

const JobModule& find_module(const Job& job, const std::string& name);

// Matrices as row-major arrays of canonical polynomial strings.
nlohmann::json matrix_to_json(const FreeMap& m);
FreeMap matrix_from_json(const nlohmann::json& j, const RingPtr& ring);

nlohmann::json theta_report_to_json(const ThetaReport& r);
ThetaReport theta_report_from_json(const nlohmann::json& j);

nlohmann::json singularity_to_json(const SingularityReport& rep,
                                   const VanishingPrediction& pred);

nlohmann::json extnat_to_json(const ExtNat& n);

}  // namespace htheta
