#pragma once

#include <optional>

#include "htheta/mf.hpp"
#include "htheta/theta.hpp"

namespace htheta {

enum class FamilyName { a_n_curve, a_n_surface, a_n_threefold, quadric_3fold, custom };

std::string family_name_string(FamilyName n);
std::optional<FamilyName> family_name_from_string(const std::string& s);

// Payload for custom families: an explicit hypersurface with matrix
// factorizations given as polynomial-text matrices.
struct CustomFamilyData {
    std::string label;
    std::vector<std::string> variables;
    std::string f;
    std::vector<std::pair<std::vector<std::vector<std::string>>,
                          std::vector<std::vector<std::string>>>>
        mfs;
};

struct FamilySpec {
    FamilyName name = FamilyName::a_n_surface;
    int n = 1;
    CoefficientField field = CoefficientField::rationals();
    std::optional<CustomFamilyData> custom;
};

struct Family {
    std::string label;
    int n = 0;
    HRingPtr ring;
    std::vector<MatrixFactorization> factorizations;
    std::vector<RModulePresentation> modules;  // the cokernels, labeled
    SingularityReport singularity;
    VanishingPrediction prediction;
};

// Instantiates a bundled family:
//   a_n_curve(n):    f = x^{n+1} - y^2   (dim 1)
//   a_n_surface(n):  f = x^{n+1} - y*z   (dim 2), A_j = [[x^j, y],[z, x^{n+1-j}]]
//   a_n_threefold(n):f = x^{n+1} - y*z + w^2 (dim 3), one-variable doubling
//   quadric_3fold:   f = x*y - z*w       (dim 3), [[x, z],[w, y]] and transpose
// Every factorization is validated on construction.
Family build_family(const FamilySpec& spec);

// The node f = x*y with modules R/x and R/y, as a custom family spec.
FamilySpec node_family_spec(CoefficientField field = CoefficientField::rationals());

struct SweepRecord {
    std::string family;
    int n = 0;
    std::string field;
    std::string pair;
    long long theta = 0;
    std::uint64_t len_even = 0;
    std::uint64_t len_odd = 0;
    int stab_index = 0;
    bool predicted_vanishing = false;
    long long millis = 0;
};

struct SweepConfig {
    std::vector<FamilySpec> families;
    ThetaOptions options;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::string determinism_hash;  // over everything except the timing column
};

// Throws ConformanceViolation when a record predicted to vanish has a
// nonzero theta.
void check_conformance(const SweepRecord& record);

// Evaluates theta on all ordered module pairs of every requested family, in
// deterministic order. Aborts on a vanishing-conformance violation.
SweepResult run_sweep(const SweepConfig& config);

std::string sweep_csv(const std::vector<SweepRecord>& records);

struct BiadditivityResult {
    long long theta_sum = 0;     // theta(M1 + M2, N)
    long long theta_first = 0;   // theta(M1, N)
    long long theta_second = 0;  // theta(M2, N)
    bool pass = false;
};

BiadditivityResult biadditivity_audit(const RModulePresentation& M1,
                                      const RModulePresentation& M2,
                                      const RModulePresentation& N,
                                      const ThetaOptions& opts = {});

}  // namespace htheta
