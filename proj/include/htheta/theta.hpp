#pragma once

#include "htheta/homology.hpp"

namespace htheta {

struct ThetaReport {
    long long value = 0;
    std::uint64_t even_length = 0;
    std::uint64_t odd_length = 0;
    int stabilization_index = 0;
    bool periodicity_verified = false;
    std::vector<std::string> hypothesis_notes;
};

using ThetaOptions = TorOptions;

// theta(M, N) = length Tor_even - length Tor_odd in the stable range.
// Throws NotFiniteLength when the stable Tor modules are not finite length
// supported at the origin, NoStabilization when no periodic tail is found.
ThetaReport theta(const RModulePresentation& M, const RModulePresentation& N,
                  const ThetaOptions& opts = {});

struct SingularityReport {
    bool isolated_at_origin = false;
    ExtNat milnor_number;
    ExtNat tjurina_number;
    std::size_t dim = 0;  // dim R = #variables - 1
    bool dim_even = false;
    std::vector<std::string> char_warnings;
};

// Jacobian criterion diagnostics for the hypersurface f = 0 at the origin:
// support of (f, df/dx0, ..., df/dxn), Milnor and Tjurina numbers, dimension
// parity, and characteristic-p derivative degeneration warnings.
SingularityReport jacobian_check(const Polynomial& f);

struct VanishingPrediction {
    bool predicted = false;
    std::string justification;
};

// Prediction that theta vanishes identically: isolated singularity at the
// origin over a perfect field with dim R even.
VanishingPrediction vanishing_predicted(const SingularityReport& report);

}  // namespace htheta
