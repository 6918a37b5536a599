#pragma once

#include <optional>

#include "htheta/quotient.hpp"

namespace htheta {

// A map of presented R-modules, given by a matrix acting on generators.
// Well-definedness (matrix carries source relations into target relations)
// is checked on construction.
class PresentedMap {
public:
    PresentedMap(RModulePresentation source, RModulePresentation target, FreeMap matrix);

    const RModulePresentation& source() const { return source_; }
    const RModulePresentation& target() const { return target_; }
    const FreeMap& matrix() const { return matrix_; }

    static PresentedMap zero_into(const RModulePresentation& target);
    static PresentedMap zero_from(const RModulePresentation& source);

    // For maps whose well-definedness is structural (tensored resolution
    // differentials); skips the relation-carrying check.
    static PresentedMap trusted(RModulePresentation source, RModulePresentation target,
                                FreeMap matrix);

private:
    struct Trusted {};
    PresentedMap(Trusted, RModulePresentation source, RModulePresentation target,
                 FreeMap matrix);

    RModulePresentation source_, target_;
    FreeMap matrix_;
};

struct HomologyResult {
    RModulePresentation presentation;
    ExtNat length;
    bool origin_supported;
};

struct LengthInfo {
    ExtNat length;
    bool origin_supported;
};

// Length of an R-module as the k-dimension over Q of its presentation with
// f adjoined to the relations, plus the support-at-origin test.
LengthInfo length_info(const RModulePresentation& M);

// Homology ker(beta)/im(alpha) at the middle module of
// W --alpha--> X --beta--> Y, as a presented subquotient.
HomologyResult subquotient_homology(const PresentedMap& alpha, const PresentedMap& beta);

// Tor_R^i(M, N) computed from a resolution of M.
HomologyResult tor(const RResolution& resolution_of_M, const RModulePresentation& N,
                   std::size_t i);
HomologyResult tor(const RModulePresentation& M, const RModulePresentation& N,
                   std::size_t i, int max_steps = 0);

struct StableTor {
    std::uint64_t even_length = 0;
    std::uint64_t odd_length = 0;
    // Stabilization index for matrix-factorization runs; the supplied window
    // start for index-window runs.
    int witness_index = 0;
    bool periodicity_verified = false;
    bool used_fallback = false;
};

struct TorOptions {
    int max_steps = 0;  // 0: default bound for the ring
    std::optional<int> assume_stable_at;
};

// Stable even/odd Tor lengths with a periodicity witness (values at two
// consecutive stable indices equal the values two steps later).
StableTor stable_tor_lengths(const RModulePresentation& M, const RModulePresentation& N,
                             const TorOptions& opts = {});

}  // namespace htheta
