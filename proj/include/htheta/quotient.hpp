#pragma once

#include <memory>
#include <optional>
#include <string>

#include "htheta/groebner.hpp"

namespace htheta {

class HypersurfaceRing;
using HRingPtr = std::shared_ptr<const HypersurfaceRing>;

// The hypersurface ring R = Q/f for a nonzero f with f(0) = 0. Q is a
// domain, so f is automatically a non-zero-divisor.
class HypersurfaceRing {
public:
    explicit HypersurfaceRing(Polynomial f);

    static HRingPtr make(Polynomial f) {
        return std::make_shared<const HypersurfaceRing>(std::move(f));
    }

    const RingPtr& ambient() const { return ambient_; }
    const Polynomial& f() const { return f_; }
    const GroebnerBasis& gb_f() const { return gb_f_; }
    // Krull dimension of R: one less than the number of variables.
    std::size_t dim() const { return ambient_->nvars() - 1; }

    // Normal form modulo the principal ideal (f).
    Polynomial reduce(const Polynomial& p) const { return normal_form(p, gb_f_); }

    bool operator==(const HypersurfaceRing& o) const {
        return same_ring(ambient_, o.ambient_) && f_ == o.f_;
    }

private:
    RingPtr ambient_;
    Polynomial f_;
    GroebnerBasis gb_f_;
};

inline bool same_hring(const HRingPtr& a, const HRingPtr& b) {
    return a == b || (a && b && *a == *b);
}

// A finitely presented R-module, the cokernel of a FreeMap whose entries are
// kept in normal form modulo (f). The free module of rank r is presented by
// an r x 0 matrix.
class RModulePresentation {
public:
    RModulePresentation(HRingPtr ring, const FreeMap& presentation,
                        std::string label = "");

    static RModulePresentation free_module(HRingPtr ring, std::uint32_t rank,
                                           std::string label = "");
    static RModulePresentation zero_module(HRingPtr ring);
    // R/(g_1,...,g_k) as a cyclic module.
    static RModulePresentation cyclic(HRingPtr ring, const std::vector<Polynomial>& gens,
                                      std::string label = "");
    static RModulePresentation direct_sum(const RModulePresentation& a,
                                          const RModulePresentation& b);
    // M^n with generators grouped by copy.
    RModulePresentation power(std::uint32_t n) const;

    const HRingPtr& ring() const { return ring_; }
    const FreeMap& presentation() const { return pres_; }
    std::uint32_t rank() const { return pres_.rows(); }
    const std::string& label() const { return label_; }

    // Relations of the underlying Q-module: presentation columns plus f*e_j.
    std::vector<FreeElement> q_relations() const;
    // Groebner basis of the relations, computed once per presentation and
    // shared across copies (idempotent fill, safe concurrent reads).
    const GroebnerBasis& relations_gb() const;

    bool operator==(const RModulePresentation& o) const {
        return same_hring(ring_, o.ring_) && pres_ == o.pres_;
    }

private:
    struct GbCache;

    HRingPtr ring_;
    FreeMap pres_;
    std::string label_;
    std::shared_ptr<GbCache> gb_cache_;
};

// Entry-wise normal form modulo (f).
FreeMap r_normalize(const FreeMap& m, const HypersurfaceRing& ring);

// Gaussian elimination at constant-unit pivots, deleting the pivot row and
// column; preserves the cokernel. Throws NonConstantUnit on an entry with a
// nonzero constant term that is not constant.
FreeMap minimalize(const FreeMap& m, const HypersurfaceRing& ring);

// Generators of ker(d: R^c -> R^r), computed over Q from the block
// [d | f*I]; no pruning, so the result pairs with d as given.
FreeMap r_kernel_generators(const FreeMap& d, const HypersurfaceRing& ring);

// The next differential of a free resolution over R: kernel generators
// followed by unit-pivot pruning against (a copy of) d.
FreeMap r_syzygy(const FreeMap& d, const HypersurfaceRing& ring);

// A free resolution of M over R with two-periodicity detection. When
// stabilized, the lifted pair (a, b) = (d_{s+1}, d_{s+2}) satisfies
// a*b = b*a = f*I exactly over Q, and differentials extend two-periodically
// past the computed range.
class RResolution {
public:
    struct Stabilization {
        int index;      // s
        FreeMap a, b;   // lifted to Q; empty (0 x 0) for the trivial case
    };

    RResolution(RModulePresentation module) : module_(std::move(module)) {}

    const RModulePresentation& module() const { return module_; }
    const std::vector<FreeMap>& computed_differentials() const { return diffs_; }
    const std::optional<Stabilization>& stabilization() const { return stab_; }

    // d_i for i >= 1, extending two-periodically when stabilized.
    FreeMap differential(std::size_t i) const;
    // rank of F_i.
    std::uint32_t free_rank(std::size_t i) const;

    friend RResolution resolve_window(const RModulePresentation& M, int steps,
                                      bool require_stabilization, bool minimalize_first);

private:
    RModulePresentation module_;
    std::vector<FreeMap> diffs_;
    std::optional<Stabilization> stab_;
};

// Resolves until a matrix factorization stabilizes the tail; throws
// NoStabilization when max_steps is exhausted.
RResolution resolve(const RModulePresentation& M, int max_steps);
// Default bound: 2 * (#variables + 2).
int default_max_steps(const HypersurfaceRing& ring);

// Computes a fixed number of differentials without requiring stabilization
// (used by the index-window fallback and by oracle tests). When
// minimalize_first is false the initial presentation is used as-is.
RResolution resolve_window(const RModulePresentation& M, int steps,
                           bool require_stabilization = false,
                           bool minimalize_first = true);

// Standard block presentation of M (x)_R N.
RModulePresentation tensor_presentations(const RModulePresentation& M,
                                         const RModulePresentation& N);

}  // namespace htheta
