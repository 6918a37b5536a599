#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "htheta/extnat.hpp"
#include "htheta/freemod.hpp"

namespace htheta {

// A reduced Groebner basis of a submodule of Q^rank: monic generators, no
// generator's leading term divides another's, tails fully reduced.
class GroebnerBasis {
public:
    GroebnerBasis(RingPtr ring, std::uint32_t rank, std::vector<FreeElement> gens);

    const RingPtr& ring() const { return ring_; }
    std::uint32_t rank() const { return rank_; }
    const std::vector<FreeElement>& generators() const { return gens_; }

private:
    RingPtr ring_;
    std::uint32_t rank_;
    std::vector<FreeElement> gens_;
};

// Buchberger's algorithm with the normal selection strategy and the
// coprimality and chain criteria; returns the reduced basis.
GroebnerBasis buchberger(const std::vector<FreeElement>& gens, RingPtr ring,
                         std::uint32_t rank);

// Convenience for ideals (rank 1).
GroebnerBasis buchberger_ideal(const std::vector<Polynomial>& gens, RingPtr ring);

// Full normal form: no term of the result is divisible by any leading term
// of the basis; e - result lies in the submodule.
FreeElement normal_form(const FreeElement& e, const GroebnerBasis& gb);
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

// Generators of ker(m: Q^c -> Q^r) by Schreyer's method on the Groebner
// basis of the columns, converted back to the input generators. The result
// has m.cols() rows; m * result == 0 exactly.
FreeMap syzygies(const FreeMap& m);

// If e lies in the submodule spanned by gens, returns polynomial
// coefficients c with e = sum c_j gens_j, else nullopt.
std::optional<std::vector<Polynomial>> express_in_submodule(
    const FreeElement& e, const std::vector<FreeElement>& gens, RingPtr ring,
    std::uint32_t rank);

// A cofactor-tracked basis over a fixed generating set, serving syzygy
// extraction and membership lifts from one Buchberger run.
class SubmoduleWorkspace {
public:
    SubmoduleWorkspace(const std::vector<FreeElement>& gens, RingPtr ring,
                       std::uint32_t rank);
    SubmoduleWorkspace(SubmoduleWorkspace&&) noexcept;
    ~SubmoduleWorkspace();

    // Syzygies of the generating set (rows = #gens).
    FreeMap syzygies_of_generators() const;
    std::optional<std::vector<Polynomial>> express(const FreeElement& e) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Number of standard monomials (component, monomial) not divisible by any
// leading term of gb; INFINITE when unbounded.
ExtNat kdim_quotient(const GroebnerBasis& gb, std::uint32_t rank);

// True iff the quotient is finite dimensional and supported only at the
// origin: every variable acts nilpotently (power L = kdim kills every
// generator).
bool is_origin_supported(const GroebnerBasis& gb, std::uint32_t rank);

}  // namespace htheta
