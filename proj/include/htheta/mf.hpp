#pragma once

#include "htheta/homology.hpp"

namespace htheta {

// A pair (A, B) of square matrices over Q with A*B = B*A = f*I, validated on
// construction. coker(A) is a maximal Cohen-Macaulay R-module.
class MatrixFactorization {
public:
    MatrixFactorization(HRingPtr ring, FreeMap a, FreeMap b);

    const HRingPtr& ring() const { return ring_; }
    std::uint32_t size() const { return a_.rows(); }
    const FreeMap& a() const { return a_; }
    const FreeMap& b() const { return b_; }

    RModulePresentation cokernel(std::string label = "") const;

    // (B, A); its cokernel is the first syzygy of coker(A).
    MatrixFactorization transpose() const;
    static MatrixFactorization direct_sum(const MatrixFactorization& x,
                                          const MatrixFactorization& y);
    // Produces a factorization of f + u*v over Q[u,v] of doubled size.
    MatrixFactorization knorrer_split(const std::string& u, const std::string& v) const;

private:
    HRingPtr ring_;
    FreeMap a_, b_;
};

// Square matrix over the localization Q[1/f]; each entry is a numerator
// together with the f-exponent of its denominator. Equality clears
// denominators to the larger exponent.
class LocalizedMatrix {
public:
    struct Entry {
        Polynomial num;
        std::uint32_t fexp = 0;
    };

    LocalizedMatrix(HRingPtr ring, std::uint32_t n);
    static LocalizedMatrix from_map(HRingPtr ring, const FreeMap& m, std::uint32_t fexp = 0);
    static LocalizedMatrix identity(HRingPtr ring, std::uint32_t n);

    const HRingPtr& ring() const { return ring_; }
    std::uint32_t size() const { return n_; }
    const Entry& entry(std::uint32_t i, std::uint32_t j) const;
    void set_entry(std::uint32_t i, std::uint32_t j, Entry e);

    LocalizedMatrix operator*(const LocalizedMatrix& o) const;
    bool operator==(const LocalizedMatrix& o) const;

    static LocalizedMatrix block_diag3(const LocalizedMatrix& a, const LocalizedMatrix& b,
                                       const LocalizedMatrix& c);

    std::string to_string() const;

private:
    HRingPtr ring_;
    std::uint32_t n_;
    std::vector<Entry> entries_;
};

// The conjugation scaffolding behind the star pairing: D(A) = diag(A, A^-1, I)
// and D'(A) = diag(A, I, A^-1) over Q[1/f], with the signed swap P satisfying
// P D(A) P^-1 = D'(A) exactly. A^-1 is represented as B/f, never by solving.
struct StarScaffoldReport {
    LocalizedMatrix d;        // D(A)
    LocalizedMatrix d_prime;  // D'(A)
    LocalizedMatrix p;        // signed permutation, its own inverse
    bool identity_holds = false;
};
StarScaffoldReport star_scaffold(const FreeMap& a, const MatrixFactorization& mf);

// The mirror image pair E = (0 -> coker A -> R^m -> coker B -> 0) and
// F = (0 -> coker B -> R^m -> coker A -> 0), plus the two three-term rows of
// the associated double short exact sequence; verifies zero composites and
// vanishing homology at every spot.
struct MirrorReport {
    bool e_exact = false;
    bool f_exact = false;
    bool row1_exact = false;
    bool row2_exact = false;
    int spots_checked = 0;
    bool all_exact() const { return e_exact && f_exact && row1_exact && row2_exact; }
};
MirrorReport mirror_double_ses(const MatrixFactorization& mf);

}  // namespace htheta
