#pragma once

#include <cstdint>
#include <vector>

#include "htheta/poly.hpp"

namespace htheta {

struct ModTerm {
    std::uint32_t comp;
    Monomial mon;
    Coeff coeff;
};

// Element of a free module Q^rank in canonical form: terms strictly
// descending in the position-over-term order (component 0 highest).
class FreeElement {
public:
    FreeElement(RingPtr ring, std::uint32_t rank) : ring_(std::move(ring)), rank_(rank) {}

    static FreeElement zero(RingPtr ring, std::uint32_t rank) {
        return FreeElement(std::move(ring), rank);
    }
    static FreeElement basis_vector(RingPtr ring, std::uint32_t rank, std::uint32_t comp);
    static FreeElement from_component(const Polynomial& p, std::uint32_t rank,
                                      std::uint32_t comp);
    static FreeElement from_terms(RingPtr ring, std::uint32_t rank,
                                  std::vector<ModTerm> terms);

    const RingPtr& ring() const { return ring_; }
    std::uint32_t rank() const { return rank_; }
    const std::vector<ModTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    const ModTerm& leading() const;

    FreeElement operator+(const FreeElement& o) const;
    FreeElement operator-(const FreeElement& o) const;
    FreeElement operator-() const;
    FreeElement times_term(const Monomial& m, const Coeff& c) const;
    FreeElement times_poly(const Polynomial& p) const;
    // In-place this -= g * (m, c); the reduction step of the division loop.
    void sub_times_term_inplace(const FreeElement& g, const Monomial& m, const Coeff& c);
    // Removes and returns the leading term.
    ModTerm take_leading();
    FreeElement scale(const Coeff& c) const { return times_term(Monomial(ring_->nvars()), c); }
    // Monic normalization: divide by the leading coefficient.
    FreeElement monic() const;

    Polynomial component(std::uint32_t comp) const;

    bool operator==(const FreeElement& o) const;

    std::string to_string() const;

private:
    RingPtr ring_;
    std::uint32_t rank_;
    std::vector<ModTerm> terms_;
};

// A matrix of ring elements representing a map of free modules. Columns act
// on generators of the source. The interpretation flag records whether
// entries are raw Q-polynomials or normal forms modulo the hypersurface
// equation.
class FreeMap {
public:
    enum class Interp { over_Q, over_R };

    FreeMap(RingPtr ring, std::uint32_t rows, std::uint32_t cols,
            Interp interp = Interp::over_Q);
    FreeMap(RingPtr ring, std::uint32_t rows, std::uint32_t cols,
            std::vector<Polynomial> row_major, Interp interp = Interp::over_Q);

    static FreeMap identity(RingPtr ring, std::uint32_t n);
    static FreeMap from_columns(RingPtr ring, std::uint32_t rows,
                                const std::vector<FreeElement>& cols,
                                Interp interp = Interp::over_Q);

    const RingPtr& ring() const { return ring_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    Interp interp() const { return interp_; }
    FreeMap with_interp(Interp i) const {
        FreeMap m = *this;
        m.interp_ = i;
        return m;
    }
    // The stored normal-form representatives reinterpreted over Q.
    FreeMap lift() const { return with_interp(Interp::over_Q); }

    const Polynomial& entry(std::uint32_t i, std::uint32_t j) const;
    void set_entry(std::uint32_t i, std::uint32_t j, Polynomial p);

    FreeElement column(std::uint32_t j) const;
    std::vector<FreeElement> columns() const;

    bool is_zero() const;
    bool is_identity() const;
    // True when every entry is a constant polynomial.
    bool is_constant() const;

    FreeMap operator*(const FreeMap& o) const;
    FreeMap operator+(const FreeMap& o) const;
    FreeMap operator-() const;
    FreeMap scale(const Polynomial& p) const;
    FreeMap transpose() const;

    FreeMap hstack(const FreeMap& o) const;
    FreeMap take_rows(std::uint32_t first_k) const;
    FreeMap drop_row(std::uint32_t i) const;
    FreeMap drop_col(std::uint32_t j) const;
    static FreeMap block_diag(const FreeMap& a, const FreeMap& b);
    // m (x) I_n: entry ((i*n+s),(j*n+t)) = entry(i,j) * delta(s,t).
    FreeMap kron_identity(std::uint32_t n) const;

    bool operator==(const FreeMap& o) const;

    std::string to_string() const;

private:
    RingPtr ring_;
    std::uint32_t rows_, cols_;
    std::vector<Polynomial> entries_;  // row-major
    Interp interp_;
};

}  // namespace htheta
