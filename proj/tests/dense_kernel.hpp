#pragma once

// Test-only oracle: kernel elements of a polynomial matrix found by a dense
// linear solve over the coefficient space of bounded degree. Independent of
// the Groebner/syzygy path it is used to check.

#include <vector>

#include "htheta/freemod.hpp"

namespace htheta::testing {

inline void enumerate_monomials(std::size_t nvars, std::uint32_t max_deg,
                                std::vector<std::uint32_t>& cur, std::size_t var,
                                std::uint32_t used, std::vector<Monomial>& out) {
    if (var == nvars) {
        out.push_back(Monomial(cur));
        return;
    }
    for (std::uint32_t e = 0; e + used <= max_deg; ++e) {
        cur[var] = e;
        enumerate_monomials(nvars, max_deg, cur, var + 1, used + e, out);
        cur[var] = 0;
    }
}

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t max_deg) {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> cur(nvars, 0);
    enumerate_monomials(nvars, max_deg, cur, 0, 0, out);
    return out;
}

// All kernel vectors of m with polynomial entries of degree <= D, as a basis
// of the corresponding linear space, found by exact Gaussian elimination.
inline std::vector<FreeElement> dense_kernel_basis(const FreeMap& m, std::uint32_t D) {
    const RingPtr& ring = m.ring();
    std::size_t nvars = ring->nvars();
    std::uint32_t maxdeg = 0;
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        for (std::uint32_t j = 0; j < m.cols(); ++j)
            maxdeg = std::max(maxdeg, m.entry(i, j).total_degree());

    std::vector<Monomial> unknowns = monomials_up_to(nvars, D);
    std::vector<Monomial> eq_monos = monomials_up_to(nvars, D + maxdeg);
    auto eq_index = [&](const Monomial& mon) -> std::size_t {
        for (std::size_t k = 0; k < eq_monos.size(); ++k)
            if (eq_monos[k] == mon) return k;
        throw InternalError("equation monomial not found");
    };

    std::size_t ncols = m.cols() * unknowns.size();
    std::size_t nrows = m.rows() * eq_monos.size();
    std::vector<std::vector<Coeff>> mat(nrows, std::vector<Coeff>(ncols, Coeff(0)));

    // Row (i, mu): coefficient of monomial mu in sum_j m(i,j) * v_j.
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        for (std::uint32_t j = 0; j < m.cols(); ++j)
            for (const auto& t : m.entry(i, j).terms())
                for (std::size_t u = 0; u < unknowns.size(); ++u) {
                    Monomial prod = t.mon.times(unknowns[u]);
                    mat[i * eq_monos.size() + eq_index(prod)][j * unknowns.size() + u] +=
                        t.coeff;
                }

    // Reduced row echelon form.
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        std::size_t piv = row;
        while (piv < nrows && sgn(mat[piv][col]) == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(mat[piv], mat[row]);
        Coeff d = mat[row][col];
        for (auto& x : mat[row]) x /= d;
        for (std::size_t r2 = 0; r2 < nrows; ++r2) {
            if (r2 == row || sgn(mat[r2][col]) == 0) continue;
            Coeff c = mat[r2][col];
            for (std::size_t k = 0; k < ncols; ++k) mat[r2][k] -= c * mat[row][k];
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<char> is_pivot(ncols, 0);
    for (auto c : pivot_col) is_pivot[c] = 1;

    std::vector<FreeElement> basis;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Coeff> v(ncols, Coeff(0));
        v[free_col] = Coeff(1);
        for (std::size_t r2 = 0; r2 < pivot_col.size(); ++r2)
            v[pivot_col[r2]] = -mat[r2][free_col];
        std::vector<ModTerm> terms;
        for (std::uint32_t j = 0; j < m.cols(); ++j)
            for (std::size_t u = 0; u < unknowns.size(); ++u) {
                const Coeff& c = v[j * unknowns.size() + u];
                if (sgn(c) != 0) terms.push_back({j, unknowns[u], c});
            }
        FreeElement e = FreeElement::from_terms(ring, m.cols(), std::move(terms));
        if (!e.is_zero()) basis.push_back(std::move(e));
    }
    return basis;
}

}  // namespace htheta::testing
