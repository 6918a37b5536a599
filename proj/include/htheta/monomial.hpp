#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "htheta/errors.hpp"

namespace htheta {

// A power product x0^e0 * ... * x{n-1}^e{n-1}, stored as its exponent vector.
class Monomial {
public:
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t exponent(std::size_t i) const { return e_[i]; }
    const std::vector<std::uint32_t>& exponents() const { return e_; }

    std::uint32_t total_degree() const {
        return std::accumulate(e_.begin(), e_.end(), std::uint32_t{0});
    }

    bool is_one() const {
        for (auto x : e_)
            if (x) return false;
        return true;
    }

    Monomial times(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    Monomial divided_by(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (o.e_[i] > e_[i]) throw InternalError("monomial division not exact");
            r.e_[i] -= o.e_[i];
        }
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (o.e_[i] > r.e_[i]) r.e_[i] = o.e_[i];
        return r;
    }

    static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1) {
        Monomial m(nvars);
        m.e_[i] = power;
        return m;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
    std::vector<std::uint32_t> e_;
};

enum class OrderKind { grevlex, lex };

// Total multiplicative well-order on monomials, extended to free-module
// terms position-over-term with component 0 highest.
class MonomialOrder {
public:
    explicit MonomialOrder(OrderKind k = OrderKind::grevlex) : kind_(k) {}

    OrderKind kind() const { return kind_; }

    // -1, 0, +1 for a < b, a == b, a > b.
    int compare(const Monomial& a, const Monomial& b) const {
        if (kind_ == OrderKind::grevlex) {
            auto da = a.total_degree(), db = b.total_degree();
            if (da != db) return da < db ? -1 : 1;
            for (std::size_t i = a.nvars(); i-- > 0;) {
                if (a.exponent(i) != b.exponent(i))
                    return a.exponent(i) < b.exponent(i) ? 1 : -1;
            }
            return 0;
        }
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            if (a.exponent(i) != b.exponent(i))
                return a.exponent(i) > b.exponent(i) ? 1 : -1;
        }
        return 0;
    }

    int compare(std::uint32_t comp_a, const Monomial& a,
                std::uint32_t comp_b, const Monomial& b) const {
        if (comp_a != comp_b) return comp_a < comp_b ? 1 : -1;
        return compare(a, b);
    }

    bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_; }

private:
    OrderKind kind_;
};

}  // namespace htheta
