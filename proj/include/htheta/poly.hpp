#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "htheta/field.hpp"
#include "htheta/monomial.hpp"

namespace htheta {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// The ambient polynomial ring k[x0,...,xn] with a fixed monomial order.
class PolyRing {
public:
    PolyRing(CoefficientField field, std::vector<std::string> variables,
             MonomialOrder order = MonomialOrder(OrderKind::grevlex));

    static RingPtr make(CoefficientField field, std::vector<std::string> variables,
                        MonomialOrder order = MonomialOrder(OrderKind::grevlex)) {
        return std::make_shared<const PolyRing>(std::move(field), std::move(variables), order);
    }

    const CoefficientField& field() const { return field_; }
    const MonomialOrder& order() const { return order_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::string& var_name(std::size_t i) const { return vars_[i]; }
    const std::vector<std::string>& var_names() const { return vars_; }
    std::optional<std::size_t> var_index(std::string_view name) const;

    bool operator==(const PolyRing& o) const {
        return field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_;
    }

private:
    CoefficientField field_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

struct PolyTerm {
    Monomial mon;
    Coeff coeff;
};

// Sparse multivariate polynomial in canonical form: terms strictly
// descending in the ring's order, no zero coefficients.
class Polynomial {
public:
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
    static Polynomial constant(RingPtr ring, const Coeff& c);
    static Polynomial variable(RingPtr ring, std::size_t i, std::uint32_t power = 1);
    static Polynomial term(RingPtr ring, Monomial m, const Coeff& c);
    // Builds canonical form from arbitrary (possibly unsorted, repeated) terms.
    static Polynomial from_terms(RingPtr ring, std::vector<PolyTerm> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<PolyTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_[0].mon.is_one(); }
    // Coefficient of the monomial 1.
    Coeff constant_term() const;
    const PolyTerm& leading_term() const;
    std::uint32_t total_degree() const;  // 0 for the zero polynomial

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial times_term(const Monomial& m, const Coeff& c) const;
    Polynomial scale(const Coeff& c) const { return times_term(Monomial(ring_->nvars()), c); }
    Polynomial pow(std::uint32_t n) const;

    Polynomial derivative(std::size_t var) const;

    bool operator==(const Polynomial& o) const;

    std::string to_string() const;

private:
    void check_same_ring(const Polynomial& o) const;

    RingPtr ring_;
    std::vector<PolyTerm> terms_;
};

// Reinterprets p in another ring with the same coefficient field, sending
// variable i to target variable var_map[i].
Polynomial transplant(const Polynomial& p, RingPtr target,
                      const std::vector<std::size_t>& var_map);

// Recursive-descent parser for the canonical polynomial grammar:
// integer (or n/d rational) literals, variables, + - * ^ ( ), with ^ taking a
// nonnegative integer literal and applying to a variable or parenthesized
// expression. Juxtaposition is not multiplication.
Polynomial parse_poly(std::string_view text, RingPtr ring);

}  // namespace htheta
