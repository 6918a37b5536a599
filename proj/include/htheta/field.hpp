#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "htheta/errors.hpp"

namespace htheta {

// Exact field element. Rationals are kept canonical by GMP (lowest terms,
// positive denominator); prime-field elements are integer residues in [0,p).
using Coeff = mpq_class;

enum class FieldKind { rationals, prime_field };

// The coefficient field: either Q or F_p for a prime p. All element algebra
// goes through this class so that polynomial code is field-agnostic.
class CoefficientField {
public:
    static CoefficientField rationals() { return CoefficientField(FieldKind::rationals, 0); }
    static CoefficientField prime_field(std::uint64_t p);

    FieldKind kind() const { return kind_; }
    std::uint64_t characteristic() const { return p_; }  // 0 for Q
    // Both Q and F_p are perfect.
    bool is_perfect() const { return true; }

    Coeff zero() const { return Coeff(0); }
    Coeff one() const { return Coeff(1); }
    Coeff from_long(long v) const;
    // Accepts "n" or "n/d" (d != 0; for F_p, p must not divide d).
    Coeff from_string(const std::string& s) const;
    // Canonicalizes an arbitrary rational into this field.
    Coeff from_rational(const Coeff& q) const;

    Coeff add(const Coeff& a, const Coeff& b) const;
    Coeff sub(const Coeff& a, const Coeff& b) const;
    Coeff mul(const Coeff& a, const Coeff& b) const;
    Coeff neg(const Coeff& a) const;
    Coeff inv(const Coeff& a) const;
    Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }

    bool is_zero(const Coeff& a) const { return sgn(a) == 0; }
    bool is_one(const Coeff& a) const { return a == 1; }
    bool equal(const Coeff& a, const Coeff& b) const { return a == b; }

    std::string to_string(const Coeff& a) const;

    bool operator==(const CoefficientField& o) const {
        return kind_ == o.kind_ && p_ == o.p_;
    }

private:
    CoefficientField(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
    Coeff mod_p(const mpz_class& z) const;

    FieldKind kind_;
    std::uint64_t p_;
};

}  // namespace htheta
