#include "htheta/field.hpp"

namespace htheta {

CoefficientField CoefficientField::prime_field(std::uint64_t p) {
    mpz_class z(static_cast<unsigned long>(p));
    if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw InvalidParameter("prime_field modulus " + std::to_string(p) + " is not prime");
    return CoefficientField(FieldKind::prime_field, p);
}

Coeff CoefficientField::mod_p(const mpz_class& z) const {
    mpz_class r, p(static_cast<unsigned long>(p_));
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());  // result in [0,p)
    return Coeff(r);
}

Coeff CoefficientField::from_long(long v) const {
    if (kind_ == FieldKind::rationals) return Coeff(v);
    return mod_p(mpz_class(v));
}

Coeff CoefficientField::from_rational(const Coeff& q) const {
    if (kind_ == FieldKind::rationals) return q;
    mpz_class den = q.get_den();
    mpz_class p(static_cast<unsigned long>(p_));
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw InvalidParameter("denominator divisible by the characteristic " +
                               std::to_string(p_));
    return mod_p(q.get_num() * dinv);
}

Coeff CoefficientField::from_string(const std::string& s) const {
    Coeff q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw InvalidParameter("cannot parse coefficient '" + s + "'");
    q.canonicalize();
    return from_rational(q);
}

Coeff CoefficientField::add(const Coeff& a, const Coeff& b) const {
    if (kind_ == FieldKind::rationals) return a + b;
    return mod_p(mpz_class(a.get_num() + b.get_num()));
}

Coeff CoefficientField::sub(const Coeff& a, const Coeff& b) const {
    if (kind_ == FieldKind::rationals) return a - b;
    return mod_p(mpz_class(a.get_num() - b.get_num()));
}

Coeff CoefficientField::mul(const Coeff& a, const Coeff& b) const {
    if (kind_ == FieldKind::rationals) return a * b;
    return mod_p(mpz_class(a.get_num() * b.get_num()));
}

Coeff CoefficientField::neg(const Coeff& a) const {
    if (kind_ == FieldKind::rationals) return -a;
    return mod_p(mpz_class(-a.get_num()));
}

Coeff CoefficientField::inv(const Coeff& a) const {
    if (is_zero(a)) throw InvalidParameter("division by zero");
    if (kind_ == FieldKind::rationals) return Coeff(1) / a;
    mpz_class p(static_cast<unsigned long>(p_)), r;
    mpz_class num = a.get_num();
    if (mpz_invert(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
        throw InvalidParameter("element not invertible mod " + std::to_string(p_));
    return Coeff(r);
}

std::string CoefficientField::to_string(const Coeff& a) const {
    return a.get_str();
}

}  // namespace htheta
