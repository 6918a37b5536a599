#include "htheta/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace htheta {

PolyRing::PolyRing(CoefficientField field, std::vector<std::string> variables,
                   MonomialOrder order)
    : field_(field), vars_(std::move(variables)), order_(order) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty()) throw InvalidParameter("empty variable name");
        if (!seen.insert(v).second) throw InvalidParameter("duplicate variable name '" + v + "'");
    }
}

std::optional<std::size_t> PolyRing::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

Polynomial Polynomial::constant(RingPtr ring, const Coeff& c) {
    return term(std::move(ring), Monomial(ring ? ring->nvars() : 0), c);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i, std::uint32_t power) {
    auto n = ring->nvars();
    auto one = ring->field().one();
    return term(std::move(ring), Monomial::variable(n, i, power), one);
}

Polynomial Polynomial::term(RingPtr ring, Monomial m, const Coeff& c) {
    Polynomial p(std::move(ring));
    if (!p.ring_->field().is_zero(c)) p.terms_.push_back({std::move(m), c});
    return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<PolyTerm> terms) {
    const auto& ord = ring->order();
    const auto& K = ring->field();
    std::sort(terms.begin(), terms.end(), [&](const PolyTerm& a, const PolyTerm& b) {
        return ord.compare(a.mon, b.mon) > 0;
    });
    Polynomial p(std::move(ring));
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mon == t.mon) {
            p.terms_.back().coeff = K.add(p.terms_.back().coeff, t.coeff);
            if (K.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        } else if (!K.is_zero(t.coeff)) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Coeff Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mon.is_one()) return terms_.back().coeff;
    return ring_->field().zero();
}

const PolyTerm& Polynomial::leading_term() const {
    if (terms_.empty()) throw InternalError("leading_term of zero polynomial");
    return terms_[0];
}

std::uint32_t Polynomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mon.total_degree());
    return d;
}

void Polynomial::check_same_ring(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) throw RingMismatch("polynomial operands");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_ring(o);
    const auto& ord = ring_->order();
    const auto& K = ring_->field();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ord.compare(terms_[i].mon, o.terms_[j].mon);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Coeff s = K.add(terms_[i].coeff, o.terms_[j].coeff);
            if (!K.is_zero(s)) r.terms_.push_back({terms_[i].mon, s});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Polynomial Polynomial::operator-() const {
    const auto& K = ring_->field();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mon, K.neg(t.coeff)});
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::times_term(const Monomial& m, const Coeff& c) const {
    const auto& K = ring_->field();
    Polynomial r(ring_);
    if (K.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    // A multiplicative order keeps the sorting intact under term products.
    for (const auto& t : terms_) {
        Coeff p = K.mul(t.coeff, c);
        if (!K.is_zero(p)) r.terms_.push_back({t.mon.times(m), std::move(p)});
    }
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_ring(o);
    Polynomial acc(ring_);
    for (const auto& t : o.terms_) acc = acc + times_term(t.mon, t.coeff);
    return acc;
}

Polynomial Polynomial::pow(std::uint32_t n) const {
    Polynomial result = Polynomial::constant(ring_, ring_->field().one());
    Polynomial base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= ring_->nvars()) throw InvalidParameter("derivative variable out of range");
    const auto& K = ring_->field();
    std::vector<PolyTerm> out;
    for (const auto& t : terms_) {
        auto e = t.mon.exponent(var);
        if (e == 0) continue;
        Coeff c = K.mul(t.coeff, K.from_long(static_cast<long>(e)));
        if (K.is_zero(c)) continue;  // characteristic p kills p | e
        auto exps = t.mon.exponents();
        exps[var] -= 1;
        out.push_back({Monomial(std::move(exps)), std::move(c)});
    }
    return from_terms(ring_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mon == o.terms_[i].mon) || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

/******** printing ********/

namespace {

std::string monomial_string(const PolyRing& ring, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        auto e = m.exponent(i);
        if (!e) continue;
        if (!first) os << "*";
        os << ring.var_name(i);
        if (e > 1) os << "^" << e;
        first = false;
    }
    return os.str();
}

}  // namespace

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    const auto& K = ring_->field();
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Coeff c = t.coeff;
        bool negative = sgn(c) < 0;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        if (negative) c = K.neg(c);
        std::string mono = t.mon.is_one() ? std::string() : monomial_string(*ring_, t.mon);
        if (mono.empty()) {
            os << K.to_string(c);
        } else if (K.is_one(c)) {
            os << mono;
        } else {
            os << K.to_string(c) << "*" << mono;
        }
        first = false;
    }
    return os.str();
}

Polynomial transplant(const Polynomial& p, RingPtr target,
                      const std::vector<std::size_t>& var_map) {
    if (!(p.ring()->field() == target->field()))
        throw RingMismatch("transplant requires the same coefficient field");
    if (var_map.size() != p.ring()->nvars())
        throw InvalidParameter("transplant variable map size");
    std::vector<PolyTerm> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        std::vector<std::uint32_t> exps(target->nvars(), 0);
        for (std::size_t i = 0; i < var_map.size(); ++i) {
            if (var_map[i] >= target->nvars())
                throw InvalidParameter("transplant variable index out of range");
            exps[var_map[i]] += t.mon.exponent(i);
        }
        out.push_back({Monomial(std::move(exps)), t.coeff});
    }
    return Polynomial::from_terms(std::move(target), std::move(out));
}

/******** parsing ********/

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    RingPtr ring;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (peek_is(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(pos, msg); }

    bool at_digit() {
        skip_ws();
        return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
    }

    bool at_ident() {
        skip_ws();
        return pos < text.size() &&
               (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_');
    }

    std::string read_int_digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected integer literal");
        return std::string(text.substr(start, pos - start));
    }

    std::uint32_t read_exponent() {
        skip_ws();
        if (pos < text.size() && text[pos] == '-') throw NegativeExponent(pos);
        if (!at_digit()) fail("exponent must be a nonnegative integer literal");
        std::string d = read_int_digits();
        if (d.size() > 6) fail("exponent literal too large");
        return static_cast<std::uint32_t>(std::stoul(d));
    }

    std::string read_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        return std::string(text.substr(start, pos - start));
    }

    // base := INT ('/' INT)? | VAR | '(' expr ')'; reports whether the base
    // may legally carry an exponent (variables and parenthesized expressions).
    Polynomial parse_base(bool& may_pow) {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (accept('(')) {
            Polynomial inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            may_pow = true;
            return inner;
        }
        if (at_digit()) {
            std::string num = read_int_digits();
            std::string lit = num;
            // A '/' between integer literals forms an exact rational literal.
            std::size_t save = pos;
            skip_ws();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                if (!at_digit()) {
                    pos = save;
                } else {
                    lit += "/" + read_int_digits();
                }
            }
            may_pow = false;
            return Polynomial::constant(ring, ring->field().from_string(lit));
        }
        if (at_ident()) {
            std::size_t start = pos;
            std::string name = read_ident();
            auto idx = ring->var_index(name);
            if (!idx) throw UnknownVariable(start, name);
            may_pow = true;
            return Polynomial::variable(ring, *idx);
        }
        fail("expected integer, variable, or '('");
    }

    Polynomial parse_factor() {
        if (accept('-')) return -parse_factor();
        bool may_pow = false;
        Polynomial base = parse_base(may_pow);
        if (peek_is('^')) {
            if (!may_pow) fail("'^' applies to a variable or parenthesized expression");
            ++pos;
            return base.pow(read_exponent());
        }
        return base;
    }

    Polynomial parse_term() {
        Polynomial p = parse_factor();
        while (accept('*')) p = p * parse_factor();
        return p;
    }

    Polynomial parse_expr() {
        Polynomial p = parse_term();
        for (;;) {
            if (accept('+'))
                p = p + parse_term();
            else if (accept('-'))
                p = p - parse_term();
            else
                return p;
        }
    }
};

}  // namespace

Polynomial parse_poly(std::string_view text, RingPtr ring) {
    Parser parser{text, 0, std::move(ring)};
    Polynomial p = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return p;
}

}  // namespace htheta
