#include "htheta/theta.hpp"

#include <set>

namespace htheta {

ThetaReport theta(const RModulePresentation& M, const RModulePresentation& N,
                  const ThetaOptions& opts) {
    if (!same_hring(M.ring(), N.ring())) throw RingMismatch("theta");
    StableTor st = stable_tor_lengths(M, N, opts);
    ThetaReport r;
    r.even_length = st.even_length;
    r.odd_length = st.odd_length;
    r.value = static_cast<long long>(st.even_length) - static_cast<long long>(st.odd_length);
    r.stabilization_index = st.witness_index;
    r.periodicity_verified = st.periodicity_verified;
    if (st.used_fallback)
        r.hypothesis_notes.push_back(
            "index-window evaluation at i0 = " + std::to_string(st.witness_index) +
            " (no matrix factorization detected; periodicity checked by repetition)");
    return r;
}

SingularityReport jacobian_check(const Polynomial& f) {
    const RingPtr& Q = f.ring();
    const auto& K = Q->field();
    if (f.is_constant()) throw InvalidParameter("jacobian_check needs a nonconstant polynomial");
    if (!K.is_zero(f.constant_term()))
        throw InvalidParameter("jacobian_check needs f(0) = 0");

    SingularityReport rep;
    rep.dim = Q->nvars() - 1;
    rep.dim_even = (rep.dim % 2 == 0);

    std::vector<Polynomial> partials;
    partials.reserve(Q->nvars());
    for (std::size_t v = 0; v < Q->nvars(); ++v) partials.push_back(f.derivative(v));

    std::vector<Polynomial> with_f = partials;
    with_f.push_back(f);

    GroebnerBasis gb_jac = buchberger_ideal(partials, Q);
    GroebnerBasis gb_sing = buchberger_ideal(with_f, Q);

    rep.isolated_at_origin = is_origin_supported(gb_sing, 1);
    rep.milnor_number = is_origin_supported(gb_jac, 1) ? kdim_quotient(gb_jac, 1)
                                                       : ExtNat::infinite();
    rep.tjurina_number = kdim_quotient(gb_sing, 1);

    if (K.characteristic() > 0) {
        auto p = K.characteristic();
        std::set<std::size_t> warned;
        for (const auto& t : f.terms())
            for (std::size_t v = 0; v < Q->nvars(); ++v) {
                auto e = t.mon.exponent(v);
                if (e > 0 && e % p == 0 && warned.insert(v).second)
                    rep.char_warnings.push_back(
                        "characteristic " + std::to_string(p) + " divides the exponent " +
                        std::to_string(e) + " of " + Q->var_name(v) +
                        "; the derivative degenerates");
            }
    }
    return rep;
}

VanishingPrediction vanishing_predicted(const SingularityReport& report) {
    VanishingPrediction out;
    if (!report.isolated_at_origin) {
        out.predicted = false;
        out.justification = "singular locus is not supported at the origin alone";
        return out;
    }
    if (!report.dim_even) {
        out.predicted = false;
        out.justification = "dim R = " + std::to_string(report.dim) +
                            " is odd; the vanishing theorem needs even dimension";
        return out;
    }
    out.predicted = true;
    out.justification = "isolated singularity at the origin, dim R = " +
                        std::to_string(report.dim) + " even, coefficient field perfect";
    return out;
}

}  // namespace htheta
