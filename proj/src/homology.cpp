#include "htheta/homology.hpp"

#include <map>
#include <string>

namespace htheta {

namespace {

// Every column of `mat` must reduce to zero against gb (the relations of a
// target presentation).
bool columns_in_span(const FreeMap& mat, const GroebnerBasis& gb) {
    for (std::uint32_t j = 0; j < mat.cols(); ++j)
        if (!normal_form(mat.column(j), gb).is_zero()) return false;
    return true;
}

}  // namespace

PresentedMap::PresentedMap(RModulePresentation source, RModulePresentation target,
                           FreeMap matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (!same_hring(source_.ring(), target_.ring())) throw RingMismatch("presented map");
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
        throw RankMismatch("presented map matrix shape");
    if (source_.presentation().cols() > 0) {
        FreeMap carried = matrix_.lift() * source_.presentation().lift();
        if (!columns_in_span(carried, target_.relations_gb()))
            throw IllDefinedMap("matrix does not carry source relations into target relations");
    }
}

PresentedMap::PresentedMap(Trusted, RModulePresentation source,
                           RModulePresentation target, FreeMap matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

PresentedMap PresentedMap::trusted(RModulePresentation source, RModulePresentation target,
                                   FreeMap matrix) {
    return PresentedMap(Trusted{}, std::move(source), std::move(target), std::move(matrix));
}

PresentedMap PresentedMap::zero_into(const RModulePresentation& target) {
    return PresentedMap(RModulePresentation::zero_module(target.ring()), target,
                        FreeMap(target.ring()->ambient(), target.rank(), 0));
}

PresentedMap PresentedMap::zero_from(const RModulePresentation& source) {
    return PresentedMap(source, RModulePresentation::zero_module(source.ring()),
                        FreeMap(source.ring()->ambient(), 0, source.rank()));
}

LengthInfo length_info(const RModulePresentation& M) {
    const GroebnerBasis& gb = M.relations_gb();
    // Length means the origin-local length: finite k-dimension supported
    // elsewhere does not count.
    if (!is_origin_supported(gb, M.rank())) return LengthInfo{ExtNat::infinite(), false};
    return LengthInfo{kdim_quotient(gb, M.rank()), true};
}

namespace {

HomologyResult subquotient_homology_impl(const PresentedMap& alpha,
                                         const PresentedMap& beta, bool validate) {
    if (!(alpha.target() == beta.source()))
        throw RankMismatch("homology maps do not share the middle module");
    const RModulePresentation& X = alpha.target();
    const HypersurfaceRing& ring = *X.ring();
    const RingPtr& Q = ring.ambient();
    std::uint32_t rx = X.rank();

    // beta o alpha must vanish as a map into coker(target relations).
    if (validate && alpha.source().rank() > 0) {
        FreeMap comp = beta.matrix().lift() * alpha.matrix().lift();
        if (!columns_in_span(comp, beta.target().relations_gb()))
            throw CompositeNonzero("beta * alpha");
    }

    // Generators of ker(beta-bar): syzygy solutions of [beta | relations(Y)]
    // restricted to the X block.
    FreeMap block = beta.matrix().lift();
    if (beta.target().presentation().cols() > 0)
        block = block.hstack(beta.target().presentation().lift());
    if (beta.target().rank() > 0)
        block = block.hstack(FreeMap::identity(Q, beta.target().rank()).scale(ring.f()));
    FreeMap gens(Q, rx, 0);
    if (block.rows() == 0) {
        // Y = 0: the kernel is all of X.
        gens = FreeMap::identity(Q, rx);
    } else {
        FreeMap s = syzygies(block);
        gens = s.take_rows(rx);
    }
    gens = r_normalize(gens, ring);
    {
        // Dedupe and drop zero generator columns.
        std::vector<FreeElement> cols;
        for (std::uint32_t j = 0; j < gens.cols(); ++j) {
            FreeElement c = gens.column(j);
            if (c.is_zero()) continue;
            bool dup = false;
            for (const auto& k : cols)
                if (k == c) {
                    dup = true;
                    break;
                }
            if (!dup) cols.push_back(std::move(c));
        }
        gens = FreeMap::from_columns(Q, rx, cols, FreeMap::Interp::over_R);
    }
    std::uint32_t g = gens.cols();

    // Relations of the subquotient: internal syzygies of the chosen kernel
    // generators, plus Groebner lifts of im(alpha) and of X's relations
    // expressed in those generators.
    std::vector<FreeElement> relation_cols;
    auto add_relation = [&](FreeElement t) {
        if (t.is_zero()) return;
        for (const auto& k : relation_cols)
            if (k == t) return;
        relation_cols.push_back(std::move(t));
    };

    // One tracked basis over [G | f*I] serves both the internal syzygies of
    // the kernel generators and the membership lifts.
    std::vector<FreeElement> span = gens.columns();
    for (std::uint32_t j = 0; j < rx; ++j)
        span.push_back(FreeElement::from_component(ring.f(), rx, j));
    SubmoduleWorkspace ws(span, Q, rx);

    FreeMap syzG = r_normalize(ws.syzygies_of_generators().take_rows(g), ring);
    for (std::uint32_t j = 0; j < syzG.cols(); ++j) add_relation(syzG.column(j));

    auto lift_into_gens = [&](const FreeElement& ell, const char* what) {
        auto coeffs = ws.express(ell);
        if (!coeffs)
            throw InternalError(std::string("kernel membership lift failed for ") + what);
        std::vector<ModTerm> ts;
        for (std::uint32_t k = 0; k < g; ++k)
            for (const auto& term : (*coeffs)[k].terms()) ts.push_back({k, term.mon, term.coeff});
        add_relation(FreeElement::from_terms(Q, g, std::move(ts)));
    };
    for (std::uint32_t j = 0; j < alpha.matrix().cols(); ++j)
        lift_into_gens(alpha.matrix().lift().column(j), "im(alpha)");
    for (std::uint32_t j = 0; j < X.presentation().cols(); ++j)
        lift_into_gens(X.presentation().lift().column(j), "relations of X");

    FreeMap rel = FreeMap::from_columns(Q, g, relation_cols);
    RModulePresentation H(X.ring(), rel, "H");
    LengthInfo info = length_info(H);
    return HomologyResult{std::move(H), info.length, info.origin_supported};
}

}  // namespace

HomologyResult subquotient_homology(const PresentedMap& alpha, const PresentedMap& beta) {
    return subquotient_homology_impl(alpha, beta, true);
}

namespace {

// Power presentations reused across Tor indices so their relation bases are
// computed once.
class PowerPool {
public:
    explicit PowerPool(const RModulePresentation& base) : base_(base) {}
    const RModulePresentation& of(std::uint32_t r) {
        auto it = powers_.find(r);
        if (it == powers_.end()) it = powers_.emplace(r, base_.power(r)).first;
        return it->second;
    }

private:
    const RModulePresentation& base_;
    std::map<std::uint32_t, RModulePresentation> powers_;
};

HomologyResult tor_pooled(const RResolution& res, const RModulePresentation& N,
                          std::size_t i, PowerPool& pool) {
    const RModulePresentation& M = res.module();
    if (!same_hring(M.ring(), N.ring())) throw RingMismatch("tor");
    if (i == 0) {
        RModulePresentation t = tensor_presentations(M, N);
        LengthInfo info = length_info(t);
        return HomologyResult{std::move(t), info.length, info.origin_supported};
    }
    std::uint32_t rn = N.rank();
    std::uint32_t r_lo = res.free_rank(i - 1), r_mid = res.free_rank(i),
                  r_hi = res.free_rank(i + 1);
    // The tensored differentials carry relations into relations by the block
    // structure, and consecutive composites land in f * (everything), so the
    // checked constructions would only repeat structural facts.
    PresentedMap alpha = PresentedMap::trusted(pool.of(r_hi), pool.of(r_mid),
                                               res.differential(i + 1).kron_identity(rn));
    PresentedMap beta = PresentedMap::trusted(pool.of(r_mid), pool.of(r_lo),
                                              res.differential(i).kron_identity(rn));
    return subquotient_homology_impl(alpha, beta, false);
}

}  // namespace

HomologyResult tor(const RResolution& res, const RModulePresentation& N, std::size_t i) {
    PowerPool pool(N);
    return tor_pooled(res, N, i, pool);
}

HomologyResult tor(const RModulePresentation& M, const RModulePresentation& N,
                   std::size_t i, int max_steps) {
    if (max_steps <= 0) max_steps = default_max_steps(*M.ring());
    RResolution res = resolve(M, max_steps);
    return tor(res, N, i);
}

StableTor stable_tor_lengths(const RModulePresentation& M, const RModulePresentation& N,
                             const TorOptions& opts) {
    int max_steps = opts.max_steps > 0 ? opts.max_steps : default_max_steps(*M.ring());
    StableTor out;
    std::size_t i0 = 0;
    RResolution res(M);
    if (opts.assume_stable_at) {
        if (*opts.assume_stable_at < 1)
            throw InvalidParameter("assume_stable_at must be >= 1");
        i0 = static_cast<std::size_t>(*opts.assume_stable_at);
        res = resolve_window(M, static_cast<int>(i0) + 4, false, true);
        out.used_fallback = !res.stabilization().has_value();
        out.witness_index = static_cast<int>(i0);
    } else {
        res = resolve(M, max_steps);
        int s = res.stabilization()->index;
        // First even index comfortably inside the periodic tail.
        i0 = 2 * ((static_cast<std::size_t>(s) + 2 + 1) / 2);
        out.witness_index = s;
    }

    ExtNat len[4];
    bool origin[4];
    PowerPool pool(N);
    for (std::size_t k = 0; k < 4; ++k) {
        HomologyResult h = tor_pooled(res, N, i0 + k, pool);
        len[k] = h.length;
        origin[k] = h.origin_supported;
    }
    for (std::size_t k = 0; k < 4; ++k) {
        if (!len[k].is_finite() || !origin[k])
            throw NotFiniteLength("Tor at index " + std::to_string(i0 + k) +
                                  " is not a finite-length module supported at the origin");
    }
    if (!(len[0] == len[2]) || !(len[1] == len[3]))
        throw PeriodicityCheckFailed(
            "lengths at indices " + std::to_string(i0) + ".." + std::to_string(i0 + 3) +
            " are " + len[0].to_string() + "," + len[1].to_string() + "," +
            len[2].to_string() + "," + len[3].to_string());
    out.periodicity_verified = true;
    bool i0_even = (i0 % 2 == 0);
    out.even_length = (i0_even ? len[0] : len[1]).value();
    out.odd_length = (i0_even ? len[1] : len[0]).value();
    return out;
}

}  // namespace htheta
