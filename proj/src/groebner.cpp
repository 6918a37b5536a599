#include "htheta/groebner.hpp"

#include <algorithm>
#include <set>

namespace htheta {

namespace {

// Full division of e by a basis: reduce any divisible term, move irreducible
// leading terms to the remainder. When quot is given it receives one
// polynomial per basis element with e = sum quot_k * basis_k + remainder.
FreeElement divide_full(const FreeElement& e, const std::vector<FreeElement>& basis,
                        std::vector<Polynomial>* quot) {
    const RingPtr& ring = e.ring();
    const auto& K = ring->field();
    FreeElement p = e;
    std::vector<ModTerm> rem_terms;
    while (!p.is_zero()) {
        const ModTerm& lt = p.leading();
        bool reduced = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const FreeElement& g = basis[k];
            if (g.is_zero()) continue;
            const ModTerm& glt = g.leading();
            if (glt.comp != lt.comp || !glt.mon.divides(lt.mon)) continue;
            Monomial q = lt.mon.divided_by(glt.mon);
            Coeff c = K.div(lt.coeff, glt.coeff);
            p.sub_times_term_inplace(g, q, c);
            if (quot)
                (*quot)[k] = (*quot)[k] + Polynomial::term(ring, std::move(q), c);
            reduced = true;
            break;
        }
        if (!reduced) rem_terms.push_back(p.take_leading());
    }
    return FreeElement::from_terms(ring, e.rank(), std::move(rem_terms));
}

struct Pair {
    std::uint32_t deg;
    std::uint32_t comp;
    std::vector<std::uint32_t> lcm;
    std::size_t i, j;

    bool operator<(const Pair& o) const {
        if (deg != o.deg) return deg < o.deg;
        if (comp != o.comp) return comp < o.comp;
        if (lcm != o.lcm) return lcm < o.lcm;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

// Buchberger with optional cofactor tracking: t[k] lives in Q^ngens with
// h[k] = sum_j t[k]_j * gens_j. All basis elements are kept monic.
struct TrackedGB {
    RingPtr ring;
    std::uint32_t rank = 0;
    std::uint32_t ngens = 0;
    std::vector<FreeElement> h;
    std::vector<FreeElement> t;
    bool tracked = false;
};

TrackedGB buchberger_tracked(const std::vector<FreeElement>& gens, RingPtr ring,
                             std::uint32_t rank, bool track) {
    const auto& K = ring->field();
    TrackedGB gb;
    gb.ring = ring;
    gb.rank = rank;
    gb.ngens = static_cast<std::uint32_t>(gens.size());
    gb.tracked = track;

    std::set<Pair> pending;
    auto make_pair = [&](std::size_t i, std::size_t j) -> std::optional<Pair> {
        const auto &li = gb.h[i].leading(), &lj = gb.h[j].leading();
        if (li.comp != lj.comp) return std::nullopt;
        Monomial l = li.mon.lcm(lj.mon);
        return Pair{l.total_degree(), li.comp, l.exponents(), i, j};
    };
    auto push_element = [&](FreeElement e, FreeElement te) {
        Coeff lc = e.leading().coeff;
        gb.h.push_back(e.scale(K.inv(lc)));
        if (track) gb.t.push_back(te.scale(K.inv(lc)));
        std::size_t n = gb.h.size() - 1;
        for (std::size_t i = 0; i < n; ++i)
            if (auto p = make_pair(i, n)) pending.insert(std::move(*p));
    };

    for (std::uint32_t j = 0; j < gens.size(); ++j) {
        if (!same_ring(gens[j].ring(), ring)) throw RingMismatch("groebner generators");
        if (gens[j].rank() != rank) throw RankMismatch("groebner generators");
        if (gens[j].is_zero()) continue;
        push_element(gens[j], FreeElement::basis_vector(ring, gb.ngens, j));
    }

    while (!pending.empty()) {
        Pair pr = *pending.begin();
        pending.erase(pending.begin());
        const auto &li = gb.h[pr.i].leading(), &lj = gb.h[pr.j].leading();
        Monomial lcm(pr.lcm);

        // Coprimality criterion (valid for ideals).
        if (rank == 1 && lcm == li.mon.times(lj.mon)) continue;

        // Chain criterion: some third leading term divides the lcm and both
        // companion pairs have already been handled.
        bool skip = false;
        for (std::size_t k = 0; k < gb.h.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            const auto& lk = gb.h[k].leading();
            if (lk.comp != pr.comp || !lk.mon.divides(lcm)) continue;
            auto ik = make_pair(std::min(pr.i, k), std::max(pr.i, k));
            auto jk = make_pair(std::min(pr.j, k), std::max(pr.j, k));
            if (ik && jk && !pending.count(*ik) && !pending.count(*jk)) skip = true;
        }
        if (skip) continue;

        Monomial ui = lcm.divided_by(li.mon), uj = lcm.divided_by(lj.mon);
        FreeElement s = gb.h[pr.i].times_term(ui, K.one()) -
                        gb.h[pr.j].times_term(uj, K.one());
        std::vector<Polynomial> quot;
        if (track) quot.assign(gb.h.size(), Polynomial(ring));
        FreeElement rem = divide_full(s, gb.h, track ? &quot : nullptr);
        if (rem.is_zero()) continue;
        FreeElement trem(ring, gb.ngens);
        if (track) {
            trem = gb.t[pr.i].times_term(ui, K.one()) - gb.t[pr.j].times_term(uj, K.one());
            for (std::size_t k = 0; k < quot.size(); ++k)
                if (!quot[k].is_zero()) trem = trem - gb.t[k].times_poly(quot[k]);
        }
        push_element(std::move(rem), std::move(trem));
    }

    // Minimalize: drop generators whose leading term another kept one
    // divides; among equal leading terms the earliest survives.
    std::vector<char> keep(gb.h.size(), 1);
    for (std::size_t i = 0; i < gb.h.size(); ++i) {
        const auto& li = gb.h[i].leading();
        for (std::size_t k = 0; k < gb.h.size(); ++k) {
            if (k == i || !keep[k]) continue;
            const auto& lk = gb.h[k].leading();
            if (lk.comp != li.comp || !lk.mon.divides(li.mon)) continue;
            bool equal_lt = lk.mon == li.mon;
            if (!equal_lt || k < i) {
                keep[i] = 0;
                break;
            }
        }
    }
    TrackedGB out;
    out.ring = ring;
    out.rank = rank;
    out.ngens = gb.ngens;
    out.tracked = track;
    for (std::size_t i = 0; i < gb.h.size(); ++i) {
        if (!keep[i]) continue;
        out.h.push_back(gb.h[i]);
        if (track) out.t.push_back(gb.t[i]);
    }

    // Tail-reduce each survivor against the others for the reduced basis.
    for (std::size_t i = 0; i < out.h.size(); ++i) {
        std::vector<FreeElement> others;
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < out.h.size(); ++k)
            if (k != i) {
                others.push_back(out.h[k]);
                idx.push_back(k);
            }
        std::vector<Polynomial> quot;
        if (track) quot.assign(others.size(), Polynomial(ring));
        FreeElement red = divide_full(out.h[i], others, track ? &quot : nullptr);
        if (track) {
            FreeElement tr = out.t[i];
            for (std::size_t k = 0; k < others.size(); ++k)
                if (!quot[k].is_zero()) tr = tr - out.t[idx[k]].times_poly(quot[k]);
            out.t[i] = std::move(tr);
        }
        out.h[i] = std::move(red);
    }

    // Canonical ordering by leading term, largest first.
    std::vector<std::size_t> perm(out.h.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    const auto& ord = ring->order();
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        const auto &la = out.h[a].leading(), &lb = out.h[b].leading();
        return ord.compare(la.comp, la.mon, lb.comp, lb.mon) > 0;
    });
    TrackedGB sorted;
    sorted.ring = ring;
    sorted.rank = rank;
    sorted.ngens = out.ngens;
    sorted.tracked = track;
    for (auto i : perm) {
        sorted.h.push_back(std::move(out.h[i]));
        if (track) sorted.t.push_back(std::move(out.t[i]));
    }
    return sorted;
}

}  // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, std::uint32_t rank,
                             std::vector<FreeElement> gens)
    : ring_(std::move(ring)), rank_(rank), gens_(std::move(gens)) {}

GroebnerBasis buchberger(const std::vector<FreeElement>& gens, RingPtr ring,
                         std::uint32_t rank) {
    auto gb = buchberger_tracked(gens, ring, rank, false);
    return GroebnerBasis(std::move(ring), rank, std::move(gb.h));
}

GroebnerBasis buchberger_ideal(const std::vector<Polynomial>& gens, RingPtr ring) {
    std::vector<FreeElement> v;
    v.reserve(gens.size());
    for (const auto& p : gens) v.push_back(FreeElement::from_component(p, 1, 0));
    return buchberger(v, std::move(ring), 1);
}

FreeElement normal_form(const FreeElement& e, const GroebnerBasis& gb) {
    if (!same_ring(e.ring(), gb.ring())) throw RingMismatch("normal_form");
    if (e.rank() != gb.rank()) throw RankMismatch("normal_form");
    return divide_full(e, gb.generators(), nullptr);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
    if (gb.rank() != 1) throw RankMismatch("polynomial normal_form needs rank 1");
    return normal_form(FreeElement::from_component(p, 1, 0), gb).component(0);
}

struct SubmoduleWorkspace::Impl {
    std::vector<FreeElement> gens;
    TrackedGB gb;
};

SubmoduleWorkspace::SubmoduleWorkspace(const std::vector<FreeElement>& gens, RingPtr ring,
                                       std::uint32_t rank)
    : impl_(new Impl{gens, buchberger_tracked(gens, ring, rank, true)}) {}

SubmoduleWorkspace::SubmoduleWorkspace(SubmoduleWorkspace&&) noexcept = default;
SubmoduleWorkspace::~SubmoduleWorkspace() = default;

FreeMap SubmoduleWorkspace::syzygies_of_generators() const {
    const TrackedGB& gb = impl_->gb;
    const RingPtr& ring = gb.ring;
    const auto& K = ring->field();
    std::uint32_t c = gb.ngens;

    std::vector<FreeElement> out;
    auto add_candidate = [&](FreeElement v) {
        if (v.is_zero()) return;
        for (const auto& w : out)
            if (w == v) return;
        out.push_back(std::move(v));
    };

    // Schreyer generators: every same-component S-pair of the final basis
    // reduces to zero; its cofactor expression is a syzygy of the basis,
    // converted back through the tracking matrix.
    for (std::size_t i = 0; i < gb.h.size(); ++i) {
        for (std::size_t j = i + 1; j < gb.h.size(); ++j) {
            const auto &li = gb.h[i].leading(), &lj = gb.h[j].leading();
            if (li.comp != lj.comp) continue;
            Monomial lcm = li.mon.lcm(lj.mon);
            Monomial ui = lcm.divided_by(li.mon), uj = lcm.divided_by(lj.mon);
            FreeElement s = gb.h[i].times_term(ui, K.one()) -
                            gb.h[j].times_term(uj, K.one());
            std::vector<Polynomial> quot(gb.h.size(), Polynomial(ring));
            FreeElement rem = divide_full(s, gb.h, &quot);
            if (!rem.is_zero())
                throw InternalError("S-pair of a Groebner basis did not reduce to zero");
            // v = t_i*ui - t_j*uj - sum quot_k t_k lies in the kernel.
            FreeElement v = gb.t[i].times_term(ui, K.one()) -
                            gb.t[j].times_term(uj, K.one());
            for (std::size_t k = 0; k < gb.h.size(); ++k)
                if (!quot[k].is_zero()) v = v - gb.t[k].times_poly(quot[k]);
            add_candidate(std::move(v));
        }
    }

    // Conversion of the inputs: g_j - sum U_kj h_k = 0 gives the columns of
    // I - T*U.
    for (std::uint32_t j = 0; j < c; ++j) {
        std::vector<Polynomial> quot(gb.h.size(), Polynomial(ring));
        FreeElement rem = divide_full(impl_->gens[j], gb.h, &quot);
        if (!rem.is_zero())
            throw InternalError("input generator did not reduce to zero against its basis");
        FreeElement v = FreeElement::basis_vector(ring, c, j);
        for (std::size_t k = 0; k < gb.h.size(); ++k)
            if (!quot[k].is_zero()) v = v - gb.t[k].times_poly(quot[k]);
        add_candidate(std::move(v));
    }

    return FreeMap::from_columns(ring, c, out);
}

std::optional<std::vector<Polynomial>> SubmoduleWorkspace::express(
    const FreeElement& e) const {
    const TrackedGB& gb = impl_->gb;
    const RingPtr& ring = gb.ring;
    std::vector<Polynomial> quot(gb.h.size(), Polynomial(ring));
    FreeElement rem = divide_full(e, gb.h, &quot);
    if (!rem.is_zero()) return std::nullopt;
    FreeElement v(ring, gb.ngens);
    for (std::size_t k = 0; k < gb.h.size(); ++k)
        if (!quot[k].is_zero()) v = v + gb.t[k].times_poly(quot[k]);
    std::vector<Polynomial> coeffs;
    coeffs.reserve(gb.ngens);
    for (std::uint32_t j = 0; j < gb.ngens; ++j) coeffs.push_back(v.component(j));
    return coeffs;
}

FreeMap syzygies(const FreeMap& m) {
    SubmoduleWorkspace ws(m.columns(), m.ring(), m.rows());
    return ws.syzygies_of_generators();
}

std::optional<std::vector<Polynomial>> express_in_submodule(
    const FreeElement& e, const std::vector<FreeElement>& gens, RingPtr ring,
    std::uint32_t rank) {
    SubmoduleWorkspace ws(gens, std::move(ring), rank);
    return ws.express(e);
}

namespace {

constexpr std::uint64_t kMaxStandardMonomials = 100000000;

// Standard monomials of one component: exponent boxes bounded by the pure
// powers among the leading terms, minus the divisible ones.
ExtNat count_component(const std::vector<Monomial>& lts, std::size_t nvars) {
    for (const auto& m : lts)
        if (m.is_one()) return ExtNat::of(0);
    std::vector<std::uint32_t> bound(nvars, 0);
    for (std::size_t v = 0; v < nvars; ++v) {
        bool found = false;
        for (const auto& m : lts) {
            if (m.exponent(v) == 0) continue;
            bool pure = true;
            for (std::size_t w = 0; w < nvars && pure; ++w)
                if (w != v && m.exponent(w) != 0) pure = false;
            if (pure) {
                if (!found || m.exponent(v) < bound[v]) bound[v] = m.exponent(v);
                found = true;
            }
        }
        if (!found) return ExtNat::infinite();
    }
    std::uint64_t box = 1;
    for (auto b : bound) {
        box *= b;
        if (box > kMaxStandardMonomials)
            throw InvalidParameter("standard monomial box exceeds the supported size");
    }
    // Odometer over the box, skipping multiples of any leading term.
    std::vector<std::uint32_t> e(nvars, 0);
    std::uint64_t count = 0;
    for (;;) {
        Monomial cand{std::vector<std::uint32_t>(e)};
        bool divisible = false;
        for (const auto& m : lts)
            if (m.divides(cand)) {
                divisible = true;
                break;
            }
        if (!divisible) ++count;
        std::size_t v = 0;
        while (v < nvars) {
            if (++e[v] < bound[v]) break;
            e[v] = 0;
            ++v;
        }
        if (v == nvars) break;
    }
    return ExtNat::of(count);
}

}  // namespace

ExtNat kdim_quotient(const GroebnerBasis& gb, std::uint32_t rank) {
    std::size_t nvars = gb.ring()->nvars();
    ExtNat total = ExtNat::of(0);
    for (std::uint32_t comp = 0; comp < rank; ++comp) {
        std::vector<Monomial> lts;
        for (const auto& g : gb.generators())
            if (!g.is_zero() && g.leading().comp == comp) lts.push_back(g.leading().mon);
        if (lts.empty()) {
            if (nvars > 0) return ExtNat::infinite();
            total = total + ExtNat::of(1);
            continue;
        }
        ExtNat c = count_component(lts, nvars);
        if (!c.is_finite()) return ExtNat::infinite();
        total = total + c;
    }
    return total;
}

bool is_origin_supported(const GroebnerBasis& gb, std::uint32_t rank) {
    ExtNat kd = kdim_quotient(gb, rank);
    if (!kd.is_finite()) return false;
    if (kd.value() > kMaxStandardMonomials)
        throw InvalidParameter("nilpotency bound exceeds the supported size");
    auto L = static_cast<std::uint32_t>(kd.value());
    const RingPtr& ring = gb.ring();
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
        Monomial xv = Monomial::variable(ring->nvars(), v, L);
        for (std::uint32_t comp = 0; comp < rank; ++comp) {
            FreeElement e = FreeElement::from_terms(
                ring, rank, {ModTerm{comp, xv, ring->field().one()}});
            if (!normal_form(e, gb).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace htheta
