#include "htheta/quotient.hpp"

#include <algorithm>
#include <mutex>

namespace htheta {

namespace {

// Exact division by f via the division algorithm; nullopt when f does not
// divide p.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& f) {
    const RingPtr& ring = p.ring();
    const auto& K = ring->field();
    const auto& flt = f.leading_term();
    Polynomial rest = p, quot(ring);
    while (!rest.is_zero()) {
        const auto& lt = rest.leading_term();
        if (!flt.mon.divides(lt.mon)) return std::nullopt;
        Monomial m = lt.mon.divided_by(flt.mon);
        Coeff c = K.div(lt.coeff, flt.coeff);
        Polynomial t = Polynomial::term(ring, m, c);
        rest = rest - f * t;
        quot = quot + t;
    }
    return quot;
}

// Inverse of a constant square matrix over the coefficient field, or nullopt
// when singular.
std::optional<FreeMap> invert_constant(const FreeMap& w) {
    const RingPtr& ring = w.ring();
    const auto& K = ring->field();
    std::uint32_t n = w.rows();
    std::vector<std::vector<Coeff>> a(n), inv(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        a[i].resize(n);
        inv[i].resize(n);
        for (std::uint32_t j = 0; j < n; ++j) {
            a[i][j] = w.entry(i, j).constant_term();
            inv[i][j] = (i == j) ? K.one() : K.zero();
        }
    }
    for (std::uint32_t col = 0; col < n; ++col) {
        std::uint32_t piv = col;
        while (piv < n && K.is_zero(a[piv][col])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Coeff d = K.inv(a[col][col]);
        for (std::uint32_t j = 0; j < n; ++j) {
            a[col][j] = K.mul(a[col][j], d);
            inv[col][j] = K.mul(inv[col][j], d);
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            if (i == col || K.is_zero(a[i][col])) continue;
            Coeff c = a[i][col];
            for (std::uint32_t j = 0; j < n; ++j) {
                a[i][j] = K.sub(a[i][j], K.mul(c, a[col][j]));
                inv[i][j] = K.sub(inv[i][j], K.mul(c, inv[col][j]));
            }
        }
    }
    FreeMap r(ring, n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            r.set_entry(i, j, Polynomial::constant(ring, inv[i][j]));
    return r;
}

FreeMap drop_zero_and_duplicate_columns(const FreeMap& m) {
    std::vector<FreeElement> keep;
    for (std::uint32_t j = 0; j < m.cols(); ++j) {
        FreeElement col = m.column(j);
        if (col.is_zero()) continue;
        bool dup = false;
        for (const auto& k : keep)
            if (k == col) {
                dup = true;
                break;
            }
        if (!dup) keep.push_back(std::move(col));
    }
    return FreeMap::from_columns(m.ring(), m.rows(), keep, m.interp());
}

}  // namespace

/******** HypersurfaceRing ********/

HypersurfaceRing::HypersurfaceRing(Polynomial f)
    : ambient_(f.ring()), f_(std::move(f)),
      gb_f_(buchberger_ideal({f_}, ambient_)) {
    if (f_.is_zero()) throw InvalidParameter("hypersurface equation is zero");
    if (ambient_->nvars() == 0) throw InvalidParameter("hypersurface needs variables");
    if (!ambient_->field().is_zero(f_.constant_term()))
        throw InvalidParameter("hypersurface equation has nonzero constant term");
}

/******** RModulePresentation ********/

struct RModulePresentation::GbCache {
    std::once_flag flag;
    std::optional<GroebnerBasis> gb;
};

RModulePresentation::RModulePresentation(HRingPtr ring, const FreeMap& presentation,
                                         std::string label)
    : ring_(std::move(ring)), pres_(r_normalize(presentation, *ring_)),
      label_(std::move(label)), gb_cache_(std::make_shared<GbCache>()) {}

RModulePresentation RModulePresentation::free_module(HRingPtr ring, std::uint32_t rank,
                                                     std::string label) {
    FreeMap pres(ring->ambient(), rank, 0, FreeMap::Interp::over_R);
    return RModulePresentation(std::move(ring), pres,
                               label.empty() ? "R^" + std::to_string(rank) : label);
}

RModulePresentation RModulePresentation::zero_module(HRingPtr ring) {
    FreeMap pres(ring->ambient(), 0, 0, FreeMap::Interp::over_R);
    return RModulePresentation(std::move(ring), pres, "0");
}

RModulePresentation RModulePresentation::cyclic(HRingPtr ring,
                                                const std::vector<Polynomial>& gens,
                                                std::string label) {
    FreeMap pres(ring->ambient(), 1, static_cast<std::uint32_t>(gens.size()));
    for (std::uint32_t j = 0; j < gens.size(); ++j) pres.set_entry(0, j, gens[j]);
    return RModulePresentation(std::move(ring), pres, std::move(label));
}

RModulePresentation RModulePresentation::direct_sum(const RModulePresentation& a,
                                                    const RModulePresentation& b) {
    if (!same_hring(a.ring_, b.ring_)) throw RingMismatch("direct sum");
    return RModulePresentation(a.ring_, FreeMap::block_diag(a.pres_, b.pres_),
                               a.label_ + " (+) " + b.label_);
}

RModulePresentation RModulePresentation::power(std::uint32_t n) const {
    FreeMap pres(ring_->ambient(), 0, 0, FreeMap::Interp::over_R);
    for (std::uint32_t i = 0; i < n; ++i) pres = FreeMap::block_diag(pres, pres_);
    return RModulePresentation(ring_, pres, label_ + "^" + std::to_string(n));
}

std::vector<FreeElement> RModulePresentation::q_relations() const {
    std::vector<FreeElement> rels = pres_.columns();
    for (std::uint32_t j = 0; j < rank(); ++j)
        rels.push_back(FreeElement::from_component(ring_->f(), rank(), j));
    return rels;
}

const GroebnerBasis& RModulePresentation::relations_gb() const {
    std::call_once(gb_cache_->flag, [&] {
        gb_cache_->gb.emplace(buchberger(q_relations(), ring_->ambient(), rank()));
    });
    return *gb_cache_->gb;
}

/******** matrix operations over R ********/

FreeMap r_normalize(const FreeMap& m, const HypersurfaceRing& ring) {
    if (!same_ring(m.ring(), ring.ambient())) throw RingMismatch("r_normalize");
    FreeMap out(m.ring(), m.rows(), m.cols(), FreeMap::Interp::over_R);
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        for (std::uint32_t j = 0; j < m.cols(); ++j)
            out.set_entry(i, j, ring.reduce(m.entry(i, j)));
    return out;
}

namespace {

// Locates a pivot entry that is a nonzero field constant. Returns false when
// none exists, after checking that no mixed entry (nonzero constant term,
// non-constant) blocks exact elimination.
bool find_constant_pivot(const FreeMap& m, const CoefficientField& K, std::uint32_t& pi,
                         std::uint32_t& pj) {
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        for (std::uint32_t j = 0; j < m.cols(); ++j) {
            const auto& e = m.entry(i, j);
            if (e.is_constant() && !e.is_zero()) {
                pi = i;
                pj = j;
                return true;
            }
        }
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        for (std::uint32_t j = 0; j < m.cols(); ++j) {
            const auto& e = m.entry(i, j);
            if (!K.is_zero(e.constant_term()) && !e.is_constant())
                throw NonConstantUnit(i, j);
        }
    return false;
}

}  // namespace

FreeMap minimalize(const FreeMap& m_in, const HypersurfaceRing& ring) {
    const auto& K = ring.ambient()->field();
    FreeMap m = r_normalize(m_in, ring);
    std::uint32_t pi = 0, pj = 0;
    while (m.rows() > 0 && m.cols() > 0 && find_constant_pivot(m, K, pi, pj)) {
        Coeff uinv = K.inv(m.entry(pi, pj).constant_term());
        // Column operations clear the pivot row.
        for (std::uint32_t k = 0; k < m.cols(); ++k) {
            if (k == pj || m.entry(pi, k).is_zero()) continue;
            Polynomial lam = m.entry(pi, k).scale(uinv);
            for (std::uint32_t r = 0; r < m.rows(); ++r)
                m.set_entry(r, k, ring.reduce(m.entry(r, k) - lam * m.entry(r, pj)));
        }
        // Row operations clear the pivot column.
        for (std::uint32_t r = 0; r < m.rows(); ++r) {
            if (r == pi || m.entry(r, pj).is_zero()) continue;
            Polynomial mu = m.entry(r, pj).scale(uinv);
            for (std::uint32_t k = 0; k < m.cols(); ++k)
                m.set_entry(r, k, ring.reduce(m.entry(r, k) - mu * m.entry(pi, k)));
        }
        m = m.drop_row(pi).drop_col(pj);
    }
    return m;
}

// Raw syzygies of d over R: Q-syzygies of [d | f*I] projected to the first
// block, normalized, deduplicated.
FreeMap r_kernel_generators(const FreeMap& d, const HypersurfaceRing& ring) {
    std::uint32_t r = d.rows(), c = d.cols();
    if (c == 0)
        return FreeMap(ring.ambient(), 0, 0, FreeMap::Interp::over_R);
    FreeMap block = d.lift();
    if (r > 0)
        block = block.hstack(FreeMap::identity(ring.ambient(), r).scale(ring.f()));
    FreeMap s = syzygies(block);
    FreeMap first = s.take_rows(c);
    return drop_zero_and_duplicate_columns(r_normalize(first, ring));
}

namespace {

// Unit-pivot pruning of a consecutive pair d, next with d*next == 0 over R.
// A constant pivot in `next` exposes a redundant column of `d`: after paired
// row/column operations that column becomes zero and both maps shrink.
void prune_pair(FreeMap& d, FreeMap& next, const HypersurfaceRing& ring) {
    const auto& K = ring.ambient()->field();
    std::uint32_t pj = 0, pk = 0;
    while (next.rows() > 0 && next.cols() > 0 && find_constant_pivot(next, K, pj, pk)) {
        Coeff uinv = K.inv(next.entry(pj, pk).constant_term());
        // Column operations on `next` clear the pivot row.
        for (std::uint32_t k = 0; k < next.cols(); ++k) {
            if (k == pk || next.entry(pj, k).is_zero()) continue;
            Polynomial lam = next.entry(pj, k).scale(uinv);
            for (std::uint32_t r = 0; r < next.rows(); ++r)
                next.set_entry(r, k, ring.reduce(next.entry(r, k) - lam * next.entry(r, pk)));
        }
        // Row operations on `next`, mirrored as column operations on `d`.
        std::vector<Polynomial> mu;
        mu.reserve(next.rows());
        for (std::uint32_t j = 0; j < next.rows(); ++j)
            mu.push_back(next.entry(j, pk).scale(uinv));
        for (std::uint32_t i = 0; i < d.rows(); ++i) {
            Polynomial acc = d.entry(i, pj);
            for (std::uint32_t j = 0; j < next.rows(); ++j) {
                if (j == pj || mu[j].is_zero()) continue;
                acc = acc + mu[j] * d.entry(i, j);
            }
            acc = ring.reduce(acc);
            if (!acc.is_zero())
                throw InternalError("pruned column of a differential did not vanish");
            d.set_entry(i, pj, std::move(acc));
        }
        for (std::uint32_t j = 0; j < next.rows(); ++j) {
            if (j == pj || mu[j].is_zero()) continue;
            for (std::uint32_t k = 0; k < next.cols(); ++k)
                next.set_entry(j, k, ring.reduce(next.entry(j, k) - mu[j] * next.entry(pj, k)));
        }
        d = d.drop_col(pj);
        next = next.drop_row(pj).drop_col(pk);
    }
    next = drop_zero_and_duplicate_columns(next);
}

}  // namespace

FreeMap r_syzygy(const FreeMap& d, const HypersurfaceRing& ring) {
    FreeMap dd = r_normalize(d, ring);
    FreeMap next = r_kernel_generators(dd, ring);
    prune_pair(dd, next, ring);
    return next;
}

/******** resolution ********/

int default_max_steps(const HypersurfaceRing& ring) {
    return 2 * (static_cast<int>(ring.ambient()->nvars()) + 2);
}

namespace {

// Tries to read the differential pair (d_{s+1}, d_{s+2}) as a matrix
// factorization, absorbing a constant invertible alignment into the later
// one.
bool try_stabilize_at(std::vector<FreeMap>& diffs, std::size_t s,
                      const HypersurfaceRing& ring,
                      std::optional<RResolution::Stabilization>& stab) {
    if (diffs.size() < s + 2) return false;
    const FreeMap& da = diffs[s];
    FreeMap db = diffs[s + 1];
    std::uint32_t m = da.rows();
    if (da.cols() != m || db.rows() != m || db.cols() != m) return false;

    FreeMap prod = da.lift() * db.lift();
    FreeMap w(ring.ambient(), m, m);
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j) {
            auto q = exact_divide(prod.entry(i, j), ring.f());
            if (!q) return false;
            w.set_entry(i, j, std::move(*q));
        }
    if (!w.is_constant()) return false;
    if (!w.is_identity()) {
        auto winv = invert_constant(w);
        if (!winv) return false;
        db = r_normalize(db.lift() * *winv, ring);
    }
    FreeMap rev = db.lift() * da.lift();
    if (!(rev == FreeMap::identity(ring.ambient(), m).scale(ring.f()))) return false;

    diffs[s + 1] = db;
    stab = RResolution::Stabilization{static_cast<int>(s), da.lift(), db.lift()};
    return true;
}

}  // namespace

RResolution resolve_window(const RModulePresentation& M, int steps,
                           bool require_stabilization, bool minimalize_first) {
    const HypersurfaceRing& ring = *M.ring();
    RResolution res(M);
    res.diffs_.push_back(minimalize_first ? minimalize(M.presentation(), ring)
                                          : r_normalize(M.presentation(), ring));
    auto trivially_stable = [&]() {
        if (res.diffs_.back().cols() != 0) return false;
        FreeMap empty(ring.ambient(), 0, 0);
        res.stab_ = RResolution::Stabilization{static_cast<int>(res.diffs_.size()) - 1,
                                               empty, empty};
        return true;
    };
    if (trivially_stable()) return res;
    for (int step = 2; step <= steps; ++step) {
        FreeMap next = r_kernel_generators(res.diffs_.back(), ring);
        prune_pair(res.diffs_.back(), next, ring);
        // Pruning has just finalized the previous differential; retest the
        // pair ending at it before extending the resolution.
        if (res.diffs_.size() >= 2 &&
            try_stabilize_at(res.diffs_, res.diffs_.size() - 2, ring, res.stab_))
            return res;
        res.diffs_.push_back(std::move(next));
        if (try_stabilize_at(res.diffs_, res.diffs_.size() - 2, ring, res.stab_))
            return res;
        if (trivially_stable()) return res;
    }
    if (require_stabilization) throw NoStabilization(steps);
    return res;
}

RResolution resolve(const RModulePresentation& M, int max_steps) {
    if (max_steps < 2) throw InvalidParameter("resolve needs max_steps >= 2");
    return resolve_window(M, max_steps, true, true);
}

FreeMap RResolution::differential(std::size_t i) const {
    if (i == 0) throw InvalidParameter("differentials are indexed from 1");
    if (i <= diffs_.size()) return diffs_[i - 1];
    if (!stab_)
        throw InternalError("differential " + std::to_string(i) +
                            " beyond the computed, unstabilized range");
    std::size_t k = i - static_cast<std::size_t>(stab_->index) - 1;
    const FreeMap& pick = (k % 2 == 0) ? stab_->a : stab_->b;
    return pick.with_interp(FreeMap::Interp::over_R);
}

std::uint32_t RResolution::free_rank(std::size_t i) const {
    if (i == 0) return diffs_[0].rows();
    return differential(i).cols();
}

/******** tensor product ********/

RModulePresentation tensor_presentations(const RModulePresentation& M,
                                         const RModulePresentation& N) {
    if (!same_hring(M.ring(), N.ring())) throw RingMismatch("tensor product");
    const RingPtr& Q = M.ring()->ambient();
    const FreeMap& phi = M.presentation();
    const FreeMap& psi = N.presentation();
    std::uint32_t r1 = phi.rows(), r2 = psi.rows();
    FreeMap left = phi.kron_identity(r2);
    FreeMap right(Q, r1 * r2, r1 * psi.cols());
    for (std::uint32_t a = 0; a < r1; ++a)
        for (std::uint32_t b = 0; b < r2; ++b)
            for (std::uint32_t dcol = 0; dcol < psi.cols(); ++dcol)
                right.set_entry(a * r2 + b, a * psi.cols() + dcol, psi.entry(b, dcol));
    return RModulePresentation(M.ring(), left.hstack(right),
                               M.label() + " (x) " + N.label());
}

}  // namespace htheta
