#include "htheta/mf.hpp"

#include <sstream>

namespace htheta {

MatrixFactorization::MatrixFactorization(HRingPtr ring, FreeMap a, FreeMap b)
    : ring_(std::move(ring)), a_(std::move(a)), b_(std::move(b)) {
    if (!same_ring(a_.ring(), ring_->ambient()) || !same_ring(b_.ring(), ring_->ambient()))
        throw RingMismatch("matrix factorization entries");
    std::uint32_t m = a_.rows();
    if (a_.cols() != m || b_.rows() != m || b_.cols() != m)
        throw RankMismatch("matrix factorization needs square matrices of equal size");
    a_ = a_.lift();
    b_ = b_.lift();
    FreeMap expected = FreeMap::identity(ring_->ambient(), m).scale(ring_->f());
    auto check = [&](const FreeMap& prod, const char* name) {
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j)
                if (!(prod.entry(i, j) == expected.entry(i, j)))
                    throw NotAFactorization(
                        i, j,
                        std::string("of ") + name + " is " + prod.entry(i, j).to_string() +
                            ", expected " + expected.entry(i, j).to_string());
    };
    check(a_ * b_, "A*B");
    check(b_ * a_, "B*A");
}

RModulePresentation MatrixFactorization::cokernel(std::string label) const {
    // f annihilates the cokernel: f*e_j = A*(B*e_j) lies in the column span.
    return RModulePresentation(ring_, a_, label.empty() ? "coker(A)" : std::move(label));
}

MatrixFactorization MatrixFactorization::transpose() const {
    return MatrixFactorization(ring_, b_, a_);
}

MatrixFactorization MatrixFactorization::direct_sum(const MatrixFactorization& x,
                                                    const MatrixFactorization& y) {
    if (!same_hring(x.ring_, y.ring_)) throw RingMismatch("matrix factorization direct sum");
    return MatrixFactorization(x.ring_, FreeMap::block_diag(x.a_, y.a_),
                               FreeMap::block_diag(x.b_, y.b_));
}

MatrixFactorization MatrixFactorization::knorrer_split(const std::string& u,
                                                       const std::string& v) const {
    const RingPtr& Q = ring_->ambient();
    if (Q->var_index(u) || Q->var_index(v)) throw VariableClash(Q->var_index(u) ? u : v);
    if (u == v) throw VariableClash(u);
    std::vector<std::string> vars = Q->var_names();
    vars.push_back(u);
    vars.push_back(v);
    RingPtr Q2 = PolyRing::make(Q->field(), std::move(vars), Q->order());
    std::vector<std::size_t> var_map(Q->nvars());
    for (std::size_t i = 0; i < var_map.size(); ++i) var_map[i] = i;

    std::uint32_t m = size();
    auto move_up = [&](const FreeMap& src) {
        FreeMap out(Q2, m, m);
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j)
                out.set_entry(i, j, transplant(src.entry(i, j), Q2, var_map));
        return out;
    };
    FreeMap A2 = move_up(a_), B2 = move_up(b_);
    Polynomial pu = Polynomial::variable(Q2, Q->nvars());
    Polynomial pv = Polynomial::variable(Q2, Q->nvars() + 1);
    FreeMap uI = FreeMap::identity(Q2, m).scale(pu);
    FreeMap vI = FreeMap::identity(Q2, m).scale(pv);

    auto corner = [&](const FreeMap& tl, const FreeMap& br) {
        FreeMap out(Q2, 2 * m, 2 * m);
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j) {
                out.set_entry(i, j, tl.entry(i, j));
                out.set_entry(i, m + j, uI.entry(i, j));
                out.set_entry(m + i, j, vI.entry(i, j));
                out.set_entry(m + i, m + j, -br.entry(i, j));
            }
        return out;
    };
    Polynomial f2 = transplant(ring_->f(), Q2, var_map) + pu * pv;
    return MatrixFactorization(HypersurfaceRing::make(std::move(f2)), corner(A2, B2),
                               corner(B2, A2));
}

/******** LocalizedMatrix ********/

LocalizedMatrix::LocalizedMatrix(HRingPtr ring, std::uint32_t n)
    : ring_(std::move(ring)), n_(n) {
    entries_.assign(static_cast<std::size_t>(n) * n,
                    Entry{Polynomial(ring_->ambient()), 0});
}

LocalizedMatrix LocalizedMatrix::from_map(HRingPtr ring, const FreeMap& m,
                                          std::uint32_t fexp) {
    if (m.rows() != m.cols()) throw RankMismatch("localized matrix must be square");
    LocalizedMatrix out(std::move(ring), m.rows());
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        for (std::uint32_t j = 0; j < m.cols(); ++j)
            out.set_entry(i, j, Entry{m.entry(i, j), m.entry(i, j).is_zero() ? 0u : fexp});
    return out;
}

LocalizedMatrix LocalizedMatrix::identity(HRingPtr ring, std::uint32_t n) {
    return from_map(ring, FreeMap::identity(ring->ambient(), n), 0);
}

const LocalizedMatrix::Entry& LocalizedMatrix::entry(std::uint32_t i, std::uint32_t j) const {
    return entries_[static_cast<std::size_t>(i) * n_ + j];
}

void LocalizedMatrix::set_entry(std::uint32_t i, std::uint32_t j, Entry e) {
    entries_[static_cast<std::size_t>(i) * n_ + j] = std::move(e);
}

LocalizedMatrix LocalizedMatrix::operator*(const LocalizedMatrix& o) const {
    if (n_ != o.n_) throw RankMismatch("localized matrix product");
    const Polynomial& f = ring_->f();
    LocalizedMatrix r(ring_, n_);
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) {
            Entry acc{Polynomial(ring_->ambient()), 0};
            for (std::uint32_t k = 0; k < n_; ++k) {
                const Entry &x = entry(i, k), &y = o.entry(k, j);
                if (x.num.is_zero() || y.num.is_zero()) continue;
                Entry term{x.num * y.num, x.fexp + y.fexp};
                // Add with denominators cleared to the larger exponent.
                std::uint32_t e = std::max(acc.fexp, term.fexp);
                Polynomial lhs = acc.num * f.pow(e - acc.fexp);
                Polynomial rhs = term.num * f.pow(e - term.fexp);
                acc = Entry{lhs + rhs, e};
                if (acc.num.is_zero()) acc.fexp = 0;
            }
            r.set_entry(i, j, std::move(acc));
        }
    return r;
}

bool LocalizedMatrix::operator==(const LocalizedMatrix& o) const {
    if (n_ != o.n_) return false;
    const Polynomial& f = ring_->f();
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) {
            const Entry &x = entry(i, j), &y = o.entry(i, j);
            std::uint32_t e = std::max(x.fexp, y.fexp);
            if (!(x.num * f.pow(e - x.fexp) == y.num * f.pow(e - y.fexp))) return false;
        }
    return true;
}

LocalizedMatrix LocalizedMatrix::block_diag3(const LocalizedMatrix& a,
                                             const LocalizedMatrix& b,
                                             const LocalizedMatrix& c) {
    LocalizedMatrix r(a.ring_, a.n_ + b.n_ + c.n_);
    auto place = [&](const LocalizedMatrix& m, std::uint32_t off) {
        for (std::uint32_t i = 0; i < m.n_; ++i)
            for (std::uint32_t j = 0; j < m.n_; ++j) r.set_entry(off + i, off + j, m.entry(i, j));
    };
    place(a, 0);
    place(b, a.n_);
    place(c, a.n_ + b.n_);
    return r;
}

std::string LocalizedMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (i) os << "; ";
        for (std::uint32_t j = 0; j < n_; ++j) {
            if (j) os << ", ";
            const Entry& e = entry(i, j);
            os << "(" << e.num.to_string() << ")";
            if (e.fexp) os << "/f^" << e.fexp;
        }
    }
    os << "]";
    return os.str();
}

/******** star scaffold ********/

StarScaffoldReport star_scaffold(const FreeMap& a, const MatrixFactorization& mf) {
    if (!(a == mf.a())) throw InvalidParameter("star_scaffold expects the A matrix of mf");
    const HRingPtr& R = mf.ring();
    std::uint32_t m = mf.size();

    LocalizedMatrix blockA = LocalizedMatrix::from_map(R, mf.a(), 0);
    LocalizedMatrix ainv = LocalizedMatrix::from_map(R, mf.b(), 1);  // A^-1 = B/f
    LocalizedMatrix eye = LocalizedMatrix::identity(R, m);

    LocalizedMatrix d = LocalizedMatrix::block_diag3(blockA, ainv, eye);
    LocalizedMatrix dp = LocalizedMatrix::block_diag3(blockA, eye, ainv);

    // P = [[-I,0,0],[0,0,I],[0,I,0]]; an involution, so P^-1 = P.
    LocalizedMatrix p(R, 3 * m);
    const RingPtr& Q = R->ambient();
    Polynomial one = Polynomial::constant(Q, Q->field().one());
    for (std::uint32_t i = 0; i < m; ++i) {
        p.set_entry(i, i, {-one, 0});
        p.set_entry(m + i, 2 * m + i, {one, 0});
        p.set_entry(2 * m + i, m + i, {one, 0});
    }
    if (!(p * p == LocalizedMatrix::identity(R, 3 * m)))
        throw IdentityFailed("P is not an involution");

    LocalizedMatrix conj = p * d * p;
    if (!(conj == dp)) throw IdentityFailed("P D(A) P^-1 != D'(A)");
    return StarScaffoldReport{std::move(d), std::move(dp), std::move(p), true};
}

/******** mirror image double short exact sequence ********/

namespace {

bool homology_vanishes(const PresentedMap& alpha, const PresentedMap& beta) {
    HomologyResult h = subquotient_homology(alpha, beta);
    return h.length.is_finite() && h.length.value() == 0;
}

// Checks exactness of 0 -> X --inj--> Y --proj--> Z -> 0 given the
// generator-level matrices of the two maps.
bool check_ses(const RModulePresentation& X, const RModulePresentation& Y,
               const RModulePresentation& Z, const FreeMap& inj, const FreeMap& proj,
               int spot_base, int& spots) {
    PresentedMap i(X, Y, inj);
    PresentedMap q(Y, Z, proj);
    struct SpotCheck {
        PresentedMap a, b;
    };
    SpotCheck checks[3] = {
        {PresentedMap::zero_into(X), i},
        {i, q},
        {q, PresentedMap::zero_from(Z)},
    };
    for (int s = 0; s < 3; ++s) {
        ++spots;
        if (!homology_vanishes(checks[s].a, checks[s].b))
            throw ExactnessFailed(spot_base + s, "sequence not exact");
    }
    return true;
}

}  // namespace

MirrorReport mirror_double_ses(const MatrixFactorization& mf) {
    const HRingPtr& R = mf.ring();
    const RingPtr& Q = R->ambient();
    std::uint32_t m = mf.size();

    RModulePresentation X = mf.cokernel("coker(A)");
    RModulePresentation Z = mf.transpose().cokernel("coker(B)");
    RModulePresentation Y = RModulePresentation::free_module(R, m);

    MirrorReport report;
    FreeMap eye = FreeMap::identity(Q, m);

    // E: 0 -> coker(A) --B--> R^m --1--> coker(B) -> 0
    report.e_exact = check_ses(X, Y, Z, mf.b(), eye, 0, report.spots_checked);
    // F: 0 -> coker(B) --A--> R^m --1--> coker(A) -> 0
    report.f_exact = check_ses(Z, Y, X, mf.a(), eye, 3, report.spots_checked);

    RModulePresentation XZ = RModulePresentation::direct_sum(X, Z);
    RModulePresentation ZX = RModulePresentation::direct_sum(Z, X);
    RModulePresentation YZX =
        RModulePresentation::direct_sum(Y, RModulePresentation::direct_sum(Z, X));

    auto block3x2 = [&](const FreeMap* b00, const FreeMap* b01, const FreeMap* b10,
                        const FreeMap* b11, const FreeMap* b20, const FreeMap* b21) {
        FreeMap out(Q, 3 * m, 2 * m);
        const FreeMap* blocks[3][2] = {{b00, b01}, {b10, b11}, {b20, b21}};
        for (std::uint32_t bi = 0; bi < 3; ++bi)
            for (std::uint32_t bj = 0; bj < 2; ++bj) {
                if (!blocks[bi][bj]) continue;
                for (std::uint32_t i = 0; i < m; ++i)
                    for (std::uint32_t j = 0; j < m; ++j)
                        out.set_entry(bi * m + i, bj * m + j, blocks[bi][bj]->entry(i, j));
            }
        return out;
    };
    auto block2x3 = [&](const FreeMap* b00, const FreeMap* b01, const FreeMap* b02,
                        const FreeMap* b10, const FreeMap* b11, const FreeMap* b12) {
        FreeMap out(Q, 2 * m, 3 * m);
        const FreeMap* blocks[2][3] = {{b00, b01, b02}, {b10, b11, b12}};
        for (std::uint32_t bi = 0; bi < 2; ++bi)
            for (std::uint32_t bj = 0; bj < 3; ++bj) {
                if (!blocks[bi][bj]) continue;
                for (std::uint32_t i = 0; i < m; ++i)
                    for (std::uint32_t j = 0; j < m; ++j)
                        out.set_entry(bi * m + i, bj * m + j, blocks[bi][bj]->entry(i, j));
            }
        return out;
    };

    // Row 1: X+Z -> Y+Z+X -> Z+X with [[0,j],[0,0],[1,0]] and [[0,1,0],[q,0,0]].
    FreeMap row1_in = block3x2(nullptr, &mf.a(), nullptr, nullptr, &eye, nullptr);
    FreeMap row1_out = block2x3(nullptr, &eye, nullptr, &eye, nullptr, nullptr);
    report.row1_exact = check_ses(XZ, YZX, ZX, row1_in, row1_out, 6, report.spots_checked);

    // Row 2: [[i,0],[0,1],[0,0]] and [[p,0,0],[0,0,1]].
    FreeMap row2_in = block3x2(&mf.b(), nullptr, nullptr, &eye, nullptr, nullptr);
    FreeMap row2_out = block2x3(&eye, nullptr, nullptr, nullptr, nullptr, &eye);
    report.row2_exact = check_ses(XZ, YZX, ZX, row2_in, row2_out, 9, report.spots_checked);

    return report;
}

}  // namespace htheta
