#include "htheta/freemod.hpp"

#include <algorithm>
#include <sstream>

namespace htheta {

FreeElement FreeElement::basis_vector(RingPtr ring, std::uint32_t rank, std::uint32_t comp) {
    FreeElement e(ring, rank);
    if (comp >= rank) throw InternalError("basis_vector component out of range");
    e.terms_.push_back({comp, Monomial(ring->nvars()), ring->field().one()});
    return e;
}

FreeElement FreeElement::from_component(const Polynomial& p, std::uint32_t rank,
                                        std::uint32_t comp) {
    FreeElement e(p.ring(), rank);
    if (comp >= rank) throw InternalError("from_component component out of range");
    e.terms_.reserve(p.terms().size());
    for (const auto& t : p.terms()) e.terms_.push_back({comp, t.mon, t.coeff});
    return e;
}

FreeElement FreeElement::from_terms(RingPtr ring, std::uint32_t rank,
                                    std::vector<ModTerm> terms) {
    const auto& ord = ring->order();
    const auto& K = ring->field();
    std::sort(terms.begin(), terms.end(), [&](const ModTerm& a, const ModTerm& b) {
        return ord.compare(a.comp, a.mon, b.comp, b.mon) > 0;
    });
    FreeElement e(std::move(ring), rank);
    for (auto& t : terms) {
        if (!e.terms_.empty() && e.terms_.back().comp == t.comp &&
            e.terms_.back().mon == t.mon) {
            e.terms_.back().coeff = K.add(e.terms_.back().coeff, t.coeff);
            if (K.is_zero(e.terms_.back().coeff)) e.terms_.pop_back();
        } else if (!K.is_zero(t.coeff)) {
            e.terms_.push_back(std::move(t));
        }
    }
    return e;
}

const ModTerm& FreeElement::leading() const {
    if (terms_.empty()) throw InternalError("leading term of zero element");
    return terms_[0];
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
    if (rank_ != o.rank_) throw RankMismatch("free element addition");
    const auto& ord = ring_->order();
    const auto& K = ring_->field();
    FreeElement r(ring_, rank_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ord.compare(terms_[i].comp, terms_[i].mon, o.terms_[j].comp, o.terms_[j].mon);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Coeff s = K.add(terms_[i].coeff, o.terms_[j].coeff);
            if (!K.is_zero(s)) r.terms_.push_back({terms_[i].comp, terms_[i].mon, s});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

FreeElement FreeElement::operator-() const {
    const auto& K = ring_->field();
    FreeElement r(ring_, rank_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.comp, t.mon, K.neg(t.coeff)});
    return r;
}

FreeElement FreeElement::operator-(const FreeElement& o) const { return *this + (-o); }

FreeElement FreeElement::times_term(const Monomial& m, const Coeff& c) const {
    const auto& K = ring_->field();
    FreeElement r(ring_, rank_);
    if (K.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Coeff p = K.mul(t.coeff, c);
        if (!K.is_zero(p)) r.terms_.push_back({t.comp, t.mon.times(m), std::move(p)});
    }
    return r;
}

FreeElement FreeElement::times_poly(const Polynomial& p) const {
    std::vector<ModTerm> out;
    out.reserve(terms_.size() * p.terms().size());
    const auto& K = ring_->field();
    for (const auto& pt : p.terms())
        for (const auto& t : terms_) {
            Coeff c = K.mul(t.coeff, pt.coeff);
            if (!K.is_zero(c)) out.push_back({t.comp, t.mon.times(pt.mon), std::move(c)});
        }
    return from_terms(ring_, rank_, std::move(out));
}

void FreeElement::sub_times_term_inplace(const FreeElement& g, const Monomial& m,
                                         const Coeff& c) {
    const auto& ord = ring_->order();
    const auto& K = ring_->field();
    std::vector<ModTerm> out;
    out.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    Monomial pm(0);
    Coeff pc;
    auto load_product = [&] {
        if (j < g.terms_.size()) {
            pm = g.terms_[j].mon.times(m);
            pc = K.neg(K.mul(g.terms_[j].coeff, c));
        }
    };
    load_product();
    while (i < terms_.size() && j < g.terms_.size()) {
        int cmp = ord.compare(terms_[i].comp, terms_[i].mon, g.terms_[j].comp, pm);
        if (cmp > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (cmp < 0) {
            out.push_back({g.terms_[j].comp, std::move(pm), std::move(pc)});
            ++j;
            load_product();
        } else {
            Coeff s = K.add(terms_[i].coeff, pc);
            if (!K.is_zero(s))
                out.push_back({terms_[i].comp, std::move(terms_[i].mon), std::move(s)});
            ++i;
            ++j;
            load_product();
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
    for (; j < g.terms_.size(); ++j, load_product())
        out.push_back({g.terms_[j].comp, std::move(pm), std::move(pc)});
    terms_ = std::move(out);
}

ModTerm FreeElement::take_leading() {
    if (terms_.empty()) throw InternalError("take_leading of zero element");
    ModTerm t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
}

FreeElement FreeElement::monic() const {
    if (is_zero()) return *this;
    return scale(ring_->field().inv(terms_[0].coeff));
}

Polynomial FreeElement::component(std::uint32_t comp) const {
    std::vector<PolyTerm> ts;
    for (const auto& t : terms_)
        if (t.comp == comp) ts.push_back({t.mon, t.coeff});
    return Polynomial::from_terms(ring_, std::move(ts));
}

bool FreeElement::operator==(const FreeElement& o) const {
    if (rank_ != o.rank_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].comp != o.terms_[i].comp || !(terms_[i].mon == o.terms_[i].mon) ||
            terms_[i].coeff != o.terms_[i].coeff)
            return false;
    }
    return true;
}

std::string FreeElement::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::uint32_t c = 0; c < rank_; ++c) {
        if (c) os << ", ";
        os << component(c).to_string();
    }
    os << ")";
    return os.str();
}

/******** FreeMap ********/

FreeMap::FreeMap(RingPtr ring, std::uint32_t rows, std::uint32_t cols, Interp interp)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), interp_(interp) {
    entries_.assign(static_cast<std::size_t>(rows) * cols, Polynomial(ring_));
}

FreeMap::FreeMap(RingPtr ring, std::uint32_t rows, std::uint32_t cols,
                 std::vector<Polynomial> row_major, Interp interp)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(row_major)),
      interp_(interp) {
    if (entries_.size() != static_cast<std::size_t>(rows) * cols)
        throw InternalError("FreeMap entry count mismatch");
    for (const auto& e : entries_)
        if (!same_ring(e.ring(), ring_)) throw RingMismatch("matrix entry ring");
}

FreeMap FreeMap::identity(RingPtr ring, std::uint32_t n) {
    FreeMap m(ring, n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        m.set_entry(i, i, Polynomial::constant(ring, ring->field().one()));
    return m;
}

FreeMap FreeMap::from_columns(RingPtr ring, std::uint32_t rows,
                              const std::vector<FreeElement>& cols, Interp interp) {
    FreeMap m(ring, rows, static_cast<std::uint32_t>(cols.size()), interp);
    for (std::uint32_t j = 0; j < cols.size(); ++j) {
        if (cols[j].rank() != rows) throw RankMismatch("from_columns rank");
        for (std::uint32_t i = 0; i < rows; ++i) m.set_entry(i, j, cols[j].component(i));
    }
    return m;
}

const Polynomial& FreeMap::entry(std::uint32_t i, std::uint32_t j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
}

void FreeMap::set_entry(std::uint32_t i, std::uint32_t j, Polynomial p) {
    entries_[static_cast<std::size_t>(i) * cols_ + j] = std::move(p);
}

FreeElement FreeMap::column(std::uint32_t j) const {
    std::vector<ModTerm> ts;
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (const auto& t : entry(i, j).terms()) ts.push_back({i, t.mon, t.coeff});
    return FreeElement::from_terms(ring_, rows_, std::move(ts));
}

std::vector<FreeElement> FreeMap::columns() const {
    std::vector<FreeElement> cs;
    cs.reserve(cols_);
    for (std::uint32_t j = 0; j < cols_; ++j) cs.push_back(column(j));
    return cs;
}

bool FreeMap::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

bool FreeMap::is_identity() const {
    if (rows_ != cols_) return false;
    const auto& K = ring_->field();
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0; j < cols_; ++j) {
            const auto& e = entry(i, j);
            if (i == j) {
                if (!e.is_constant() || !K.is_one(e.constant_term())) return false;
            } else if (!e.is_zero()) {
                return false;
            }
        }
    return true;
}

bool FreeMap::is_constant() const {
    for (const auto& e : entries_)
        if (!e.is_constant()) return false;
    return true;
}

FreeMap FreeMap::operator*(const FreeMap& o) const {
    if (!same_ring(ring_, o.ring_)) throw RingMismatch("matrix product");
    if (cols_ != o.rows_) throw RankMismatch("matrix product shape");
    FreeMap r(ring_, rows_, o.cols_);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0; j < o.cols_; ++j) {
            Polynomial acc(ring_);
            for (std::uint32_t k = 0; k < cols_; ++k) acc = acc + entry(i, k) * o.entry(k, j);
            r.set_entry(i, j, std::move(acc));
        }
    return r;
}

FreeMap FreeMap::operator+(const FreeMap& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw RankMismatch("matrix sum shape");
    FreeMap r(ring_, rows_, cols_, interp_);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0; j < cols_; ++j) r.set_entry(i, j, entry(i, j) + o.entry(i, j));
    return r;
}

FreeMap FreeMap::operator-() const {
    FreeMap r(ring_, rows_, cols_, interp_);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0; j < cols_; ++j) r.set_entry(i, j, -entry(i, j));
    return r;
}

FreeMap FreeMap::scale(const Polynomial& p) const {
    FreeMap r(ring_, rows_, cols_, interp_);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0; j < cols_; ++j) r.set_entry(i, j, entry(i, j) * p);
    return r;
}

FreeMap FreeMap::transpose() const {
    FreeMap r(ring_, cols_, rows_, interp_);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0; j < cols_; ++j) r.set_entry(j, i, entry(i, j));
    return r;
}

FreeMap FreeMap::hstack(const FreeMap& o) const {
    if (rows_ != o.rows_) throw RankMismatch("hstack rows");
    if (!same_ring(ring_, o.ring_)) throw RingMismatch("hstack");
    FreeMap r(ring_, rows_, cols_ + o.cols_, interp_);
    for (std::uint32_t i = 0; i < rows_; ++i) {
        for (std::uint32_t j = 0; j < cols_; ++j) r.set_entry(i, j, entry(i, j));
        for (std::uint32_t j = 0; j < o.cols_; ++j) r.set_entry(i, cols_ + j, o.entry(i, j));
    }
    return r;
}

FreeMap FreeMap::take_rows(std::uint32_t first_k) const {
    if (first_k > rows_) throw RankMismatch("take_rows");
    FreeMap r(ring_, first_k, cols_, interp_);
    for (std::uint32_t i = 0; i < first_k; ++i)
        for (std::uint32_t j = 0; j < cols_; ++j) r.set_entry(i, j, entry(i, j));
    return r;
}

FreeMap FreeMap::drop_row(std::uint32_t row) const {
    FreeMap r(ring_, rows_ - 1, cols_, interp_);
    for (std::uint32_t i = 0, ri = 0; i < rows_; ++i) {
        if (i == row) continue;
        for (std::uint32_t j = 0; j < cols_; ++j) r.set_entry(ri, j, entry(i, j));
        ++ri;
    }
    return r;
}

FreeMap FreeMap::drop_col(std::uint32_t col) const {
    FreeMap r(ring_, rows_, cols_ - 1, interp_);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0, rj = 0; j < cols_; ++j) {
            if (j == col) continue;
            r.set_entry(i, rj++, entry(i, j));
        }
    return r;
}

FreeMap FreeMap::block_diag(const FreeMap& a, const FreeMap& b) {
    if (!same_ring(a.ring_, b.ring_)) throw RingMismatch("block_diag");
    FreeMap r(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_, a.interp_);
    for (std::uint32_t i = 0; i < a.rows_; ++i)
        for (std::uint32_t j = 0; j < a.cols_; ++j) r.set_entry(i, j, a.entry(i, j));
    for (std::uint32_t i = 0; i < b.rows_; ++i)
        for (std::uint32_t j = 0; j < b.cols_; ++j)
            r.set_entry(a.rows_ + i, a.cols_ + j, b.entry(i, j));
    return r;
}

FreeMap FreeMap::kron_identity(std::uint32_t n) const {
    FreeMap r(ring_, rows_ * n, cols_ * n, interp_);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (std::uint32_t j = 0; j < cols_; ++j) {
            if (entry(i, j).is_zero()) continue;
            for (std::uint32_t s = 0; s < n; ++s) r.set_entry(i * n + s, j * n + s, entry(i, j));
        }
    return r;
}

bool FreeMap::operator==(const FreeMap& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < entries_.size(); ++k)
        if (!(entries_[k] == o.entries_[k])) return false;
    return true;
}

std::string FreeMap::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::uint32_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::uint32_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << entry(i, j).to_string();
        }
    }
    os << "]";
    return os.str();
}

}  // namespace htheta
