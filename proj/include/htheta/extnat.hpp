#pragma once

#include <cstdint>
#include <string>

#include "htheta/errors.hpp"

namespace htheta {

// Natural number extended with an infinite value, used for lengths and
// k-vector-space dimensions of possibly unbounded quotients.
class ExtNat {
public:
    ExtNat() : finite_(true), v_(0) {}
    static ExtNat infinite() {
        ExtNat n;
        n.finite_ = false;
        return n;
    }
    static ExtNat of(std::uint64_t v) {
        ExtNat n;
        n.v_ = v;
        return n;
    }

    bool is_finite() const { return finite_; }
    std::uint64_t value() const {
        if (!finite_) throw InternalError("value() on infinite ExtNat");
        return v_;
    }

    ExtNat operator+(const ExtNat& o) const {
        if (!finite_ || !o.finite_) return infinite();
        return of(v_ + o.v_);
    }

    bool operator==(const ExtNat& o) const {
        return finite_ == o.finite_ && (!finite_ || v_ == o.v_);
    }

    std::string to_string() const {
        return finite_ ? std::to_string(v_) : std::string("infinite");
    }

private:
    bool finite_;
    std::uint64_t v_ = 0;
};

}  // namespace htheta
