#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

#include "dtn/error.hpp"

namespace dtn {

/// Time values and constraint weights. All arithmetic goes through the
/// checked helpers below; wraparound is never silent.
using Weight = std::int64_t;

namespace checked {

inline Weight add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("weight overflow in addition");
    return r;
}

inline Weight sub(Weight a, Weight b) {
    Weight r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("weight overflow in subtraction");
    return r;
}

inline Weight mul(Weight a, Weight b) {
    Weight r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("weight overflow in multiplication");
    return r;
}

inline Weight neg(Weight a) { return sub(0, a); }

inline Weight abs(Weight a) { return a < 0 ? neg(a) : a; }

}  // namespace checked

/// A shortest-path length: either a finite weight or +infinity.
/// Infinity is a distinct state, not a large sentinel number.
class Distance {
public:
    constexpr Distance() noexcept = default;  // +infinity
    constexpr explicit Distance(Weight v) noexcept : value_(v), finite_(true) {}

    static constexpr Distance infinity() noexcept { return Distance{}; }

    constexpr bool finite() const noexcept { return finite_; }
    constexpr bool infinite() const noexcept { return !finite_; }

    Weight value() const {
        if (!finite_) throw PreconditionError("value() of an infinite distance");
        return value_;
    }

    /// Saturating at +infinity, checked otherwise.
    friend Distance operator+(Distance d, Weight w) {
        if (!d.finite_) return d;
        return Distance(checked::add(d.value_, w));
    }

    friend constexpr bool operator==(const Distance& a, const Distance& b) noexcept {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }

    friend constexpr std::strong_ordering operator<=>(const Distance& a, const Distance& b) noexcept {
        if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
        return a.value_ <=> b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Distance& d) {
        if (d.finite_) return os << d.value_;
        return os << "+inf";
    }

private:
    Weight value_ = 0;
    bool finite_ = false;
};

}  // namespace dtn
