#pragma once

// Exact arithmetic in Q_p on rational representatives.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace padic {

using Int = mpz_class;
using Rat = mpq_class;
using Prime = unsigned long;

/// Input that the engine refuses to handle (zero polynomial, quantifiers, ...).
class UnsupportedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured depth or recursion cap was reached.
class BoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A valuation: an integer or +infinity (the order of zero).
class Val {
public:
    Val() = default;
    Val(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

    static Val inf() {
        Val r;
        r.inf_ = true;
        return r;
    }

    bool is_inf() const { return inf_; }
    std::int64_t value() const {
        if (inf_) throw std::logic_error("Val: value() of infinity");
        return v_;
    }

    friend Val operator+(Val a, Val b) {
        if (a.inf_ || b.inf_) return inf();
        return Val(a.v_ + b.v_);
    }
    friend bool operator==(Val a, Val b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator!=(Val a, Val b) { return !(a == b); }
    friend bool operator<(Val a, Val b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(Val a, Val b) { return b < a; }
    friend bool operator<=(Val a, Val b) { return !(b < a); }
    friend bool operator>=(Val a, Val b) { return !(a < b); }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    std::int64_t v_ = 0;
    bool inf_ = false;
};

inline Val min(Val a, Val b) { return a < b ? a : b; }
inline std::ostream& operator<<(std::ostream& os, Val v) { return os << v.str(); }

/// First `depth` base-p digits of the unit part of a nonzero element.
struct UnitDigits {
    int depth = 1;
    Int digits;  // unit residue mod p^depth

    friend bool operator==(const UnitDigits&, const UnitDigits&) = default;
};

/// rv at digit depth d: ZERO, or (valuation, unit digits mod p^d).
struct RvData {
    bool zero = true;
    int depth = 1;
    std::int64_t valuation = 0;
    Int unit;

    static RvData make_zero(int depth = 1) {
        RvData r;
        r.depth = depth;
        return r;
    }
    static RvData make(int depth, std::int64_t valuation, Int unit) {
        RvData r;
        r.zero = false;
        r.depth = depth;
        r.valuation = valuation;
        r.unit = std::move(unit);
        return r;
    }

    /// Natural projection to a smaller depth.
    RvData project(int to_depth, Prime p) const;

    friend bool operator==(const RvData& a, const RvData& b) {
        if (a.zero || b.zero) return a.zero == b.zero;
        return a.depth == b.depth && a.valuation == b.valuation && a.unit == b.unit;
    }
};

bool is_prime(Prime p);
void require_prime(Prime p);

Int pow_p(Prime p, std::int64_t k);       // p^k, k >= 0
Rat rat_pow_p(Prime p, std::int64_t k);   // p^k, any sign

/// Multiplicity of p in a nonzero integer; removes the factor from n.
std::int64_t remove_p(Int& n, Prime p);

Val ord(const Rat& x, Prime p);
Val ord(const Int& x, Prime p);

UnitDigits unit_digits(const Rat& x, Prime p, int d);
RvData rv(const Rat& x, Prime p, int d);

/// Reduce a p-integral rational modulo p^k to its representative in [0, p^k).
Int reduce_mod(const Rat& x, Prime p, std::int64_t k);

/// A rational t with ord(x - t) >= n whose numerator stays small: the
/// base-p expansion of x cut off below p^n.
Rat truncate(const Rat& x, Prime p, std::int64_t n);

/// Number of units modulo p^d.
Int unit_count(Prime p, int d);

std::string to_string(const Rat& x);
std::string to_string(const RvData& r);

}  // namespace padic
