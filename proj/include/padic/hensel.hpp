#pragma once

// Hensel roots: condition checking, the Henselian functions h_{m,d}, and
// roots known to refinable p-adic precision.

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <variant>

#include "padic/core.hpp"
#include "padic/poly.hpp"

namespace padic {

/// A root y0 of `witness` in Q_p with ord(y0 - approx) >= precision.
///
/// The witness is squarefree with primitive integer coefficients. Every
/// value carries a Newton-polygon certificate: y0 is the only root of the
/// witness in the ball ord(y - approx) >= precision, and
/// ord witness(approx) = precision + ord witness'(approx).
/// precision == inf means approx is the root itself.
struct PadicApprox {
    Prime p = 2;
    Poly witness;
    Rat approx;
    Val precision;
    RvData rv_tag;

    bool exact() const { return precision.is_inf(); }
};

/// Radius of the certified isolating ball of a root of `w` near `a`, if the
/// Newton polygon of w at a has a single edge of length one on top.
std::optional<Val> root_certificate(const Poly& w, const Rat& a, Prime p);

/// Conditions (h0b), (h1), (h2) at x, where depth d means 1 + n M = 1 + p^d Z_p
/// (ord n = d - 1). Returns the smallest qualifying positive index.
std::optional<int> check_conditions(std::span<const Rat> a, const Rat& x, const RvData& x0,
                                    int d, Prime p);

/// The Henselian function h_{m,d}(a_0..a_m, x0). nullopt plays the role of
/// the value 0 in "all other cases".
std::optional<PadicApprox> h(std::span<const Rat> a, const RvData& x0, Prime p);

/// Same root to precision >= target via Newton steps.
PadicApprox refine_root(const PadicApprox& r, std::int64_t target);

/// ord f'(y0): the valuation of the linear Taylor coefficient at the root.
Val order_law_at_root(const Poly& f, const PadicApprox& r);

/// Exact test q(y0) == 0.
bool vanishes_at(const Poly& q, const PadicApprox& r);

/// ord q(y0) for q(y0) != 0, refining r as needed.
Val stable_ord(const Poly& q, PadicApprox& r);
/// Unit digits of q(y0) to depth d, q(y0) != 0.
UnitDigits stable_unit(const Poly& q, PadicApprox& r, int d);

/// Default working precision for a fresh root.
std::int64_t default_precision(const PadicApprox& r, int d);

/// A point of Q_p: an exact rational or a certified Hensel root.
///
/// Copies share a refinement cache, so approximations computed through one
/// copy are reused by all of them. The cache is internally synchronized.
class Point {
public:
    Point();
    explicit Point(Prime p, Rat value);
    explicit Point(PadicApprox root);

    Prime prime() const { return p_; }
    bool exact() const;
    /// Exact value; only for exact points.
    Rat value() const;
    /// Current root data (exact points return a trivial approximation).
    PadicApprox root() const;
    /// A rational t with ord(t - point) >= prec.
    Rat approx(std::int64_t prec) const;

    Val ord_diff(const Rat& y) const;
    Val ord_diff(const Point& other) const;
    bool same(const Point& other) const;

    /// ord q(point), infinity when q vanishes there.
    Val ord_of(const Poly& q) const;
    /// Unit digits of q(point); q(point) != 0.
    UnitDigits unit_of(const Poly& q, int d) const;
    /// Unit digits of (point - c) for a rational c != point.
    UnitDigits unit_of_diff(const Rat& c, int d) const;

    /// Affine image a*point + b.
    Point affine(const Rat& a, const Rat& b) const;

    std::string str() const;

private:
    struct State {
        std::mutex mu;
        PadicApprox r;
        std::optional<Rat> value;
    };
    Prime p_ = 2;
    std::shared_ptr<State> s_;
};

}  // namespace padic
