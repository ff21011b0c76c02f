#include "padic/hensel.hpp"

#include <algorithm>

namespace padic {

namespace {

constexpr std::size_t kMaxCandidates = 200000;

Poly integer_witness(const Poly& f) {
    return squarefree_part(f).primitive();
}

// Minimum of ord(a_i) + i*m over the coefficients.
Val min_term(std::span<const Rat> a, std::int64_t m, Prime p) {
    Val best = Val::inf();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Val o = ord(a[i], p);
        if (o.is_inf()) continue;
        best = min(best, o + Val(static_cast<std::int64_t>(i) * m));
    }
    return best;
}

std::optional<Rat> rational_reconstruct(const Int& a, const Int& mod) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(mod / 2).get_mpz_t());
    Int r0 = mod, r1 = a, s0 = 0, s1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (s1 == 0 || abs(s1) > bound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), mod.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rat r(r1, s1);
    r.canonicalize();
    return r;
}

// Tries to recognise the root as a small-height rational.
bool try_make_exact(PadicApprox& r) {
    if (r.exact() || r.approx == 0) return false;
    const Prime p = r.p;
    std::int64_t v = ord(r.approx, p).value();
    std::int64_t shift = v < 0 ? -v : 0;
    std::int64_t digits = r.precision.value() + shift;
    if (digits < 4) return false;
    Rat scaled = r.approx * rat_pow_p(p, shift);
    Int mod = pow_p(p, digits);
    auto q = rational_reconstruct(reduce_mod(scaled, p, digits), mod);
    if (!q) return false;
    Rat cand = *q / rat_pow_p(p, shift);
    cand.canonicalize();
    if (r.witness.eval(cand) != 0) return false;
    if (ord(cand - r.approx, p) < r.precision) return false;
    r.approx = cand;
    r.precision = Val::inf();
    return true;
}

}  // namespace

std::optional<Val> root_certificate(const Poly& w, const Rat& a, Prime p) {
    Poly t = w.taylor_shift(a);
    if (t.coeff(1) == 0) return std::nullopt;
    if (t.coeff(0) == 0) return Val::inf();
    std::int64_t o0 = ord(t.coeff(0), p).value();
    std::int64_t o1 = ord(t.coeff(1), p).value();
    std::int64_t rho = o0 - o1;
    for (int i = 2; i <= t.degree(); ++i) {
        Val oi = ord(t.coeff(i), p);
        if (oi.is_inf()) continue;
        if (!(oi.value() + i * rho > o1 + rho)) return std::nullopt;
    }
    return Val(rho);
}

std::optional<int> check_conditions(std::span<const Rat> a, const Rat& x, const RvData& x0,
                                    int d, Prime p) {
    if (x == 0) throw std::invalid_argument("check_conditions: x must be nonzero");
    if (x0.zero || x0.depth != d || !(rv(x, p, d) == x0))
        throw std::invalid_argument("check_conditions: rv(x) does not match x0");
    const std::int64_t m = ord(x, p).value();
    Val mu = min_term(a, m, p);
    if (mu.is_inf()) return std::nullopt;
    std::optional<int> i0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        Val o = ord(a[i], p);
        if (!o.is_inf() && o + Val(static_cast<std::int64_t>(i) * m) == mu) {
            i0 = static_cast<int>(i);
            break;
        }
    }
    if (!i0) return std::nullopt;
    Poly f{std::vector<Rat>(a.begin(), a.end())};
    Val fx = ord(f.eval(x), p);
    Val dfx = ord(f.derivative().eval(x), p);
    // depth d stands for 1 + n M = 1 + p^d Z_p, so ord n = d - 1
    const std::int64_t on = d - 1;
    // (h1): ord f(x) > ord(n^2 a_{i0} x^{i0})
    if (!(fx > mu + Val(2 * on))) return std::nullopt;
    // (h2): ord f'(x) <= ord(n a_{i0} x^{i0-1})
    if (!(dfx <= mu + Val(on - m))) return std::nullopt;
    return i0;
}

std::int64_t default_precision(const PadicApprox& r, int d) {
    Poly dw = r.witness.derivative();
    Val o = ord(dw.eval(r.approx), r.p);
    std::int64_t od = o.is_inf() ? 0 : std::max<std::int64_t>(o.value(), 0);
    return 2 * (od + d) + 4;
}

std::optional<PadicApprox> h(std::span<const Rat> a, const RvData& x0, Prime p) {
    if (x0.zero) return std::nullopt;
    Poly f{std::vector<Rat>(a.begin(), a.end())};
    if (f.degree() < 1) return std::nullopt;
    const int d = x0.depth;
    const std::int64_t m = x0.valuation;
    // Conditions are homogeneous in the coefficients, so the primitive
    // squarefree part qualifies exactly when a simple root does.
    Poly w = integer_witness(f);
    Poly dw = w.derivative();
    Val disc = resultant_val(w, dw, p);
    std::int64_t s_max = 2 * (disc.is_inf() ? 0 : disc.value()) + 2 * d + 2;
    const std::vector<Rat>& wa = w.coeffs();
    Val mu = min_term(wa, m, p);
    if (mu.is_inf()) return std::nullopt;

    const Rat scale = rat_pow_p(p, m);
    std::vector<Int> layer{x0.unit};
    for (std::int64_t s = 0; s <= s_max && !layer.empty(); ++s) {
        const Int mod = pow_p(p, d + s);
        std::vector<Int> next;
        for (const Int& u : layer) {
            Rat x = scale * Rat(u);
            if (check_conditions(wa, x, x0, d, p)) {
                auto rho = root_certificate(w, x, p);
                if (!rho) throw std::logic_error("h: Hensel conditions without Newton certificate");
                PadicApprox r{p, w, x, *rho, x0};
                try_make_exact(r);
                if (!r.exact()) r = refine_root(r, default_precision(r, d));
                r.rv_tag = x0;
                return r;
            }
            // Balls on which ord w is constant hold no root; a root elsewhere in
            // the class is reached through its own ball.
            Poly t = w.taylor_shift(x);
            Val o0 = ord(t.coeff(0), p);
            Val rest = Val::inf();
            for (int i = 1; i <= t.degree(); ++i)
                rest = min(rest, ord(t.coeff(i), p) + Val(i * (m + d + s)));
            if (o0 < rest) continue;
            for (Prime digit = 0; digit < p; ++digit) next.push_back(u + mod * Int(digit));
        }
        if (next.size() > kMaxCandidates)
            throw BoundExceeded("h: candidate search exceeded its size bound");
        layer = std::move(next);
    }
    return std::nullopt;
}

PadicApprox refine_root(const PadicApprox& r, std::int64_t target) {
    PadicApprox cur = r;
    const Prime p = cur.p;
    const Poly dw = cur.witness.derivative();
    while (!cur.exact() && cur.precision.value() < target) {
        Rat fa = cur.witness.eval(cur.approx);
        Rat da = dw.eval(cur.approx);
        Rat next = cur.approx - fa / da;
        next.canonicalize();
        auto rho = root_certificate(cur.witness, next, p);
        if (!rho || *rho <= cur.precision) throw std::logic_error("refine_root: Newton step lost the certificate");
        if (!rho->is_inf()) {
            Rat t = truncate(next, p, rho->value());
            auto rho_t = root_certificate(cur.witness, t, p);
            if (rho_t && *rho_t >= *rho) {
                next = t;
                rho = rho_t;
            }
        }
        cur.approx = next;
        cur.precision = *rho;
        try_make_exact(cur);
    }
    return cur;
}

bool vanishes_at(const Poly& q, const PadicApprox& r0) {
    if (q.is_zero()) return true;
    if (r0.exact()) return q.eval(r0.approx) == 0;
    Poly g = gcd(q, r0.witness);
    if (g.degree() <= 0) return false;
    Poly rest = r0.witness.divmod(g).first;
    if (rest.degree() <= 0) return true;
    // y0 is a simple root of witness = g * rest, so exactly one factor vanishes.
    PadicApprox r = r0;
    for (;;) {
        for (int which = 0; which < 2; ++which) {
            const Poly& t = which == 0 ? g : rest;
            Poly ts = t.taylor_shift(r.approx);
            Val c0 = ord(ts.coeff(0), r.p);
            Val bound = Val::inf();
            for (int i = 1; i <= ts.degree(); ++i)
                bound = min(bound, ord(ts.coeff(i), r.p) + Val(i * r.precision.value()));
            if (c0 < bound) return which == 1;  // this factor is nonzero at y0
        }
        r = refine_root(r, 2 * r.precision.value() + 2);
        if (r.exact()) return q.eval(r.approx) == 0;
    }
}

namespace {

// ord(q(y0) - c0) lower bound using the Taylor expansion at the approximation.
Val taylor_error_bound(const Poly& ts, const PadicApprox& r) {
    Val bound = Val::inf();
    for (int i = 1; i <= ts.degree(); ++i)
        bound = min(bound, ord(ts.coeff(i), r.p) + Val(i * r.precision.value()));
    return bound;
}

}  // namespace

Val stable_ord(const Poly& q, PadicApprox& r) {
    for (;;) {
        if (r.exact()) return ord(q.eval(r.approx), r.p);
        Poly ts = q.taylor_shift(r.approx);
        Val c0 = ord(ts.coeff(0), r.p);
        if (c0 < taylor_error_bound(ts, r)) return c0;
        r = refine_root(r, 2 * r.precision.value() + 2);
    }
}

UnitDigits stable_unit(const Poly& q, PadicApprox& r, int d) {
    for (;;) {
        if (r.exact()) return unit_digits(q.eval(r.approx), r.p, d);
        Poly ts = q.taylor_shift(r.approx);
        Val c0 = ord(ts.coeff(0), r.p);
        if (c0 + Val(d) <= taylor_error_bound(ts, r)) return unit_digits(ts.coeff(0), r.p, d);
        r = refine_root(r, 2 * r.precision.value() + 2);
    }
}

Val order_law_at_root(const Poly& f, const PadicApprox& r) {
    if (!vanishes_at(f, r)) throw std::invalid_argument("order_law_at_root: not a root of f");
    Poly df = f.derivative();
    if (vanishes_at(df, r)) throw std::invalid_argument("order_law_at_root: root is not simple");
    PadicApprox tmp = r;
    return stable_ord(df, tmp);
}

// ---------------------------------------------------------------- Point

Point::Point() : Point(2, Rat(0)) {}

Point::Point(Prime p, Rat value) : p_(p), s_(std::make_shared<State>()) {
    value.canonicalize();
    s_->value = value;
    s_->r = PadicApprox{p, Poly::linear(-value, Rat(1)).primitive(), value, Val::inf(), RvData{}};
}

Point::Point(PadicApprox root) : p_(root.p), s_(std::make_shared<State>()) {
    if (root.exact()) s_->value = root.approx;
    s_->r = std::move(root);
}

bool Point::exact() const {
    std::lock_guard lock(s_->mu);
    return s_->value.has_value();
}

Rat Point::value() const {
    std::lock_guard lock(s_->mu);
    if (!s_->value) throw std::logic_error("Point::value: point is not exact");
    return *s_->value;
}

PadicApprox Point::root() const {
    std::lock_guard lock(s_->mu);
    return s_->r;
}

Rat Point::approx(std::int64_t prec) const {
    std::lock_guard lock(s_->mu);
    if (s_->value) return *s_->value;
    if (s_->r.precision.value() < prec) {
        s_->r = refine_root(s_->r, prec);
        if (s_->r.exact()) s_->value = s_->r.approx;
    }
    return s_->r.approx;
}

Val Point::ord_diff(const Rat& y) const {
    for (;;) {
        PadicApprox r = root();
        if (r.exact()) return ord(y - r.approx, p_);
        Val v = ord(y - r.approx, p_);
        if (v < r.precision) return v;
        // y lies in the isolating ball of the root.
        if (r.witness.eval(y) == 0) {
            std::lock_guard lock(s_->mu);
            s_->value = y;
            s_->r.approx = y;
            s_->r.precision = Val::inf();
            return Val::inf();
        }
        approx(2 * r.precision.value() + 2);
    }
}

bool Point::same(const Point& other) const {
    if (s_ == other.s_) return true;
    if (exact() && other.exact()) return value() == other.value();
    if (exact()) return other.ord_diff(value()).is_inf();
    if (other.exact()) return ord_diff(other.value()).is_inf();
    PadicApprox a = root(), b = other.root();
    Poly g = gcd(a.witness, b.witness);
    if (g.degree() <= 0) return false;
    if (!vanishes_at(g, a) || !vanishes_at(g, b)) return false;
    Poly gi = g.primitive();
    for (;;) {
        a = root();
        auto rho = root_certificate(gi, a.approx, p_);
        if (rho && !rho->is_inf()) {
            Rat bt = other.approx(rho->value());
            return ord(bt - a.approx, p_) >= *rho;
        }
        approx(2 * a.precision.value() + 2);
    }
}

Val Point::ord_diff(const Point& other) const {
    if (other.exact()) return ord_diff(other.value());
    if (exact()) return other.ord_diff(value());
    if (same(other)) return Val::inf();
    std::int64_t prec = 8;
    for (;;) {
        Rat a = approx(prec), b = other.approx(prec);
        Val v = ord(a - b, p_);
        if (v < Val(prec)) return v;
        prec *= 2;
    }
}

Val Point::ord_of(const Poly& q) const {
    if (exact()) return ord(q.eval(value()), p_);
    PadicApprox r = root();
    if (vanishes_at(q, r)) return Val::inf();
    Val v = stable_ord(q, r);
    return v;
}

UnitDigits Point::unit_of(const Poly& q, int d) const {
    if (exact()) return unit_digits(q.eval(value()), p_, d);
    PadicApprox r = root();
    return stable_unit(q, r, d);
}

UnitDigits Point::unit_of_diff(const Rat& c, int d) const {
    Val v = ord_diff(c);
    if (v.is_inf()) throw std::invalid_argument("Point::unit_of_diff: zero difference");
    Rat a = approx(v.value() + d);
    return unit_digits(a - c, p_, d);
}

Point Point::affine(const Rat& a, const Rat& b) const {
    if (exact()) return Point(p_, a * value() + b);
    PadicApprox r = root();
    Rat inv = Rat(1) / a;
    PadicApprox out{p_, r.witness.compose_linear(inv, -b * inv).primitive(), a * r.approx + b,
                    r.precision + ord(a, p_), r.rv_tag};
    out.approx.canonicalize();
    return Point(std::move(out));
}

std::string Point::str() const {
    PadicApprox r = root();
    if (r.exact()) return r.approx.get_str();
    return "root(" + r.witness.str() + " ~ " + r.approx.get_str() + " + O(" + std::to_string(p_) +
           "^" + r.precision.str() + "))";
}

}  // namespace padic
