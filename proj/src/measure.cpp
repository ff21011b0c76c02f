#include "padic/measure.hpp"

#include <sstream>

namespace padic {

namespace {

// sum_{k=0}^{n-1} q^k, or the full series when n is empty (|q| < 1 assumed).
Rat geometric(const Rat& q, std::optional<std::int64_t> n) {
    if (!n) return Rat(1) / (Rat(1) - q);
    Rat qn = 1;
    for (std::int64_t i = 0; i < *n; ++i) qn *= q;
    return (Rat(1) - qn) / (Rat(1) - q);
}

std::optional<std::int64_t> term_count(const MRange& r) {
    if (!r.hi) return std::nullopt;
    return r.count();
}

}  // namespace

Rat cell_measure(const Cell1& c, Prime p) {
    if (c.is_point() || c.empty()) return 0;
    Rat first = Rat(c.residue.count(p)) * rat_pow_p(p, -c.range.lo - c.residue.depth);
    Rat out = first * geometric(rat_pow_p(p, -c.range.step), term_count(c.range));
    out.canonicalize();
    return out;
}

Rat domain_measure(const Domain& d, Prime p) { return rat_pow_p(p, -d.radius); }

Rat measure(const Decomposition& d, bool kept_only) {
    Rat total = 0;
    for (const auto& c : d.cells)
        if (!kept_only || c.keep) total += cell_measure(c, d.p);
    return total;
}

Rat measure_of_order(const Decomposition& d, const Poly& f, std::int64_t m) {
    Rat total = 0;
    for (const auto& c : d.cells) {
        if (c.is_point()) continue;
        const OrderLaw* law = c.law_for(f);
        if (!law) throw std::invalid_argument("measure_of_order: cell without an order law for f");
        if (law->e0.is_inf()) continue;
        const std::int64_t e0 = law->e0.value();
        if (law->i0 == 0) {
            if (e0 == m) total += cell_measure(c, d.p);
            continue;
        }
        if ((m - e0) % law->i0 != 0) continue;
        std::int64_t shell = (m - e0) / law->i0;
        if (!c.range.contains(shell)) continue;
        total += Rat(c.residue.count(d.p)) * rat_pow_p(d.p, -shell - c.residue.depth);
    }
    total.canonicalize();
    return total;
}

// ---------------------------------------------------------------- ZetaFn

namespace {

Poly monomial_t(std::int64_t k) { return Poly::monomial(Rat(1), static_cast<int>(k)); }

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw std::logic_error("ZetaFn: inexact division");
    return q;
}

}  // namespace

ZetaFn make_zeta(Poly num, Poly den, std::int64_t low) {
    if (den.is_zero()) throw std::invalid_argument("ZetaFn: zero denominator");
    ZetaFn z;
    if (num.is_zero()) {
        z.num = Poly();
        z.den = Poly{1};
        return z;
    }
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    // Pull powers of t out of the denominator into the offset.
    while (den.coeff(0) == 0) {
        den = exact_div(den, monomial_t(1));
        --low;
    }
    while (low < 0 && num.coeff(0) == 0) {
        num = exact_div(num, monomial_t(1));
        ++low;
    }
    Rat c = den.coeff(0);
    z.num = (Rat(1) / c) * num;
    z.den = (Rat(1) / c) * den;
    z.low = low;
    return z;
}

Rat ZetaFn::at(const Rat& t) const {
    Rat v = num.eval(t) / den.eval(t);
    if (low >= 0) {
        for (std::int64_t i = 0; i < low; ++i) v *= t;
    } else {
        for (std::int64_t i = 0; i < -low; ++i) v /= t;
    }
    return v;
}

std::vector<Rat> ZetaFn::series(int n) const {
    std::vector<Rat> c(n);
    for (int k = 0; k < n; ++k) {
        Rat v = num.coeff(k);
        for (int j = 1; j <= k; ++j) v -= den.coeff(j) * c[k - j];
        c[k] = v / den.coeff(0);
    }
    return c;
}

std::string ZetaFn::str() const {
    std::ostringstream os;
    if (low != 0) os << "t^" << low << " * ";
    os << "(" << num.str("t") << ") / (" << den.str("t") << ")";
    return os.str();
}

ZetaFn igusa_zeta(const Decomposition& d, const Poly& f) {
    if (f.is_zero()) throw UnsupportedInput("igusa_zeta: zero polynomial");
    const Prime p = d.p;
    struct Part {
        Rat coeff;
        std::int64_t start;  // exponent of t in the first term
        std::int64_t ratio_exp;
        Rat ratio;
        std::optional<std::int64_t> n;
    };
    std::vector<Part> parts;
    std::int64_t lowest = 0;
    for (const auto& c : d.cells) {
        if (c.is_point() || c.empty()) continue;
        const OrderLaw* law = c.law_for(f);
        if (!law) throw std::invalid_argument("igusa_zeta: cell without an order law for f");
        if (law->e0.is_inf()) continue;
        Part pt;
        pt.coeff = Rat(c.residue.count(p)) * rat_pow_p(p, -c.residue.depth - c.range.lo);
        pt.start = law->e0.value() + law->i0 * c.range.lo;
        pt.ratio_exp = law->i0 * c.range.step;
        pt.ratio = rat_pow_p(p, -c.range.step);
        pt.n = term_count(c.range);
        lowest = std::min(lowest, pt.start);
        parts.push_back(pt);
    }
    const std::int64_t shift = -lowest;
    Poly num;
    Poly den{1};
    for (const auto& pt : parts) {
        // coeff * t^start * (1 - (q t^r)^n) / (1 - q t^r)
        Poly qt = Poly::monomial(pt.ratio, static_cast<int>(pt.ratio_exp));
        Poly one{1};
        Poly n_part, d_part;
        if (pt.ratio_exp == 0) {
            Rat s = pt.coeff * geometric(pt.ratio, pt.n);
            n_part = Poly::monomial(s, static_cast<int>(pt.start + shift));
            d_part = one;
        } else {
            Poly top = one;
            if (pt.n) {
                Poly pw = one;
                for (std::int64_t i = 0; i < *pt.n; ++i) pw = pw * qt;
                top = one - pw;
            }
            n_part = Poly::monomial(pt.coeff, static_cast<int>(pt.start + shift)) * top;
            d_part = one - qt;
        }
        Poly g = gcd(den, d_part);
        Poly l_over_den = exact_div(d_part, g);
        Poly l_over_d = exact_div(den, g);
        num = num * l_over_den + n_part * l_over_d;
        den = den * l_over_den;
    }
    return make_zeta(num, den, -shift);
}

}  // namespace padic
