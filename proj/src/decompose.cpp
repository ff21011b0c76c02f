#include "padic/decompose.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace padic {

int max_depth_cap() {
    if (const char* env = std::getenv("PADIC_CELLS_MAX_DEPTH")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 48;
}

std::vector<Poly> taylor_polys(const Poly& f) {
    std::vector<Poly> out;
    Poly cur = f;
    Rat fact = 1;
    for (int i = 0; i <= std::max(f.degree(), 0); ++i) {
        if (i > 0) {
            cur = cur.derivative();
            fact *= i;
        }
        out.push_back(Rat(1) / fact * cur);
    }
    return out;
}

namespace {

std::vector<Val> taylor_vals(const Poly& f, const Point& c) {
    std::vector<Val> v;
    for (const Poly& t : taylor_polys(f)) v.push_back(t.is_zero() ? Val::inf() : c.ord_of(t));
    return v;
}

Val min_term(const std::vector<Val>& vb, std::int64_t m) {
    Val best = Val::inf();
    for (std::size_t i = 0; i < vb.size(); ++i)
        best = min(best, vb[i] + Val(static_cast<std::int64_t>(i) * m));
    return best;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::vector<Int> class_list(const ResidueSet& r, Prime p) {
    if (r.all) return r.lift(r.depth, p);
    return r.units;
}

Term center_or_zero(const Cell1& c) {
    return c.term ? *c.term : Term::constant(Rat(0));
}

struct Builder {
    Prime p;
    int cap;
    int k_depth = 0;
    int max_depth = 1;
};

// Laws of `src` with respect to its own center, frozen at shell m.
void freeze_laws(Cell1& dst, const Cell1& src, std::int64_t m) {
    for (const auto& tl : src.laws) dst.set_law(tl.poly, OrderLaw{tl.law.at(Val(m)), 0});
}

// Partition points of a family range for the lines vb_i + i*m.
std::vector<MRange> law_pieces(const std::vector<Val>& vb, const MRange& range) {
    std::set<std::int64_t> cuts;
    for (std::size_t i = 0; i < vb.size(); ++i) {
        if (vb[i].is_inf()) continue;
        for (std::size_t j = i + 1; j < vb.size(); ++j) {
            if (vb[j].is_inf()) continue;
            std::int64_t num = vb[i].value() - vb[j].value();
            std::int64_t den = static_cast<std::int64_t>(j - i);
            cuts.insert(floor_div(num, den));
            cuts.insert(ceil_div(num, den));
        }
    }
    std::vector<MRange> out;
    std::int64_t from = range.lo;
    for (std::int64_t c : cuts) {
        if (c < from) continue;
        if (range.hi && c > *range.hi) break;
        MRange before = range.at_least(from).at_most(c - 1);
        if (!before.empty()) out.push_back(before);
        MRange single = range.at_least(c).at_most(c);
        if (!single.empty()) out.push_back(single);
        from = c + 1;
    }
    MRange rest = range.at_least(from);
    if (!rest.empty()) out.push_back(rest);
    return out;
}

// Indices attaining the minimum at m.
std::vector<int> argmin(const std::vector<Val>& vb, std::int64_t m) {
    Val best = min_term(vb, m);
    std::vector<int> out;
    if (best.is_inf()) return out;
    for (std::size_t i = 0; i < vb.size(); ++i)
        if (vb[i] + Val(static_cast<std::int64_t>(i) * m) == best) out.push_back(static_cast<int>(i));
    return out;
}

struct ClassResult {
    int depth;
    Int unit;
    Val value;
};

void settle_class(const Poly& f, const std::vector<Poly>& tp, const Cell1& cell, std::int64_t m, int e,
                  const Int& u, Val mu, Builder& b, std::vector<ClassResult>& plain,
                  std::vector<Cell1>& out) {
    if (e > b.cap) throw BoundExceeded("prepare: residue depth cap reached");
    b.max_depth = std::max(b.max_depth, e);
    const Prime p = b.p;
    const Point& c = cell.center;
    Rat ct = c.approx(m + e + 1);
    Rat ys = ct + rat_pow_p(p, m) * Rat(u);
    Poly bs = f.taylor_shift(ys);
    Val v = ord(bs.coeff(0), p);
    Val rest = Val::inf();
    for (int j = 1; j <= bs.degree(); ++j) rest = min(rest, ord(bs.coeff(j), p) + Val(j * (m + e)));
    if (v < rest) {
        plain.push_back(ClassResult{e, u, v});
        b.k_depth = std::max<int>(b.k_depth, static_cast<int>(v.value() - mu.value()));
        return;
    }
    Poly at = f.taylor_shift(ct);
    std::vector<Rat> a = at.coeffs();
    RvData x0 = RvData::make(e, m, u % pow_p(p, e));
    if (auto root = h(a, x0, p)) {
        Point y0 = Point(*root).affine(Rat(1), ct);
        std::vector<Val> vb = taylor_vals(f, y0);
        const std::int64_t rho = m + e;
        bool linear = vb.size() > 1 && !vb[1].is_inf();
        for (std::size_t i = 2; linear && i < vb.size(); ++i)
            linear = vb[i] + Val(static_cast<std::int64_t>(i) * rho) > vb[1] + Val(rho);
        if (linear) {
            std::vector<Term> coeffs;
            Term c0 = center_or_zero(cell);
            for (const Poly& t : tp) coeffs.push_back(Term::poly_at(t, c0));
            Term term = Term::add(c0, Term::hens(e, coeffs, Term::aux(x0)));

            Cell1 pt = Cell1::point(y0);
            freeze_laws(pt, cell, m);
            pt.set_law(f, OrderLaw{Val::inf(), 0});
            pt.term = term;
            out.push_back(std::move(pt));

            Cell1 shells = Cell1::family(y0, MRange::from(rho), ResidueSet::every(1));
            freeze_laws(shells, cell, m);
            shells.set_law(f, OrderLaw{vb[1], 1});
            shells.term = term;
            out.push_back(std::move(shells));
            return;
        }
    }
    const Int step = pow_p(p, e);
    for (Prime k = 0; k < p; ++k) settle_class(f, tp, cell, m, e + 1, u + step * Int(k), mu, b, plain, out);
}

void split_family(const Poly& f, const std::vector<Poly>& tp, const Cell1& cell, Builder& b,
                  std::vector<Cell1>& out) {
    std::vector<Val> vb = taylor_vals(f, cell.center);
    std::vector<Cell1> pieces;
    for (const MRange& r : law_pieces(vb, cell.range)) {
        std::vector<int> arg = argmin(vb, r.lo);
        if (arg.size() == 1) {
            Cell1 c = cell;
            c.range = r;
            c.set_law(f, OrderLaw{vb[arg[0]], arg[0]});
            // Merge with the previous piece when contiguous with the same law.
            if (!pieces.empty()) {
                Cell1& prev = pieces.back();
                const OrderLaw* pl = prev.law_for(f);
                if (prev.range.hi && *prev.range.hi + 1 == r.lo && prev.range.step == 1 && r.step == 1 &&
                    pl && *pl == *c.law_for(f) && prev.residue == c.residue) {
                    prev.range.hi = r.hi;
                    continue;
                }
            }
            pieces.push_back(std::move(c));
            continue;
        }
        // A tie: settle each residue class at this shell.
        if (!r.is_single()) throw std::logic_error("prepare: tie on a non-singleton range");
        const std::int64_t m = r.lo;
        Val mu = min_term(vb, m);
        std::vector<ClassResult> plain;
        std::vector<Cell1> hensel;
        for (const Int& u : class_list(cell.residue, b.p))
            settle_class(f, tp, cell, m, cell.residue.depth, u, mu, b, plain, hensel);
        std::map<std::pair<int, std::int64_t>, std::vector<Int>> groups;
        for (const auto& cr : plain) groups[{cr.depth, cr.value.value()}].push_back(cr.unit);
        for (auto& [key, units] : groups) {
            Int mod = pow_p(b.p, key.first);
            for (auto& u : units) u %= mod;
            Cell1 c = Cell1::family(cell.center, MRange::single(m), ResidueSet::of(key.first, units));
            c.term = cell.term;
            freeze_laws(c, cell, m);
            c.set_law(f, OrderLaw{Val(key.second), 0});
            pieces.push_back(std::move(c));
        }
        for (auto& hc : hensel) pieces.push_back(std::move(hc));
    }
    for (auto& c : pieces) out.push_back(std::move(c));
}

std::vector<Cell1> prepare_rec(const Poly& f, Builder& b) {
    if (f.degree() <= 0) {
        Val e = ord(f.coeff(0), b.p);
        Point zero(b.p, Rat(0));
        Cell1 pt = Cell1::point(zero);
        pt.set_law(f, OrderLaw{e, 0});
        pt.term = Term::constant(Rat(0));
        Cell1 rest = Cell1::family(zero, MRange::from(0), ResidueSet::every(1));
        rest.set_law(f, OrderLaw{e, 0});
        rest.term = Term::constant(Rat(0));
        return {pt, rest};
    }
    if (f.degree() == 1) {
        Rat r = -f.coeff(0) / f.coeff(1);
        if (ord(r, b.p) >= Val(0)) {
            Val e = ord(f.coeff(1), b.p);
            Point root(b.p, r);
            Cell1 pt = Cell1::point(root);
            pt.set_law(f.derivative(), OrderLaw{e, 0});
            pt.set_law(f, OrderLaw{Val::inf(), 0});
            pt.term = Term::constant(r);
            Cell1 rest = Cell1::family(root, MRange::from(0), ResidueSet::every(1));
            rest.set_law(f.derivative(), OrderLaw{e, 0});
            rest.set_law(f, OrderLaw{e, 1});
            rest.term = Term::constant(r);
            return {pt, rest};
        }
    }
    std::vector<Cell1> base = prepare_rec(f.derivative(), b);
    std::vector<Poly> tp = taylor_polys(f);
    std::vector<Cell1> out;
    for (const Cell1& cell : base) {
        if (cell.is_point()) {
            Cell1 c = cell;
            c.set_law(f, OrderLaw{c.center.ord_of(f), 0});
            out.push_back(std::move(c));
        } else {
            split_family(f, tp, cell, b, out);
        }
    }
    return out;
}

// Map cells over Z_p for g(z) = f(b + p^r z) to cells for f on the ball.
void to_domain(std::vector<Cell1>& cells, const Poly& f, const Poly& g, const Domain& dom, Prime p) {
    std::vector<Poly> fd{f}, gd{g};
    while (fd.back().degree() > 0) {
        fd.push_back(fd.back().derivative());
        gd.push_back(gd.back().derivative());
    }
    const Rat scale = rat_pow_p(p, dom.radius);
    for (auto& c : cells) {
        c.center = c.center.affine(scale, dom.center);
        if (c.term) c.term = Term::add(Term::constant(dom.center), Term::mul(Term::constant(scale), *c.term));
        if (!c.is_point()) c.range = MRange{c.range.lo + dom.radius, c.range.hi ? std::optional(*c.range.hi + dom.radius) : std::nullopt, c.range.step};
        std::vector<TrackedLaw> laws;
        for (const auto& tl : c.laws) {
            auto it = std::find(gd.begin(), gd.end(), tl.poly);
            if (it == gd.end()) continue;
            const std::int64_t j = it - gd.begin();
            OrderLaw l = tl.law;
            l.e0 = l.e0.is_inf() ? l.e0 : Val(l.e0.value() - j * dom.radius - l.i0 * dom.radius);
            laws.push_back(TrackedLaw{fd[j], l});
        }
        c.laws = std::move(laws);
    }
}

}  // namespace

Decomposition prepare(const Poly& f, Prime p, const Domain& domain) {
    require_prime(p);
    if (f.is_zero()) throw UnsupportedInput("prepare: zero polynomial");
    const bool shifted = !(domain == Domain{});
    Poly g = shifted ? f.compose_linear(rat_pow_p(p, domain.radius), domain.center) : f;
    Builder b{p, max_depth_cap()};
    Decomposition d;
    d.p = p;
    d.domain = domain;
    d.cells = prepare_rec(g, b);
    if (shifted) to_domain(d.cells, f, g, domain, p);
    d.k_depth = b.k_depth;
    d.max_depth = b.max_depth;
    for (const auto& c : d.cells) d.max_depth = std::max(d.max_depth, c.residue.depth);
    canonicalize(d);
    return d;
}

std::int64_t termination_bound(const Poly& f, Prime p) {
    Poly g = squarefree_part(f);
    std::int64_t base = std::max(f.degree(), 0) + 4;
    if (g.degree() <= 0) return base;
    Val r = resultant_val(g, g.derivative(), p);
    return 2 * r.value() + base;
}

Val dominant_order(const Poly& f, const Point& center, std::int64_t m) {
    return min_term(taylor_vals(f, center), m);
}

// ---------------------------------------------------------------- decompose_set

namespace {

struct AcNeed {
    Poly f;
    int d;
    bool operator==(const AcNeed& o) const { return d == o.d && f == o.f; }
};

struct Piece {
    Cell1 cell;
    std::vector<std::optional<Int>> ac;  // per AcNeed, uniform unit digits
};

void collect_needs(const Formula& phi, std::vector<AcNeed>& needs) {
    if (phi.kind != Formula::Kind::Leaf) {
        for (const auto& k : phi.kids) collect_needs(k, needs);
        return;
    }
    auto add = [&](const Poly& f, int d) {
        if (f.is_zero()) return;
        AcNeed n{f, d};
        if (std::find(needs.begin(), needs.end(), n) == needs.end()) needs.push_back(n);
    };
    if (auto* a = std::get_if<AcEq>(&phi.atom)) add(a->f, a->d);
    if (auto* r = std::get_if<RvEq>(&phi.atom))
        if (!r->tag.zero) add(r->f, r->d);
}

void validate(const Formula& phi) {
    if (phi.kind != Formula::Kind::Leaf) {
        for (const auto& k : phi.kids) validate(k);
        return;
    }
    if (auto* c = std::get_if<OrdCmp>(&phi.atom))
        if (c->f.is_zero() || c->g.is_zero()) throw UnsupportedInput("ord comparison of the zero polynomial");
    if (auto* m = std::get_if<OrdMod>(&phi.atom))
        if (m->n <= 0) throw UnsupportedInput("ord congruence needs a positive modulus");
    if (auto* a = std::get_if<AcEq>(&phi.atom))
        if (a->d < 1) throw UnsupportedInput("ac depth must be positive");
    if (auto* r = std::get_if<RvEq>(&phi.atom))
        if (r->d < 1) throw UnsupportedInput("rv depth must be positive");
}

// Splits a family piece so that the first d unit digits of f are constant.
void uniformize(const Piece& pc, std::size_t idx, const AcNeed& need, Prime p, int cap,
                std::vector<Piece>& out) {
    const Cell1& cell = pc.cell;
    const int d = need.d;
    std::vector<Poly> tp = taylor_polys(need.f);
    std::vector<Val> vb = taylor_vals(need.f, cell.center);
    std::size_t i0 = 0;
    while (i0 < vb.size() && vb[i0].is_inf()) ++i0;
    if (i0 == vb.size()) throw std::logic_error("uniformize: polynomial vanishes on a family cell");
    std::int64_t threshold = cell.range.lo;
    for (std::size_t j = i0 + 1; j < vb.size(); ++j) {
        if (vb[j].is_inf()) continue;
        std::int64_t need_m = ceil_div(d + vb[i0].value() - vb[j].value(), static_cast<std::int64_t>(j - i0));
        threshold = std::max(threshold, need_m);
    }
    auto emit = [&](MRange range, int depth, std::vector<Int> units, const Int& acv) {
        Piece np = pc;
        np.cell.range = range;
        Int mod = pow_p(p, depth);
        for (auto& u : units) u %= mod;
        np.cell.residue = ResidueSet::of(depth, std::move(units));
        np.ac[idx] = acv;
        out.push_back(std::move(np));
    };

    MRange tail = cell.range.at_least(threshold);
    if (!tail.empty()) {
        const int depth = std::max(cell.residue.depth, d);
        const Int mod_d = pow_p(p, d);
        Int lead = cell.center.unit_of(tp[i0], d).digits;
        std::map<Int, std::vector<Int>> groups;
        for (const Int& u : cell.residue.lift(depth, p)) {
            Int w;
            mpz_powm_ui(w.get_mpz_t(), Int(u % mod_d).get_mpz_t(), i0, mod_d.get_mpz_t());
            groups[(lead * w) % mod_d].push_back(u);
        }
        if (groups.size() == 1 && cell.residue.depth >= depth) {
            Piece np = pc;
            np.cell.range = tail;
            np.ac[idx] = groups.begin()->first;
            out.push_back(std::move(np));
        } else {
            for (auto& [acv, units] : groups) emit(tail, depth, std::move(units), acv);
        }
    }
    MRange head = cell.range.at_most(threshold - 1);
    if (head.empty()) return;
    for (std::int64_t m : head.members()) {
        std::map<std::pair<int, Int>, std::vector<Int>> groups;
        std::vector<std::pair<int, Int>> todo;
        for (const Int& u : class_list(cell.residue, p)) todo.emplace_back(cell.residue.depth, u);
        while (!todo.empty()) {
            auto [e, u] = todo.back();
            todo.pop_back();
            if (e > cap) throw BoundExceeded("decompose_set: residue depth cap reached");
            Rat ys = cell.center.approx(m + e + 1) + rat_pow_p(p, m) * Rat(u);
            Poly bs = need.f.taylor_shift(ys);
            Val v = ord(bs.coeff(0), p);
            Val rest = Val::inf();
            for (int j = 1; j <= bs.degree(); ++j) rest = min(rest, ord(bs.coeff(j), p) + Val(j * (m + e)));
            if (!v.is_inf() && v + Val(d) <= rest) {
                groups[{e, unit_digits(bs.coeff(0), p, d).digits}].push_back(u);
                continue;
            }
            Int step = pow_p(p, e);
            for (Prime k = 0; k < p; ++k) todo.emplace_back(e + 1, u + step * Int(k));
        }
        for (auto& [key, units] : groups) emit(MRange::single(m), key.first, std::move(units), key.second);
    }
}

Val ord_on(const Cell1& c, const Poly& f, std::int64_t m) {
    if (f.is_zero()) return Val::inf();
    const OrderLaw* l = c.law_for(f);
    if (!l) throw std::logic_error("decompose_set: missing order law");
    return l->at(Val(m));
}

bool eval_family(const Formula& phi, const Piece& pc, const std::vector<AcNeed>& needs, std::int64_t m,
                 Prime p) {
    switch (phi.kind) {
        case Formula::Kind::And:
            return std::all_of(phi.kids.begin(), phi.kids.end(),
                               [&](const Formula& k) { return eval_family(k, pc, needs, m, p); });
        case Formula::Kind::Or:
            return std::any_of(phi.kids.begin(), phi.kids.end(),
                               [&](const Formula& k) { return eval_family(k, pc, needs, m, p); });
        case Formula::Kind::Not: return !eval_family(phi.kids.front(), pc, needs, m, p);
        case Formula::Kind::Leaf: break;
    }
    auto ac_of = [&](const Poly& f, int d) -> Int {
        for (std::size_t i = 0; i < needs.size(); ++i)
            if (needs[i].d == d && needs[i].f == f) return *pc.ac[i];
        throw std::logic_error("decompose_set: missing ac data");
    };
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            Val o = ord_on(pc.cell, x.f, m);
            if constexpr (std::is_same_v<T, OrdCmp>) {
                return holds(x.rel, o, ord_on(pc.cell, x.g, m) + Val(x.offset));
            } else if constexpr (std::is_same_v<T, OrdEqInf>) {
                return o.is_inf();
            } else if constexpr (std::is_same_v<T, AcEq>) {
                if (o.is_inf()) return false;
                Int mod = pow_p(p, x.d);
                Int u = x.u % mod;
                if (u < 0) u += mod;
                return ac_of(x.f, x.d) == u;
            } else if constexpr (std::is_same_v<T, RvEq>) {
                if (x.tag.zero) return o.is_inf();
                if (o.is_inf() || o.value() != x.tag.valuation) return false;
                return ac_of(x.f, x.d) == reduce_mod(Rat(x.tag.unit), p, x.d);
            } else {
                if (o.is_inf()) return false;
                return ((o.value() - x.r) % x.n + x.n) % x.n == 0;
            }
        },
        phi.atom);
}

bool eval_point(const Formula& phi, const Point& y, Prime p) {
    switch (phi.kind) {
        case Formula::Kind::And:
            return std::all_of(phi.kids.begin(), phi.kids.end(),
                               [&](const Formula& k) { return eval_point(k, y, p); });
        case Formula::Kind::Or:
            return std::any_of(phi.kids.begin(), phi.kids.end(),
                               [&](const Formula& k) { return eval_point(k, y, p); });
        case Formula::Kind::Not: return !eval_point(phi.kids.front(), y, p);
        case Formula::Kind::Leaf: break;
    }
    if (y.exact()) return holds(phi, y.value(), p);
    auto ordf = [&](const Poly& f) { return f.is_zero() ? Val::inf() : y.ord_of(f); };
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            Val o = ordf(x.f);
            if constexpr (std::is_same_v<T, OrdCmp>) {
                return holds(x.rel, o, ordf(x.g) + Val(x.offset));
            } else if constexpr (std::is_same_v<T, OrdEqInf>) {
                return o.is_inf();
            } else if constexpr (std::is_same_v<T, AcEq>) {
                if (o.is_inf()) return false;
                Int mod = pow_p(p, x.d);
                Int u = x.u % mod;
                if (u < 0) u += mod;
                return y.unit_of(x.f, x.d).digits == u;
            } else if constexpr (std::is_same_v<T, RvEq>) {
                if (x.tag.zero) return o.is_inf();
                if (o.is_inf() || o.value() != x.tag.valuation) return false;
                return y.unit_of(x.f, x.d).digits == reduce_mod(Rat(x.tag.unit), p, x.d);
            } else {
                if (o.is_inf()) return false;
                return ((o.value() - x.r) % x.n + x.n) % x.n == 0;
            }
        },
        phi.atom);
}

void add_cut(std::set<std::int64_t>& cuts, std::int64_t num, std::int64_t den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    cuts.insert(floor_div(num, den));
    cuts.insert(ceil_div(num, den));
}

void critical(const Formula& phi, const Cell1& c, std::set<std::int64_t>& cuts, std::int64_t& period) {
    if (phi.kind != Formula::Kind::Leaf) {
        for (const auto& k : phi.kids) critical(k, c, cuts, period);
        return;
    }
    auto law = [&](const Poly& f) -> std::optional<OrderLaw> {
        if (f.is_zero()) return std::nullopt;
        const OrderLaw* l = c.law_for(f);
        if (!l || l->e0.is_inf()) return std::nullopt;
        return *l;
    };
    if (auto* a = std::get_if<OrdCmp>(&phi.atom)) {
        auto lf = law(a->f), lg = law(a->g);
        if (lf && lg && lf->i0 != lg->i0)
            add_cut(cuts, lg->e0.value() + a->offset - lf->e0.value(), lf->i0 - lg->i0);
    } else if (auto* r = std::get_if<RvEq>(&phi.atom)) {
        auto lf = law(r->f);
        if (lf && !r->tag.zero && lf->i0 != 0) add_cut(cuts, r->tag.valuation - lf->e0.value(), lf->i0);
    } else if (auto* m = std::get_if<OrdMod>(&phi.atom)) {
        auto lf = law(m->f);
        if (lf && lf->i0 != 0) period = std::lcm(period, m->n);
    }
}

std::vector<MRange> truth_pieces(const MRange& range, const std::set<std::int64_t>& cuts, std::int64_t period) {
    std::vector<MRange> spans;
    std::int64_t from = range.lo;
    for (std::int64_t c : cuts) {
        if (c < from) continue;
        if (range.hi && c > *range.hi) break;
        MRange before = range.at_least(from).at_most(c - 1);
        if (!before.empty()) spans.push_back(before);
        MRange single = range.at_least(c).at_most(c);
        if (!single.empty()) spans.push_back(single);
        from = c + 1;
    }
    MRange rest = range.at_least(from);
    if (!rest.empty()) spans.push_back(rest);
    if (period == 1) return spans;
    std::vector<MRange> out;
    for (const MRange& s : spans) {
        if (s.is_single()) {
            out.push_back(s);
            continue;
        }
        std::int64_t stride = std::lcm(s.step, period);
        for (std::int64_t k = 0; k < stride / s.step; ++k) {
            MRange sub = s.intersect(MRange{s.lo + k * s.step, std::nullopt, stride});
            if (!sub.empty()) out.push_back(sub);
        }
    }
    return out;
}

// Fuses family cells that differ only in their residue sets.
std::vector<Cell1> merge_residues(std::vector<Cell1> cells, Prime p) {
    std::vector<Cell1> out;
    for (auto& c : cells) {
        bool merged = false;
        if (!c.is_point()) {
            for (auto& o : out) {
                if (o.is_point() || o.keep != c.keep || !(o.range == c.range) ||
                    o.residue.depth != c.residue.depth || o.residue.all || c.residue.all)
                    continue;
                bool same_laws = o.laws.size() == c.laws.size();
                for (std::size_t i = 0; same_laws && i < o.laws.size(); ++i)
                    same_laws = o.laws[i].poly == c.laws[i].poly && o.laws[i].law == c.laws[i].law;
                if (!same_laws || !o.center.same(c.center)) continue;
                std::vector<Int> u = o.residue.units;
                u.insert(u.end(), c.residue.units.begin(), c.residue.units.end());
                o.residue = ResidueSet::of(o.residue.depth, std::move(u));
                if (Int(static_cast<unsigned long>(o.residue.units.size())) == unit_count(p, o.residue.depth))
                    o.residue = ResidueSet::every(o.residue.depth);
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

Decomposition decompose_set(const Formula& phi, Prime p, const Domain& domain) {
    require_prime(p);
    validate(phi);
    std::vector<Poly> polys;
    for (const Poly& f : formula_polys(phi))
        if (!f.is_zero()) polys.push_back(f);
    if (polys.empty()) polys.push_back(Poly{1});
    Decomposition d = prepare(polys.front(), p, domain);
    for (std::size_t i = 1; i < polys.size(); ++i) d = refine_common(d, prepare(polys[i], p, domain));

    std::vector<AcNeed> needs;
    collect_needs(phi, needs);
    const int cap = max_depth_cap();
    std::vector<Piece> pieces;
    for (auto& c : d.cells) pieces.push_back(Piece{c, std::vector<std::optional<Int>>(needs.size())});
    for (std::size_t i = 0; i < needs.size(); ++i) {
        std::vector<Piece> next;
        for (auto& pc : pieces) {
            if (pc.cell.is_point()) next.push_back(std::move(pc));
            else uniformize(pc, i, needs[i], p, cap, next);
        }
        pieces = std::move(next);
    }

    std::vector<Cell1> cells;
    for (auto& pc : pieces) {
        if (pc.cell.is_point()) {
            pc.cell.keep = eval_point(phi, pc.cell.center, p);
            cells.push_back(std::move(pc.cell));
            continue;
        }
        std::set<std::int64_t> cuts;
        std::int64_t period = 1;
        critical(phi, pc.cell, cuts, period);
        for (const MRange& r : truth_pieces(pc.cell.range, cuts, period)) {
            Cell1 c = pc.cell;
            c.range = r;
            c.keep = eval_family(phi, pc, needs, r.lo, p);
            cells.push_back(std::move(c));
        }
    }
    d.cells = merge_residues(std::move(cells), p);
    for (const auto& c : d.cells) d.max_depth = std::max(d.max_depth, c.residue.depth);
    canonicalize(d);
    return d;
}

// ---------------------------------------------------------------- balls

bool BallReport::all_preserved() const {
    return std::all_of(cells.begin(), cells.end(),
                       [](const FiberReport& f) { return f.shape != BallImage::Shape::Undecided; });
}

BallImage image_of_ball(const Poly& F, const Rat& a, std::int64_t r, Prime p, int extra) {
    Poly B = F.taylor_shift(a);
    BallImage img;
    img.center = B.coeff(0);
    if (B.degree() <= 0) {
        img.shape = BallImage::Shape::Point;
        return img;
    }
    Val v1 = ord(B.coeff(1), p);
    bool linear = !v1.is_inf();
    for (int i = 2; linear && i <= B.degree(); ++i)
        linear = ord(B.coeff(i), p) + Val(i * r) > v1 + Val(r);
    if (linear) {
        img.shape = BallImage::Shape::Ball;
        img.radius = v1.value() + r;
        return img;
    }
    if (extra <= 0) return img;
    std::vector<BallImage> parts;
    for (Prime k = 0; k < p; ++k) {
        BallImage sub = image_of_ball(F, a + rat_pow_p(p, r) * Rat(k), r + 1, p, extra - 1);
        if (sub.shape != BallImage::Shape::Ball) return BallImage{};
        parts.push_back(sub);
    }
    // Drop balls contained in others; the rest are pairwise disjoint.
    std::vector<BallImage> keep;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        bool inside = false;
        for (std::size_t j = 0; j < parts.size() && !inside; ++j) {
            if (i == j) continue;
            bool contains = parts[j].radius <= parts[i].radius &&
                            ord(parts[i].center - parts[j].center, p) >= Val(parts[j].radius);
            if (contains && (parts[j].radius < parts[i].radius || j < i)) inside = true;
        }
        if (!inside) keep.push_back(parts[i]);
    }
    std::int64_t R = keep.front().radius;
    for (const auto& b : keep) R = std::min(R, b.radius);
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            R = std::min(R, ord(keep[i].center - keep[j].center, p).value());
    Rat total = 0;
    for (const auto& b : keep) total += rat_pow_p(p, -b.radius);
    if (total == rat_pow_p(p, -R)) {
        img.shape = BallImage::Shape::Ball;
        img.center = keep.front().center;
        img.radius = R;
    }
    return img;
}

namespace {

Int binom(int n, int k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// First shell from which every fiber image is a ball by linear dominance,
// or nullopt when the symbolic test does not apply.
std::optional<std::int64_t> symbolic_tail(const Poly& F, const Cell1& c, Prime p) {
    std::vector<Val> va = taylor_vals(F, c.center);
    const int n = static_cast<int>(va.size()) - 1;
    const std::int64_t e = c.residue.depth;
    auto first_nonzero = [&](int from) {
        for (int i = from; i <= n; ++i)
            if (!va[i].is_inf()) return i;
        return -1;
    };
    const int i1 = first_nonzero(1);
    if (i1 < 0) return std::nullopt;
    std::int64_t from = c.range.lo;
    auto coeff_val = [&](int i, int j) { return va[i].value() + ord(Rat(binom(i, j)), p).value(); };
    for (int j = 1; j <= n; ++j) {
        int ij = first_nonzero(j);
        if (ij < 0) continue;
        // the i_j term dominates the coefficient of t^j once m is large
        for (int i = ij + 1; i <= n; ++i) {
            if (va[i].is_inf()) continue;
            from = std::max(from, floor_div(coeff_val(ij, j) - coeff_val(i, j), i - ij) + 1);
        }
        if (j == 1) continue;
        std::int64_t lhs0 = e * j + coeff_val(ij, j), rhs0 = e + coeff_val(i1, 1);
        if (ij == i1) {
            if (lhs0 <= rhs0) return std::nullopt;
        } else {
            from = std::max(from, floor_div(rhs0 - lhs0, ij - i1) + 1);
        }
    }
    return from;
}

}  // namespace

BallReport preserves_balls_report(const Decomposition& d, const Poly& F) {
    const Prime p = d.p;
    BallReport rep;
    constexpr int kExtra = 4;
    for (std::size_t idx = 0; idx < d.cells.size(); ++idx) {
        const Cell1& c = d.cells[idx];
        FiberReport fr;
        fr.cell = idx;
        if (c.is_point()) {
            fr.shape = BallImage::Shape::Point;
            rep.cells.push_back(fr);
            continue;
        }
        if (F.degree() <= 0) {
            fr.shape = BallImage::Shape::Point;
            rep.cells.push_back(fr);
            continue;
        }
        std::optional<std::int64_t> tail = symbolic_tail(F, c, p);
        std::int64_t last;
        if (tail) last = c.range.hi ? std::min(*c.range.hi, *tail - 1) : *tail - 1;
        else last = c.range.hi ? *c.range.hi : c.range.lo + 8;
        std::optional<BallImage::Shape> shape;
        bool mixed = false;
        MRange window = c.range.at_most(last);
        if (!window.empty()) {
            for (std::int64_t m : window.members()) {
                const int e = c.residue.depth;
                Rat base = c.center.approx(m + e + 1);
                for (const Int& u : class_list(c.residue, p)) {
                    BallImage img = image_of_ball(F, base + rat_pow_p(p, m) * Rat(u), m + e, p, kExtra);
                    if (!shape) shape = img.shape;
                    else if (*shape != img.shape) mixed = true;
                }
            }
            fr.checked_to = last;
        }
        bool tail_left = !c.range.hi || *c.range.hi > last;
        if (tail_left) {
            if (tail) {
                fr.tail_from = std::max(*tail, c.range.lo);
                if (!shape) shape = BallImage::Shape::Ball;
                else if (*shape != BallImage::Shape::Ball) mixed = true;
            } else {
                mixed = true;
                fr.note = "tail shells are not linearly dominated";
            }
        }
        fr.shape = (mixed || !shape) ? BallImage::Shape::Undecided : *shape;
        if (mixed && fr.note.empty()) fr.note = "fibers differ or were not settled";
        rep.cells.push_back(fr);
    }
    return rep;
}

}  // namespace padic
