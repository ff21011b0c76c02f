#include "padic/cells.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padic {

namespace {

constexpr std::size_t kMaxExplicitResidues = 2'000'000;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

// ---------------------------------------------------------------- MRange

void MRange::normalize() {
    if (hi && *hi >= lo) *hi = lo + floor_div(*hi - lo, step) * step;
}

bool MRange::contains(std::int64_t m) const {
    if (m < lo) return false;
    if (hi && m > *hi) return false;
    return (m - lo) % step == 0;
}

std::int64_t MRange::count() const {
    if (!hi) throw std::logic_error("MRange::count: unbounded range");
    if (*hi < lo) return 0;
    return (*hi - lo) / step + 1;
}

std::int64_t MRange::last() const {
    if (!hi || *hi < lo) throw std::logic_error("MRange::last: unbounded or empty range");
    return lo + ((*hi - lo) / step) * step;
}

MRange MRange::at_least(std::int64_t bound) const {
    MRange r = *this;
    if (bound > lo) r.lo = lo + ((bound - lo + step - 1) / step) * step;
    r.normalize();
    return r;
}

MRange MRange::at_most(std::int64_t bound) const {
    MRange r = *this;
    if (!r.hi || *r.hi > bound) r.hi = bound;
    r.normalize();
    return r;
}

MRange MRange::intersect(const MRange& o) const {
    std::int64_t l = std::lcm(step, o.step);
    std::int64_t start = std::max(lo, o.lo);
    std::optional<std::int64_t> h;
    if (hi && o.hi) h = std::min(*hi, *o.hi);
    else if (hi) h = hi;
    else h = o.hi;
    MRange r{start, h, l};
    for (std::int64_t m = start; m < start + l; ++m) {
        if ((m - lo) % step == 0 && (m - o.lo) % o.step == 0) {
            r.lo = m;
            r.normalize();
            return r;
        }
    }
    return MRange{start, start - 1, 1};
}

std::vector<std::int64_t> MRange::members() const {
    std::vector<std::int64_t> out;
    if (!hi) throw std::logic_error("MRange::members: unbounded range");
    for (std::int64_t m = lo; m <= *hi; m += step) out.push_back(m);
    return out;
}

std::string MRange::str() const {
    std::ostringstream os;
    os << "[" << lo << ".." << (hi ? std::to_string(*hi) : std::string("inf")) << "]";
    if (step != 1) os << "/" << step;
    return os.str();
}

// ---------------------------------------------------------------- ResidueSet

ResidueSet ResidueSet::of(int depth, std::vector<Int> units) {
    std::sort(units.begin(), units.end());
    units.erase(std::unique(units.begin(), units.end()), units.end());
    return ResidueSet{depth, false, std::move(units)};
}

bool ResidueSet::contains(const Int& u, Prime p) const {
    if (all) return mpz_divisible_ui_p(u.get_mpz_t(), p) == 0;
    Int r = u % pow_p(p, depth);
    if (r < 0) r += pow_p(p, depth);
    return std::binary_search(units.begin(), units.end(), r);
}

Int ResidueSet::count(Prime p) const {
    if (all) return unit_count(p, depth);
    return Int(static_cast<unsigned long>(units.size()));
}

std::vector<Int> ResidueSet::lift(int to_depth, Prime p) const {
    if (to_depth < depth) throw std::invalid_argument("ResidueSet::lift: cannot lower depth");
    Int fan = pow_p(p, to_depth - depth);
    Int total = count(p) * fan;
    if (total > kMaxExplicitResidues) throw BoundExceeded("ResidueSet::lift: residue set too large");
    std::vector<Int> base;
    if (all) {
        Int mod = pow_p(p, depth);
        for (Int u = 1; u < mod; ++u)
            if (mpz_divisible_ui_p(u.get_mpz_t(), p) == 0) base.push_back(u);
    } else {
        base = units;
    }
    Int step = pow_p(p, depth);
    std::vector<Int> out;
    for (const Int& b : base)
        for (Int k = 0; k < fan; ++k) out.push_back(b + k * step);
    std::sort(out.begin(), out.end());
    return out;
}

ResidueSet ResidueSet::raised(int to_depth, Prime p) const {
    if (to_depth <= depth) return *this;
    if (all) return every(to_depth);
    return of(to_depth, lift(to_depth, p));
}

std::string ResidueSet::str() const {
    std::ostringstream os;
    os << "d" << depth << ":";
    if (all) {
        os << "ALL";
    } else {
        os << "{";
        for (std::size_t i = 0; i < units.size(); ++i) os << (i ? "," : "") << units[i].get_str();
        os << "}";
    }
    return os.str();
}

ResidueSet intersect(const ResidueSet& a, const ResidueSet& b, Prime p) {
    const int d = std::max(a.depth, b.depth);
    if (a.all && b.all) return ResidueSet::every(d);
    if (a.all) return b.raised(d, p);
    if (b.all) return a.raised(d, p);
    const ResidueSet& deep = a.depth >= b.depth ? a : b;
    const ResidueSet& shallow = a.depth >= b.depth ? b : a;
    std::vector<Int> out;
    for (const Int& u : deep.units)
        if (shallow.contains(u, p)) out.push_back(u);
    return ResidueSet::of(d, std::move(out));
}

namespace {

// {u : (u - t) mod p^depth in r}, for t = 0 mod p.
ResidueSet translate(const ResidueSet& r, const Int& t, Prime p) {
    if (r.all) return r;
    Int mod = pow_p(p, r.depth);
    std::vector<Int> out;
    for (const Int& u : r.units) {
        Int v = (u + t) % mod;
        if (v < 0) v += mod;
        out.push_back(v);
    }
    return ResidueSet::of(r.depth, std::move(out));
}

// {u unit : u != w mod p and (u - w) mod p^depth in r}, w a unit.
ResidueSet translate_off(const ResidueSet& r, const Int& w, Prime p) {
    Int wp = w % Int(p);
    if (r.all) {
        std::vector<Int> out;
        for (Prime u = 1; u < p; ++u)
            if (Int(u) != wp) out.push_back(Int(u));
        return ResidueSet::of(1, std::move(out));
    }
    Int mod = pow_p(p, r.depth);
    std::vector<Int> out;
    for (const Int& u : r.units) {
        Int v = (u + w) % mod;
        if (v < 0) v += mod;
        if (mpz_divisible_ui_p(v.get_mpz_t(), p) == 0) out.push_back(v);
    }
    return ResidueSet::of(r.depth, std::move(out));
}

// Units not congruent to w mod p, at depth 1.
ResidueSet avoid(const Int& w, Prime p) {
    Int wp = w % Int(p);
    std::vector<Int> out;
    for (Prime u = 1; u < p; ++u)
        if (Int(u) != wp) out.push_back(Int(u));
    return ResidueSet::of(1, std::move(out));
}

// Condition "(w + p^k u) mod p^depth in r" on the unit u, for 0 < k < depth.
ResidueSet shifted_condition(const ResidueSet& r, const Int& w, std::int64_t k, Prime p) {
    if (r.all) return ResidueSet::every(1);
    const int d = r.depth - static_cast<int>(k);
    Int pk = pow_p(p, k);
    Int mod = pow_p(p, d);
    std::vector<Int> out;
    for (const Int& u : r.units) {
        Int diff = u - w;
        if (!mpz_divisible_p(diff.get_mpz_t(), pk.get_mpz_t())) continue;
        Int q = diff / pk;
        q %= mod;
        if (q < 0) q += mod;
        if (mpz_divisible_ui_p(q.get_mpz_t(), p) == 0) out.push_back(q);
    }
    return ResidueSet::of(d, std::move(out));
}

// Unit digits of (to - from) at depth d, the two points being distinct.
Int unit_between(const Point& from, const Point& to, std::int64_t delta, int d, Prime p) {
    Rat a = from.approx(delta + d + 1);
    Rat b = to.approx(delta + d + 1);
    return unit_digits(b - a, p, d).digits;
}

enum class LawMode { Same, Constant };

void absorb_laws(Cell1& piece, const Cell1& src, LawMode mode, std::int64_t at) {
    for (const auto& tl : src.laws) {
        if (piece.law_for(tl.poly)) continue;
        OrderLaw l = tl.law;
        if (mode == LawMode::Constant) l = OrderLaw{l.at(Val(at)), 0};
        piece.laws.push_back(TrackedLaw{tl.poly, l});
    }
}

Cell1 make_piece(const Cell1& owner, MRange range, ResidueSet residue) {
    Cell1 c = Cell1::family(owner.center, std::move(range), std::move(residue));
    c.term = owner.term;
    return c;
}

void push_nonempty(std::vector<Cell1>& out, Cell1 c) {
    if (!c.empty()) out.push_back(std::move(c));
}

// Pieces of A ∩ B around B's center, for shells m_B > delta (A at fixed shell delta).
void near_other(const Cell1& a, const Cell1& b, std::int64_t delta, bool keep,
                std::vector<Cell1>& out, Prime p) {
    if (!a.range.contains(delta)) return;
    const int da = a.residue.depth;
    Int w = unit_between(a.center, b.center, delta, da, p);  // unit of (c_b - c_a)
    MRange near = b.range.at_least(delta + 1);
    if (near.empty()) return;
    MRange tail = near.at_least(delta + da);
    if (!tail.empty() && a.residue.contains(w, p)) {
        Cell1 c = make_piece(b, tail, b.residue);
        absorb_laws(c, b, LawMode::Same, 0);
        absorb_laws(c, a, LawMode::Constant, delta);
        c.keep = keep;
        push_nonempty(out, std::move(c));
    }
    MRange mid = near.at_most(delta + da - 1);
    if (mid.empty()) return;
    for (std::int64_t m : mid.members()) {
        ResidueSet cond = shifted_condition(a.residue, w, m - delta, p);
        Cell1 c = make_piece(b, MRange::single(m), intersect(b.residue, cond, p));
        absorb_laws(c, b, LawMode::Same, 0);
        absorb_laws(c, a, LawMode::Constant, delta);
        c.keep = keep;
        push_nonempty(out, std::move(c));
    }
}

std::vector<Cell1> intersect_families(const Cell1& a, const Cell1& b, Prime p) {
    std::vector<Cell1> out;
    const bool keep = a.keep && b.keep;
    Val dv = a.center.ord_diff(b.center);
    MRange both = a.range.intersect(b.range);
    if (dv.is_inf()) {
        Cell1 c = make_piece(a, both, intersect(a.residue, b.residue, p));
        absorb_laws(c, a, LawMode::Same, 0);
        absorb_laws(c, b, LawMode::Same, 0);
        c.keep = keep;
        push_nonempty(out, std::move(c));
        return out;
    }
    const std::int64_t delta = dv.value();
    const int da = a.residue.depth, db = b.residue.depth;
    const int dmax = std::max(da, db);

    // Shells farther out than both centers' distance: ord(y - c_a) = ord(y - c_b).
    MRange far = both.at_most(delta - 1);
    if (!far.empty()) {
        MRange uniform = far.at_most(delta - dmax);
        if (!uniform.empty()) {
            Cell1 c = make_piece(a, uniform, intersect(a.residue, b.residue, p));
            absorb_laws(c, a, LawMode::Same, 0);
            absorb_laws(c, b, LawMode::Same, 0);
            c.keep = keep;
            push_nonempty(out, std::move(c));
        }
        MRange close = far.at_least(delta - dmax + 1);
        if (!close.empty()) {
            for (std::int64_t m : close.members()) {
                // unit(y - c_a) = unit(y - c_b) + (c_b - c_a) / p^m
                Rat ca = a.center.approx(m + dmax + 1);
                Rat cb = b.center.approx(m + dmax + 1);
                Int t = reduce_mod((cb - ca) * rat_pow_p(p, -m), p, db);
                ResidueSet cond = translate(b.residue, t, p);
                Cell1 c = make_piece(a, MRange::single(m), intersect(a.residue, cond, p));
                absorb_laws(c, a, LawMode::Same, 0);
                absorb_laws(c, b, LawMode::Same, 0);
                c.keep = keep;
                push_nonempty(out, std::move(c));
            }
        }
    }

    // The shell through both centers' distance, away from the other center.
    if (a.range.contains(delta) && b.range.contains(delta)) {
        Int w = unit_between(a.center, b.center, delta, db, p);
        ResidueSet cond = intersect(translate_off(b.residue, w, p), avoid(w, p), p);
        Cell1 c = make_piece(a, MRange::single(delta), intersect(a.residue, cond, p));
        absorb_laws(c, a, LawMode::Same, 0);
        absorb_laws(c, b, LawMode::Constant, delta);
        c.keep = keep;
        push_nonempty(out, std::move(c));
    }

    // Close to b's center, then close to a's center.
    near_other(a, b, delta, keep, out, p);
    std::vector<Cell1> mine;
    near_other(b, a, delta, keep, mine, p);
    // near_other absorbed the owner's laws first; keep a-first law order.
    for (auto& c : mine) out.push_back(std::move(c));
    return out;
}

}  // namespace

// ---------------------------------------------------------------- Cell1

Cell1 Cell1::point(Point c) {
    Cell1 cell;
    cell.center = std::move(c);
    cell.kind = CellKind::Point;
    cell.range = MRange::single(0);
    cell.residue = ResidueSet::every(1);
    return cell;
}

Cell1 Cell1::family(Point c, MRange range, ResidueSet residue) {
    Cell1 cell;
    cell.center = std::move(c);
    cell.kind = CellKind::Ball;
    cell.range = range;
    cell.residue = std::move(residue);
    return cell;
}

const OrderLaw* Cell1::law_for(const Poly& f) const {
    for (const auto& tl : laws)
        if (tl.poly == f) return &tl.law;
    return nullptr;
}

void Cell1::set_law(const Poly& f, OrderLaw law) {
    for (auto& tl : laws) {
        if (tl.poly == f) {
            tl.law = law;
            return;
        }
    }
    laws.push_back(TrackedLaw{f, law});
}

bool contains(const Cell1& c, const Rat& y, Prime p) {
    Val v = c.center.ord_diff(y);
    if (c.is_point()) return v.is_inf();
    if (v.is_inf() || !c.range.contains(v.value())) return false;
    Rat ca = c.center.approx(v.value() + c.residue.depth + 1);
    return c.residue.contains(unit_digits(y - ca, p, c.residue.depth).digits, p);
}

bool contains(const Cell1& c, const Point& y) {
    if (y.exact()) return contains(c, y.value(), y.prime());
    Val v = c.center.ord_diff(y);
    if (c.is_point()) return v.is_inf();
    if (v.is_inf() || !c.range.contains(v.value())) return false;
    const std::int64_t prec = v.value() + c.residue.depth + 1;
    Rat diff = y.approx(prec) - c.center.approx(prec);
    return c.residue.contains(unit_digits(diff, y.prime(), c.residue.depth).digits, y.prime());
}

int cell_type(const Cell1& c) { return c.is_point() ? 0 : 1; }

std::vector<int> cell_type(const ProductCell& c) {
    std::vector<int> t;
    for (const auto& f : c.factors) t.push_back(cell_type(f));
    return t;
}

ProductCell product(const std::vector<Cell1>& cs) {
    ProductCell pc;
    pc.factors = cs;
    for (const auto& c : cs) pc.type.push_back(cell_type(c));
    return pc;
}

std::vector<ProductCell> as_products(const Decomposition& d) {
    std::vector<ProductCell> out;
    for (const auto& c : d.cells)
        if (c.keep) out.push_back(product({c}));
    return out;
}

std::vector<ProductCell> product_cells(const std::vector<ProductCell>& a, const Decomposition& b) {
    std::vector<ProductCell> out;
    for (const auto& pc : a) {
        for (const auto& c : b.cells) {
            if (!c.keep) continue;
            std::vector<Cell1> fs = pc.factors;
            fs.push_back(c);
            out.push_back(product(fs));
        }
    }
    return out;
}

std::vector<Cell1> intersect(const Cell1& a, const Cell1& b, Prime p) {
    std::vector<Cell1> out;
    auto point_piece = [&](const Cell1& pt, const Cell1& other) {
        Cell1 c = pt;
        c.keep = a.keep && b.keep;
        for (const auto& tl : other.laws) {
            if (c.law_for(tl.poly)) continue;
            Val m = other.is_point() ? Val::inf() : pt.center.ord_diff(other.center);
            c.laws.push_back(TrackedLaw{tl.poly, OrderLaw{other.is_point() ? tl.law.e0 : tl.law.at(m), 0}});
        }
        return c;
    };
    if (a.is_point()) {
        if (contains(b, a.center)) out.push_back(point_piece(a, b));
        return out;
    }
    if (b.is_point()) {
        if (contains(a, b.center)) {
            Cell1 c = point_piece(b, a);
            // a's laws first for stable lookups
            std::stable_partition(c.laws.begin(), c.laws.end(), [&](const TrackedLaw& tl) {
                return a.law_for(tl.poly) != nullptr;
            });
            out.push_back(std::move(c));
        }
        return out;
    }
    return intersect_families(a, b, p);
}

Decomposition refine_common(const Decomposition& d1, const Decomposition& d2) {
    if (d1.p != d2.p || !(d1.domain == d2.domain))
        throw std::invalid_argument("refine_common: decompositions of different domains");
    Decomposition r;
    r.p = d1.p;
    r.domain = d1.domain;
    r.k_depth = std::max(d1.k_depth, d2.k_depth);
    r.max_depth = std::max(d1.max_depth, d2.max_depth);
    for (const auto& a : d1.cells)
        for (const auto& b : d2.cells)
            for (auto& c : intersect(a, b, r.p)) {
                r.max_depth = std::max(r.max_depth, c.residue.depth);
                r.cells.push_back(std::move(c));
            }
    canonicalize(r);
    return r;
}

Term center_term(const Cell1& c) {
    if (!c.term) throw std::invalid_argument("center_term: cell carries no term provenance");
    return *c.term;
}

namespace {

std::string sort_key(const Cell1& c) {
    std::ostringstream os;
    Rat a = c.center.approx(24);
    os << reduce_mod(truncate(a, c.center.prime(), 24) * rat_pow_p(c.center.prime(), 8), c.center.prime(), 40)
       << "|" << (c.is_point() ? 0 : 1);
    return os.str();
}

}  // namespace

void canonicalize(Decomposition& d) {
    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(d.cells.size());
    for (std::size_t i = 0; i < d.cells.size(); ++i) keys.emplace_back(sort_key(d.cells[i]), i);
    std::vector<std::size_t> order(d.cells.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Cell1& a = d.cells[x];
        const Cell1& b = d.cells[y];
        if (keys[x].first != keys[y].first) return keys[x].first < keys[y].first;
        if (a.range.lo != b.range.lo) return a.range.lo < b.range.lo;
        if (a.residue.depth != b.residue.depth) return a.residue.depth < b.residue.depth;
        if (a.residue.all != b.residue.all) return a.residue.all;
        return a.residue.units < b.residue.units;
    });
    std::vector<Cell1> sorted;
    sorted.reserve(d.cells.size());
    for (std::size_t i : order) sorted.push_back(std::move(d.cells[i]));
    d.cells = std::move(sorted);
}

bool same_cell(const Cell1& a, const Cell1& b, Prime p) {
    if (a.kind != b.kind || !a.center.same(b.center)) return false;
    if (a.is_point()) return true;
    if (!(a.range == b.range)) return false;
    int d = std::max(a.residue.depth, b.residue.depth);
    return a.residue.raised(d, p) == b.residue.raised(d, p);
}

Rat sample_member(const Cell1& c, std::int64_t m, const Int& u, const Rat& tail) {
    const Prime p = c.center.prime();
    const int d = c.residue.depth;
    Rat base = c.center.approx(m + d + 1);
    Rat y = base + rat_pow_p(p, m) * (Rat(u) + Rat(pow_p(p, d)) * tail);
    y.canonicalize();
    return y;
}

std::string describe(const Cell1& c) {
    std::ostringstream os;
    if (c.is_point()) {
        os << "point " << c.center.str();
    } else {
        os << "ball-family center " << c.center.str() << " m" << c.range.str() << " " << c.residue.str();
    }
    for (const auto& tl : c.laws)
        os << " law[" << tl.poly.str() << "]=" << tl.law.e0.str() << "+" << tl.law.i0 << "m";
    if (!c.keep) os << " (drop)";
    return os.str();
}

}  // namespace padic
