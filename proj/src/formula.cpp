#include "padic/formula.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

Formula Formula::leaf(Atom a) {
    Formula f;
    f.atom = std::move(a);
    return f;
}

Formula Formula::conj(std::vector<Formula> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    Formula f;
    f.kind = Kind::And;
    f.kids = std::move(parts);
    return f;
}

Formula Formula::disj(std::vector<Formula> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    Formula f;
    f.kind = Kind::Or;
    f.kids = std::move(parts);
    return f;
}

Formula Formula::negate(Formula g) {
    Formula f;
    f.kind = Kind::Not;
    f.kids.push_back(std::move(g));
    return f;
}

std::vector<Poly> atom_polys(const Atom& a) {
    return std::visit(
        [](const auto& x) -> std::vector<Poly> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, OrdCmp>) return {x.f, x.g};
            else return {x.f};
        },
        a);
}

namespace {

void collect(const Formula& f, std::vector<Poly>& out) {
    if (f.kind == Formula::Kind::Leaf) {
        for (auto& q : atom_polys(f.atom))
            if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
        return;
    }
    for (const auto& k : f.kids) collect(k, out);
}

}  // namespace

std::vector<Poly> formula_polys(const Formula& f) {
    std::vector<Poly> out;
    collect(f, out);
    return out;
}

bool holds(Rel rel, Val lhs, Val rhs) {
    switch (rel) {
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Eq: return lhs == rhs;
        case Rel::Ge: return lhs >= rhs;
        case Rel::Gt: return lhs > rhs;
    }
    return false;
}

namespace {

bool atom_holds(const Atom& a, const Rat& y, Prime p) {
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            Rat v = x.f.eval(y);
            if constexpr (std::is_same_v<T, OrdCmp>) {
                return holds(x.rel, ord(v, p), ord(x.g.eval(y), p) + Val(x.offset));
            } else if constexpr (std::is_same_v<T, OrdEqInf>) {
                return v == 0;
            } else if constexpr (std::is_same_v<T, AcEq>) {
                if (v == 0) return false;
                Int m = pow_p(p, x.d);
                Int u = x.u % m;
                if (u < 0) u += m;
                return unit_digits(v, p, x.d).digits == u;
            } else if constexpr (std::is_same_v<T, RvEq>) {
                if (x.tag.zero) return v == 0;
                if (v == 0 || ord(v, p).value() != x.tag.valuation) return false;
                return unit_digits(v, p, x.d).digits == reduce_mod(Rat(x.tag.unit), p, x.d);
            } else {
                if (v == 0) return false;
                std::int64_t o = ord(v, p).value();
                return ((o - x.r) % x.n + x.n) % x.n == 0;
            }
        },
        a);
}

}  // namespace

bool holds(const Formula& phi, const Rat& y, Prime p) {
    switch (phi.kind) {
        case Formula::Kind::Leaf: return atom_holds(phi.atom, y, p);
        case Formula::Kind::And:
            return std::all_of(phi.kids.begin(), phi.kids.end(),
                               [&](const Formula& k) { return holds(k, y, p); });
        case Formula::Kind::Or:
            return std::any_of(phi.kids.begin(), phi.kids.end(),
                               [&](const Formula& k) { return holds(k, y, p); });
        case Formula::Kind::Not: return !holds(phi.kids.front(), y, p);
    }
    return false;
}

std::string str(Rel rel) {
    switch (rel) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

std::string str(const Atom& a) {
    std::ostringstream os;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, OrdCmp>) {
                os << "ord(" << x.f.str() << ") " << str(x.rel) << " ";
                if (x.g == Poly{1}) {
                    os << x.offset;
                } else {
                    os << "ord(" << x.g.str() << ")";
                    if (x.offset > 0) os << " + " << x.offset;
                    if (x.offset < 0) os << " - " << -x.offset;
                }
            } else if constexpr (std::is_same_v<T, OrdEqInf>) {
                os << x.f.str() << " = 0";
            } else if constexpr (std::is_same_v<T, AcEq>) {
                os << "ac(" << x.d << ", " << x.f.str() << ") = " << x.u.get_str();
            } else if constexpr (std::is_same_v<T, RvEq>) {
                os << "rv(" << x.d << ", " << x.f.str() << ") = ";
                if (x.tag.zero) os << "0";
                else os << "(" << x.tag.valuation << ", " << x.tag.unit.get_str() << ")";
            } else {
                os << "ord(" << x.f.str() << ") mod " << x.n << " = " << x.r;
            }
        },
        a);
    return os.str();
}

std::string str(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Leaf: return str(f.atom);
        case Formula::Kind::Not: return "!(" + str(f.kids.front()) + ")";
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::string sep = f.kind == Formula::Kind::And ? " & " : " | ";
            std::string out;
            for (std::size_t i = 0; i < f.kids.size(); ++i) {
                if (i) out += sep;
                const Formula& k = f.kids[i];
                bool wrap = k.kind == Formula::Kind::And || k.kind == Formula::Kind::Or;
                out += wrap ? "(" + str(k) + ")" : str(k);
            }
            return out;
        }
    }
    return "";
}

}  // namespace padic
