#include "padic/kgroup.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

std::string OrderPart::str() const { return infinite ? "H" : "len:" + std::to_string(length); }

std::string AuxShape::orders_str() const {
    if (orders.empty()) return "len:1";
    std::string out;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (i) out += "×";
        out += orders[i].str();
    }
    return out;
}

bool operator<(const AuxShape& a, const AuxShape& b) {
    if (a.residues != b.residues) return a.residues < b.residues;
    return a.orders < b.orders;
}

AuxShape canonical(AuxShape s) {
    std::erase_if(s.orders, [](const OrderPart& o) { return !o.infinite && o.length == 1; });
    std::sort(s.orders.begin(), s.orders.end());
    return s;
}

void K0Element::add(const AuxShape& s0, int grade, const Int& mult) {
    if (mult == 0) return;
    AuxShape s = canonical(s0);
    auto key_less = [](const K0Term& t, int g, const AuxShape& sh) {
        if (t.grade != g) return t.grade < g;
        return t.shape < sh;
    };
    auto it = terms.begin();
    while (it != terms.end() && key_less(*it, grade, s)) ++it;
    if (it != terms.end() && it->grade == grade && it->shape == s) {
        it->mult += mult;
        return;
    }
    terms.insert(it, K0Term{s, grade, mult});
}

std::string K0Element::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const K0Term& t = terms[i];
        if (i) os << " + ";
        if (t.mult != 1) os << t.mult.get_str() << "*";
        os << "[(" << t.shape.residues.get_str() << "," << t.shape.orders_str() << ")][" << t.grade << "]";
    }
    return os.str();
}

K0Element k0_add(const K0Element& a, const K0Element& b) {
    K0Element out = a;
    for (const auto& t : b.terms) out.add(t.shape, t.grade, t.mult);
    return out;
}

K0Element k0_mul(const K0Element& a, const K0Element& b) {
    K0Element out;
    for (const auto& x : a.terms) {
        for (const auto& y : b.terms) {
            AuxShape s;
            s.residues = x.shape.residues * y.shape.residues;
            s.orders = x.shape.orders;
            s.orders.insert(s.orders.end(), y.shape.orders.begin(), y.shape.orders.end());
            out.add(s, x.grade + y.grade, x.mult * y.mult);
        }
    }
    return out;
}

AuxShape cell_shape(const Cell1& c, Prime p) {
    AuxShape s;
    if (c.is_point()) return s;
    s.residues = c.residue.count(p);
    s.orders.push_back(c.range.hi ? OrderPart::finite(c.range.count()) : OrderPart::half_line());
    return canonical(s);
}

K0Element chi(const Decomposition& d) {
    K0Element out;
    for (const auto& c : d.cells)
        if (c.keep && !c.empty()) out.add(cell_shape(c, d.p), cell_type(c));
    return out;
}

K0Element chi(const std::vector<ProductCell>& cells, Prime p) {
    K0Element out;
    for (const auto& pc : cells) {
        AuxShape s;
        int grade = 0;
        for (const auto& f : pc.factors) {
            AuxShape fs = cell_shape(f, p);
            s.residues *= fs.residues;
            s.orders.insert(s.orders.end(), fs.orders.begin(), fs.orders.end());
            grade += cell_type(f);
        }
        out.add(s, grade);
    }
    return out;
}

K0Normal normal_form(const K0Element& e) {
    K0Normal nf;
    for (const auto& t : e.terms)
        if (t.mult != 0 && t.shape.residues != 0) nf.grade = std::max(nf.grade, t.grade);
    if (nf.grade > 0) nf.infinite = true;
    if (nf.grade != 0) return nf;
    for (const auto& t : e.terms) {
        if (t.grade != 0) continue;
        Int count = t.shape.residues * t.mult;
        for (const auto& o : t.shape.orders) {
            if (o.infinite) nf.infinite = true;
            else count *= Int(static_cast<long>(o.length));
        }
        nf.points += count;
    }
    if (nf.infinite) nf.points = 0;
    return nf;
}

std::string K0Normal::str() const {
    if (grade < 0) return "empty";
    if (infinite) return "[inf][" + std::to_string(grade) + "]";
    return "[" + points.get_str() + "][0]";
}

CvResult cv_check(const Decomposition& d1, const Decomposition& d2) {
    if (d1.p != d2.p || !(d1.domain == d2.domain))
        throw std::invalid_argument("cv_check: decompositions of different domains");
    for (const auto& a : d1.cells)
        for (const auto& b : d2.cells)
            if (a.keep != b.keep && !intersect(a, b, d1.p).empty())
                throw std::invalid_argument("cv_check: inputs decompose different sets");
    Decomposition r = refine_common(d1, d2);
    CvResult res;
    res.chi1 = chi(d1);
    res.chi2 = chi(d2);
    res.chi_common = chi(r);
    K0Normal n = normal_form(res.chi_common);
    res.equal = normal_form(res.chi1) == n && normal_form(res.chi2) == n;
    return res;
}

}  // namespace padic
