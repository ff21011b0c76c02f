#include "padic/json_io.hpp"

namespace padic {

namespace {

Json rat(const Rat& r) { return r.get_str(); }

Json coeffs(const Poly& f) {
    Json out = Json::array();
    for (int i = 0; i <= f.degree(); ++i) out.push_back(rat(f.coeff(i)));
    return out;
}

}  // namespace

Json to_json(const MRange& r) {
    Json j;
    j["lo"] = r.lo;
    j["hi"] = r.hi ? Json(*r.hi) : Json(nullptr);
    j["step"] = r.step;
    return j;
}

Json to_json(const ResidueSet& r) {
    Json j;
    j["depth"] = r.depth;
    if (r.all) {
        j["units"] = "ALL";
    } else {
        Json u = Json::array();
        for (const auto& x : r.units) u.push_back(x.get_str());
        j["units"] = u;
    }
    return j;
}

Json to_json(const Point& c) {
    Json j;
    if (c.exact()) {
        j["exact"] = rat(c.value());
        return j;
    }
    PadicApprox r = c.root();
    j["root_of"] = r.witness.str();
    j["approx"] = rat(truncate(c.approx(kCenterDigits), c.prime(), kCenterDigits));
    j["precision"] = kCenterDigits;
    return j;
}

Json to_json(const Cell1& c) {
    Json j;
    j["kind"] = c.is_point() ? "point" : "family";
    j["type"] = cell_type(c);
    j["center"] = to_json(c.center);
    if (c.is_point()) {
        j["m_range"] = "POINT";
    } else {
        j["m_range"] = to_json(c.range);
        j["residues"] = to_json(c.residue);
    }
    Json laws = Json::array();
    for (const auto& tl : c.laws) {
        Json l;
        l["poly"] = tl.poly.str();
        l["e0"] = tl.law.e0.str();
        l["i0"] = tl.law.i0;
        laws.push_back(l);
    }
    j["laws"] = laws;
    j["term"] = c.term ? Json(c.term->str()) : Json(nullptr);
    j["keep"] = c.keep;
    return j;
}

Json to_json(const Decomposition& d) {
    Json j;
    j["schema"] = kSchema;
    j["prime"] = std::to_string(d.p);
    j["domain"] = {{"center", rat(d.domain.center)}, {"radius", d.domain.radius}};
    j["k_depth"] = d.k_depth;
    j["max_depth"] = d.max_depth;
    Json cells = Json::array();
    for (const auto& c : d.cells) cells.push_back(to_json(c));
    j["cells"] = cells;
    return j;
}

Json to_json(const ZetaFn& z) {
    Json j;
    j["t"] = "p^-s";
    j["low"] = z.low;
    j["num"] = coeffs(z.num);
    j["den"] = coeffs(z.den);
    j["text"] = z.str();
    return j;
}

Json to_json(const K0Element& e) {
    Json out = Json::array();
    for (const auto& t : e.terms) {
        Json j;
        j["residues"] = t.shape.residues.get_str();
        j["orders"] = t.shape.orders_str();
        j["grade"] = t.grade;
        j["mult"] = t.mult.get_str();
        out.push_back(j);
    }
    return out;
}

Json to_json(const K0Normal& n) {
    Json j;
    j["grade"] = n.grade;
    j["infinite"] = n.infinite;
    j["points"] = n.points.get_str();
    j["text"] = n.str();
    return j;
}

}  // namespace padic
