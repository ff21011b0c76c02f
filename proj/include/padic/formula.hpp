#pragma once

// Quantifier-free formulas in one valued-field variable y.

#include <string>
#include <variant>
#include <vector>

#include "padic/core.hpp"
#include "padic/poly.hpp"

namespace padic {

enum class Rel { Lt, Le, Eq, Ge, Gt };

/// ord f REL ord g + offset. "ord f REL c" is stored with g = 1.
struct OrdCmp {
    Poly f;
    Poly g;
    std::int64_t offset = 0;
    Rel rel = Rel::Eq;
    friend bool operator==(const OrdCmp&, const OrdCmp&) = default;
};

/// f = 0.
struct OrdEqInf {
    Poly f;
    friend bool operator==(const OrdEqInf&, const OrdEqInf&) = default;
};

/// f != 0 and the first d unit digits of f equal u.
struct AcEq {
    int d = 1;
    Poly f;
    Int u;
    friend bool operator==(const AcEq&, const AcEq&) = default;
};

/// rv_d(f) = tag.
struct RvEq {
    int d = 1;
    Poly f;
    RvData tag;
    friend bool operator==(const RvEq&, const RvEq&) = default;
};

/// f != 0 and ord f = r mod n.
struct OrdMod {
    Poly f;
    std::int64_t n = 1;
    std::int64_t r = 0;
    friend bool operator==(const OrdMod&, const OrdMod&) = default;
};

using Atom = std::variant<OrdCmp, OrdEqInf, AcEq, RvEq, OrdMod>;

struct Formula {
    enum class Kind { Leaf, And, Or, Not };
    Kind kind = Kind::Leaf;
    Atom atom;
    std::vector<Formula> kids;

    static Formula leaf(Atom a);
    static Formula conj(std::vector<Formula> parts);
    static Formula disj(std::vector<Formula> parts);
    static Formula negate(Formula f);

    friend bool operator==(const Formula&, const Formula&) = default;
};

/// The polynomial an atom talks about (plus g for comparisons).
std::vector<Poly> atom_polys(const Atom& a);
/// Distinct polynomials of a formula, in order of first occurrence.
std::vector<Poly> formula_polys(const Formula& f);

bool holds(const Rel rel, Val lhs, Val rhs);
/// Truth of the formula at a rational point.
bool holds(const Formula& phi, const Rat& y, Prime p);

std::string str(Rel rel);
std::string str(const Atom& a);
/// Printed in the surface syntax accepted by parse_formula.
std::string str(const Formula& f);

}  // namespace padic
