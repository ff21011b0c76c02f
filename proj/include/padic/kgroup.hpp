#pragma once

// Classes of auxiliary sets, the graded semiring they generate, and the
// Euler characteristic chi of a decomposition.

#include <string>
#include <vector>

#include "padic/cells.hpp"

namespace padic {

/// A factor of the order part: a finite interval of `length` shells, or a
/// half-infinite one (H).
struct OrderPart {
    bool infinite = false;
    std::int64_t length = 1;

    static OrderPart finite(std::int64_t n) { return OrderPart{false, n}; }
    static OrderPart half_line() { return OrderPart{true, 0}; }
    std::string str() const;
    friend auto operator<=>(const OrderPart&, const OrderPart&) = default;
};

/// residue set of `residues` elements times a product of order parts.
/// Canonical: factors of length one dropped, finite factors before H.
struct AuxShape {
    Int residues = 1;
    std::vector<OrderPart> orders;

    std::string orders_str() const;
    friend bool operator==(const AuxShape&, const AuxShape&) = default;
    friend bool operator<(const AuxShape& a, const AuxShape& b);
};

AuxShape canonical(AuxShape s);

struct K0Term {
    AuxShape shape;
    int grade = 0;
    Int mult = 1;
    friend bool operator==(const K0Term&, const K0Term&) = default;
};

/// A finite multiset of graded classes, kept sorted with merged multiplicities.
struct K0Element {
    std::vector<K0Term> terms;

    void add(const AuxShape& s, int grade, const Int& mult = 1);
    std::string str() const;
    friend bool operator==(const K0Element&, const K0Element&) = default;
};

K0Element k0_add(const K0Element& a, const K0Element& b);
K0Element k0_mul(const K0Element& a, const K0Element& b);

AuxShape cell_shape(const Cell1& c, Prime p);
/// Sum over kept cells of [auxiliary image][type].
K0Element chi(const Decomposition& d);
K0Element chi(const std::vector<ProductCell>& cells, Prime p);

/// Class modulo the relations identifying any two decompositions of one set.
/// Infinite definable sets of equal dimension are isomorphic, so what is
/// left is the top grade, plus the number of points when that grade is 0.
struct K0Normal {
    int grade = -1;  // -1 for the empty set
    bool infinite = false;
    Int points = 0;  // grade 0 only
    friend bool operator==(const K0Normal&, const K0Normal&) = default;
    std::string str() const;
};

K0Normal normal_form(const K0Element& e);

struct CvResult {
    bool equal = false;
    K0Element chi1, chi2, chi_common;
};

/// Refinement invariance of chi for two decompositions of the same set.
/// Throws std::invalid_argument when the kept sets differ.
CvResult cv_check(const Decomposition& d1, const Decomposition& d2);

}  // namespace padic
