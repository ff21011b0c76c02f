#pragma once

// Univariate cells with centers, decompositions, and their common refinement.

#include <optional>
#include <string>
#include <vector>

#include "padic/core.hpp"
#include "padic/hensel.hpp"
#include "padic/poly.hpp"
#include "padic/term.hpp"

namespace padic {

/// Integers lo <= m <= hi with m = lo mod step; hi empty means unbounded.
struct MRange {
    std::int64_t lo = 0;
    std::optional<std::int64_t> hi;
    std::int64_t step = 1;

    static MRange single(std::int64_t m) { return MRange{m, m, 1}; }
    static MRange from(std::int64_t lo) { return MRange{lo, std::nullopt, 1}; }
    static MRange between(std::int64_t lo, std::int64_t hi) { return MRange{lo, hi, 1}; }

    bool empty() const { return hi && *hi < lo; }
    bool finite() const { return hi.has_value(); }
    bool is_single() const { return hi && *hi == lo; }
    bool contains(std::int64_t m) const;
    /// Number of members; only for finite ranges.
    std::int64_t count() const;
    /// Largest member (finite ranges).
    std::int64_t last() const;
    /// Members m >= bound / m <= bound.
    MRange at_least(std::int64_t bound) const;
    MRange at_most(std::int64_t bound) const;
    MRange intersect(const MRange& o) const;
    std::vector<std::int64_t> members() const;  // finite ranges only

    friend bool operator==(const MRange&, const MRange&) = default;
    std::string str() const;

private:
    void normalize();
};

/// A set of units modulo p^depth, or all of them.
struct ResidueSet {
    int depth = 1;
    bool all = true;
    std::vector<Int> units;  // sorted, distinct, only when !all

    static ResidueSet every(int depth) { return ResidueSet{depth, true, {}}; }
    static ResidueSet of(int depth, std::vector<Int> units);

    bool empty() const { return !all && units.empty(); }
    /// Membership of a unit given modulo p^d for some d >= depth.
    bool contains(const Int& u, Prime p) const;
    Int count(Prime p) const;
    /// Explicit members at a (possibly larger) depth.
    std::vector<Int> lift(int to_depth, Prime p) const;
    /// Same set presented at a larger depth.
    ResidueSet raised(int to_depth, Prime p) const;

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;
    std::string str() const;
};

ResidueSet intersect(const ResidueSet& a, const ResidueSet& b, Prime p);

/// ord f(y) = e0 + i0 * ord(y - center) on every member.
struct OrderLaw {
    Val e0;
    int i0 = 0;

    Val at(Val m) const { return i0 == 0 ? e0 : e0 + (m.is_inf() ? Val::inf() : Val(i0 * m.value())); }
    friend bool operator==(const OrderLaw&, const OrderLaw&) = default;
};

struct TrackedLaw {
    Poly poly;
    OrderLaw law;
};

enum class CellKind { Point = 0, Ball = 1 };

/// A univariate cell: either the single point `center`, or the family of
/// balls {y : ord(y - c) = m, unit_digits(y - c) in residue} for m in range.
struct Cell1 {
    Point center;
    CellKind kind = CellKind::Ball;
    MRange range;
    ResidueSet residue;
    std::vector<TrackedLaw> laws;
    std::optional<Term> term;
    bool keep = true;

    static Cell1 point(Point c);
    static Cell1 family(Point c, MRange range, ResidueSet residue);

    bool is_point() const { return kind == CellKind::Point; }
    const OrderLaw* law_for(const Poly& f) const;
    void set_law(const Poly& f, OrderLaw law);
    bool empty() const { return kind == CellKind::Ball && (range.empty() || residue.empty()); }
};

/// The ambient ball {y : ord(y - center) >= radius}; Z_p by default.
struct Domain {
    Rat center{0};
    std::int64_t radius = 0;
    bool operator==(const Domain& o) const { return center == o.center && radius == o.radius; }
};

struct Decomposition {
    Prime p = 2;
    Domain domain;
    std::vector<Cell1> cells;
    /// Digit depth playing the role of the constant k in the order inequality.
    int k_depth = 0;
    /// Largest residue depth reached while building.
    int max_depth = 1;
};

struct ProductCell {
    std::vector<Cell1> factors;
    std::vector<int> type;
};

bool contains(const Cell1& c, const Rat& y, Prime p);
bool contains(const Cell1& c, const Point& y);

int cell_type(const Cell1& c);
std::vector<int> cell_type(const ProductCell& c);

ProductCell product(const std::vector<Cell1>& cs);

/// Kept cells of a decomposition as one-factor product cells.
std::vector<ProductCell> as_products(const Decomposition& d);
/// Pairwise products of kept cells: a decomposition of the product set.
std::vector<ProductCell> product_cells(const std::vector<ProductCell>& a, const Decomposition& b);

/// Cells of the intersection of two cells; pieces are expressed around one
/// of the two centers.
std::vector<Cell1> intersect(const Cell1& a, const Cell1& b, Prime p);

Decomposition refine_common(const Decomposition& d1, const Decomposition& d2);

/// The term attached to the center; throws for cells without provenance.
Term center_term(const Cell1& c);

/// Deterministic cell order.
void canonicalize(Decomposition& d);

/// Exact test that two cells are equal as sets (same center and data).
bool same_cell(const Cell1& a, const Cell1& b, Prime p);

/// A rational member of the ball with shell m and residue class u (mod
/// p^depth), any deeper digits set to `tail`.
Rat sample_member(const Cell1& c, std::int64_t m, const Int& u, const Rat& tail);

std::string describe(const Cell1& c);

}  // namespace padic
