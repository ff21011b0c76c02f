#pragma once

// Cell decompositions adapted to polynomials and to quantifier-free sets.

#include <optional>
#include <string>
#include <vector>

#include "padic/cells.hpp"
#include "padic/formula.hpp"

namespace padic {

/// Residue-depth cap; PADIC_CELLS_MAX_DEPTH overrides the default.
int max_depth_cap();

/// Cells of the domain, each carrying an exact order law for f (and for
/// every derivative of f).
Decomposition prepare(const Poly& f, Prime p, const Domain& domain = {});

/// Cells on which phi has constant truth, recorded in Cell1::keep.
Decomposition decompose_set(const Formula& phi, Prime p, const Domain& domain = {});

/// 2 * ord_p Res(g, g') + deg f + 4 with g the squarefree part of f.
std::int64_t termination_bound(const Poly& f, Prime p);

/// Taylor coefficient polynomials f^(i)/i!, i = 0..deg f.
std::vector<Poly> taylor_polys(const Poly& f);

/// min_i ord(b_i) + i*m for the Taylor coefficients b_i of f at the center.
Val dominant_order(const Poly& f, const Point& center, std::int64_t m);

/// Image of one fiber ball under a polynomial.
struct BallImage {
    enum class Shape { Point, Ball, Undecided };
    Shape shape = Shape::Undecided;
    Rat center;
    std::int64_t radius = 0;  // ball {z : ord(z - center) >= radius}
};

struct FiberReport {
    std::size_t cell = 0;
    /// Uniform shape over the cell's fibers (Undecided if fibers differ or
    /// some fiber could not be settled).
    BallImage::Shape shape = BallImage::Shape::Undecided;
    /// Shells checked one by one; beyond `tail_from` the answer is symbolic.
    std::int64_t checked_to = 0;
    std::optional<std::int64_t> tail_from;
    std::string note;
};

struct BallReport {
    std::vector<FiberReport> cells;
    bool all_preserved() const;
};

/// Shape of the image of one ball {y : ord(y - a) >= r} under F, splitting
/// into smaller balls up to `extra` more digits when needed.
BallImage image_of_ball(const Poly& F, const Rat& a, std::int64_t r, Prime p, int extra);

BallReport preserves_balls_report(const Decomposition& d, const Poly& F);

}  // namespace padic
