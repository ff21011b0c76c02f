#pragma once

// Haar measure (mu(Z_p) = 1) and Igusa zeta functions from decompositions.

#include <string>
#include <vector>

#include "padic/cells.hpp"

namespace padic {

Rat cell_measure(const Cell1& c, Prime p);
Rat domain_measure(const Domain& d, Prime p);
/// Total measure of the cells, or of the kept cells only.
Rat measure(const Decomposition& d, bool kept_only = false);

/// mu{y : ord f(y) = m}; needs order laws for f on every cell.
Rat measure_of_order(const Decomposition& d, const Poly& f, std::int64_t m);

/// t^low * num(t) / den(t) in t = p^-s, reduced, den(0) = 1.
struct ZetaFn {
    Poly num;
    Poly den;
    std::int64_t low = 0;

    Rat at(const Rat& t) const;
    /// Power-series coefficients of t^low .. t^(low+n-1).
    std::vector<Rat> series(int n) const;
    std::string str() const;
    friend bool operator==(const ZetaFn&, const ZetaFn&) = default;
};

ZetaFn make_zeta(Poly num, Poly den, std::int64_t low = 0);

ZetaFn igusa_zeta(const Decomposition& d, const Poly& f);

}  // namespace padic
