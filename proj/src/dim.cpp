#include "padic/dim.hpp"

#include <stdexcept>

namespace padic {

int Dim::value() const {
    if (empty_) throw std::logic_error("Dim: value of the empty set's dimension");
    return v_;
}

Dim max(Dim a, Dim b) { return a < b ? b : a; }

Dim dim_of(const Decomposition& d) {
    Dim out = Dim::minus_infinity();
    for (const auto& c : d.cells)
        if (c.keep && !c.empty()) out = max(out, Dim::of(cell_type(c)));
    return out;
}

Dim dim_of(const std::vector<ProductCell>& cells) {
    Dim out = Dim::minus_infinity();
    for (const auto& pc : cells) {
        int s = 0;
        for (int t : cell_type(pc)) s += t;
        out = max(out, Dim::of(s));
    }
    return out;
}

Dim dim_product(Dim a, Dim b) { return a + b; }

Dim dim_union(const std::vector<Decomposition>& parts) {
    Dim out = Dim::minus_infinity();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (parts[i].p != parts[j].p) throw std::invalid_argument("dim_union: different primes");
            for (const auto& a : parts[i].cells) {
                if (!a.keep) continue;
                for (const auto& b : parts[j].cells)
                    if (b.keep && !intersect(a, b, parts[i].p).empty())
                        throw std::invalid_argument("dim_union: sets overlap");
            }
        }
        out = max(out, dim_of(parts[i]));
    }
    return out;
}

}  // namespace padic
