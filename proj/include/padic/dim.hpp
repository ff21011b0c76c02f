#pragma once

// Dimension of decomposed sets: the largest type sum of a cell.

#include <string>
#include <vector>

#include "padic/cells.hpp"

namespace padic {

class Dim {
public:
    static Dim minus_infinity() { return Dim(); }
    static Dim of(int v) {
        Dim d;
        d.empty_ = false;
        d.v_ = v;
        return d;
    }

    bool is_minus_infinity() const { return empty_; }
    int value() const;

    friend Dim operator+(Dim a, Dim b) { return a.empty_ || b.empty_ ? Dim() : of(a.v_ + b.v_); }
    friend bool operator==(Dim a, Dim b) { return a.empty_ == b.empty_ && (a.empty_ || a.v_ == b.v_); }
    friend bool operator<(Dim a, Dim b) {
        if (a.empty_) return !b.empty_;
        return !b.empty_ && a.v_ < b.v_;
    }
    std::string str() const { return empty_ ? "-inf" : std::to_string(v_); }

private:
    bool empty_ = true;
    int v_ = 0;
};

Dim max(Dim a, Dim b);

/// Over the kept cells.
Dim dim_of(const Decomposition& d);
Dim dim_of(const std::vector<ProductCell>& cells);

Dim dim_product(Dim a, Dim b);

/// Dimension of the union of the kept parts; throws std::invalid_argument
/// if two of them overlap.
Dim dim_union(const std::vector<Decomposition>& parts);

}  // namespace padic
