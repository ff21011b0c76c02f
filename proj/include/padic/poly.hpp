#pragma once

// Univariate polynomials over Q with exact coefficients.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padic/core.hpp"

namespace padic {

class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);
    Poly(std::initializer_list<long> coeffs);

    static Poly constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }
    static Poly monomial(const Rat& c, int k);
    static Poly linear(const Rat& c0, const Rat& c1) { return Poly(std::vector<Rat>{c0, c1}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
    const Rat& lead() const { return c_.back(); }

    Rat eval(const Rat& x) const;
    Poly derivative() const;
    /// Coefficients b_i with f(y) = sum b_i (y - c)^i.
    Poly taylor_shift(const Rat& c) const;
    /// f(a*y + b).
    Poly compose_linear(const Rat& a, const Rat& b) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rat& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator<(const Poly& a, const Poly& b);

    /// Quotient and remainder; divisor nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly monic() const;

    /// Integer coefficients with content 1 and positive leading coefficient,
    /// having the same roots.
    std::vector<Int> primitive_integer() const;
    Poly primitive() const;

    /// Human-readable form in the variable y, parseable back.
    std::string str(const std::string& var = "y") const;

private:
    void trim();
    std::vector<Rat> c_;
};

Poly gcd(const Poly& a, const Poly& b);      // monic (or zero)
Poly squarefree_part(const Poly& f);          // f / gcd(f, f'), primitive

/// Resultant via fraction-free elimination on the Sylvester matrix.
Rat resultant(const Poly& f, const Poly& g);
/// ord_p of the resultant; infinity iff f and g share a factor.
Val resultant_val(const Poly& f, const Poly& g, Prime p);

/// Bareiss determinant of a square integer matrix.
Int determinant(std::vector<std::vector<Int>> m);

}  // namespace padic
