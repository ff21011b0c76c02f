#pragma once

// Brute-force ground truth used by the tests. Plain machine arithmetic on
// integer-coefficient polynomials, independent of the library's counting.

#include <cstdint>
#include <vector>

#include "padic/core.hpp"
#include "padic/poly.hpp"

namespace brute {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 ipow(i64 p, int k) {
    i64 r = 1;
    while (k-- > 0) r *= p;
    return r;
}

inline i64 mod(i128 x, i64 m) {
    i128 r = x % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

/// f(y) mod m for an integer y; coefficients low to high.
inline i64 eval_mod(const std::vector<i64>& f, i64 y, i64 m) {
    i128 acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod(acc * y + *it, m);
    return static_cast<i64>(acc);
}

/// Number of y mod p^k with f(y) = 0 mod p^k, by scanning every residue.
inline i64 count_roots(const std::vector<i64>& f, i64 p, int k) {
    i64 n = ipow(p, k), c = 0;
    for (i64 y = 0; y < n; ++y) c += eval_mod(f, y, n) == 0;
    return c;
}

/// mu(ord f >= m) = N_m / p^m, so mu(ord f = m) = N_m/p^m - N_{m+1}/p^{m+1}.
inline padic::Rat order_measure(const std::vector<i64>& f, i64 p, int m) {
    auto tail = [&](int j) { return padic::Rat(count_roots(f, p, j), ipow(p, j)); };
    padic::Rat r = tail(m) - tail(m + 1);
    r.canonicalize();
    return r;
}

inline std::vector<i64> coeffs(const padic::Poly& f) {
    std::vector<i64> out;
    for (int i = 0; i <= f.degree(); ++i) out.push_back(f.coeff(i).get_num().get_si());
    return out;
}

inline padic::Poly poly(const std::vector<i64>& c) {
    std::vector<padic::Rat> r;
    for (i64 x : c) r.emplace_back(static_cast<long>(x));
    return padic::Poly(r);
}

/// The 25 test polynomials; y^2 - p depends on the prime.
inline std::vector<padic::Poly> corpus(padic::Prime p) {
    std::vector<std::vector<i64>> c = {
        {0, 1}, {0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 0, 1}, {-1, 0, 1},
        {-static_cast<i64>(p), 0, 1}, {0, -1, 0, 1}, {1, -1, -1, 1}, {-7, 1}, {3, 2},
        {1, 0, 1}, {-2, 0, 1}, {1, 1, 1}, {-3, 0, 1}, {-12, 0, 3},
        {-2, 0, 0, 1}, {5, 3, 0, 1}, {-1, 0, 0, 0, 1}, {4, 0, 0, 0, 1}, {4, 0, -4, 0, 1},
        {-17, 0, 0, 0, 1}, {20, -10, 0, 5}, {-20, 8, -7, 2, 1}, {-12, 0, 1}, {-16, 0, 0, 0, 1},
    };
    std::vector<padic::Poly> out;
    for (const auto& x : c) out.push_back(poly(x));
    return out;
}

inline const std::vector<padic::Prime>& primes() {
    static const std::vector<padic::Prime> ps = {2, 3, 5, 7};
    return ps;
}

}  // namespace brute
