#pragma once

// Corpus-wide checks shared by the unit tests and the acceptance binary.

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "padic/decompose.hpp"
#include "padic/hensel.hpp"
#include "padic/measure.hpp"
#include "padic/oracle.hpp"

namespace suites {

using namespace padic;

struct Outcome {
    bool ok = true;
    long cases = 0;
    long skipped = 0;
    std::vector<std::string> failures;

    void fail(const std::string& what) {
        ok = false;
        if (failures.size() < 12) failures.push_back(what);
    }
    std::string summary() const {
        std::ostringstream os;
        os << cases << " cases";
        if (skipped) os << ", " << skipped << " skipped";
        for (const auto& f : failures) os << "\n    " << f;
        return os.str();
    }
};

inline std::string tag(const Poly& f, Prime p) { return "[" + f.str() + " @ " + std::to_string(p) + "]"; }

/// Exact cell algebra plus residue scan at depth k.
inline Outcome partition(const std::vector<Prime>& ps, int k) {
    Outcome out;
    for (Prime p : ps)
        for (const Poly& f : brute::corpus(p)) {
            ++out.cases;
            Decomposition d = prepare(f, p);
            std::string why;
            if (!oracle::exact_partition(d, &why)) out.fail(tag(f, p) + " exact: " + why);
            oracle::PartitionReport r = oracle::verify_partition(d, k);
            if (!r.ok()) out.fail(tag(f, p) + " scan: " + r.violations.front());
        }
    return out;
}

inline Outcome laws(const std::vector<Prime>& ps, int samples) {
    Outcome out;
    for (Prime p : ps)
        for (const Poly& f : brute::corpus(p)) {
            Decomposition d = prepare(f, p);
            oracle::LawReport r = oracle::verify_laws(d, f, samples);
            out.cases += r.checked;
            for (const auto& x : r.failures)
                out.fail(tag(f, p) + " cell " + std::to_string(x.cell) + " y=" + x.y.get_str() + " " + x.kind +
                         ": expected " + x.expected + ", got " + x.got);
        }
    return out;
}

/// measure_of_order against N_m p^-m - N_{m+1} p^-(m+1) from a residue scan.
inline Outcome order_measures(const std::vector<Prime>& ps, int max_m) {
    Outcome out;
    for (Prime p : ps)
        for (const Poly& f : brute::corpus(p)) {
            Decomposition d = prepare(f, p);
            std::vector<brute::i64> c = brute::coeffs(f);
            for (int m = 0; m <= max_m; ++m) {
                ++out.cases;
                Rat a = measure_of_order(d, f, m);
                Rat b = brute::order_measure(c, static_cast<brute::i64>(p), m);
                if (a != b) out.fail(tag(f, p) + " m=" + std::to_string(m) + ": " + a.get_str() + " vs " + b.get_str());
            }
        }
    return out;
}

/// (1 - 1/p) / (1 - t^k / p).
inline ZetaFn monomial_zeta(Prime p, int k) {
    Rat ip(1, static_cast<long>(p));
    return make_zeta(Poly::constant(1 - ip), Poly::constant(1) - Poly::monomial(ip, k));
}

inline Outcome zeta_forms(const std::vector<Prime>& ps, const std::vector<Prime>& corpus_ps) {
    Outcome out;
    for (Prime p : ps)
        for (int k = 1; k <= 3; ++k) {
            ++out.cases;
            Poly f = Poly::monomial(1, k);
            ZetaFn z = igusa_zeta(prepare(f, p), f);
            if (!(z == monomial_zeta(p, k)))
                out.fail("y^" + std::to_string(k) + " @ " + std::to_string(p) + ": " + z.str());
        }
    for (Prime p : corpus_ps)
        for (const Poly& f : brute::corpus(p)) {
            ++out.cases;
            Rat one = igusa_zeta(prepare(f, p), f).at(1);
            if (one != 1) out.fail(tag(f, p) + " Z(1) = " + one.get_str());
        }
    return out;
}

namespace detail {

inline brute::i64 ord_mod(brute::i64 x, brute::i64 p, int cap) {
    if (x == 0) return cap;
    int o = 0;
    while (x % p == 0) {
        x /= p;
        ++o;
    }
    return o;
}

/// Distinct roots of f with rv_d = (v, u) seen modulo p^K: classes y with
/// f(y) = 0 mod p^K and 2 ord f'(y) < K, identified modulo p^(K - ord f'(y)).
inline std::size_t liftable_classes(const Poly& f, brute::i64 p, int d, int v, brute::i64 u, int K) {
    std::vector<brute::i64> c = brute::coeffs(f), dc = brute::coeffs(f.derivative());
    const brute::i64 mod = brute::ipow(p, K), pv = brute::ipow(p, v), pd = brute::ipow(p, d);
    const brute::i64 n = brute::ipow(p, K - v - d);
    std::set<std::pair<int, brute::i64>> seen;
    for (brute::i64 t = 0; t < n; ++t) {
        brute::i64 y = pv * (u + pd * t);
        if (brute::eval_mod(c, y, mod) != 0) continue;
        int e = static_cast<int>(ord_mod(brute::eval_mod(dc, y, mod), p, K));
        if (2 * e >= K) continue;
        seen.emplace(e, y % brute::ipow(p, K - e));
    }
    return seen.size();
}

}  // namespace detail

/// Every rv-class (depth d <= 2, valuation 0..2) where some digit lift of
/// the class satisfies the Hensel conditions.
inline Outcome hensel(const std::vector<Prime>& ps, int w_samples, std::uint64_t seed = oracle::kDefaultSeed) {
    Outcome out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> digits(0, 1'000'000);
    for (Prime p : ps)
        for (const Poly& f : brute::corpus(p)) {
            std::vector<Rat> a;
            for (int i = 0; i <= f.degree(); ++i) a.push_back(f.coeff(i));
            const brute::i64 P = static_cast<brute::i64>(p);
            for (int d = 1; d <= 2; ++d)
                for (int v = 0; v <= 2; ++v)
                    for (brute::i64 u = 1; u < brute::ipow(P, d); ++u) {
                        if (u % P == 0) continue;
                        RvData x0 = RvData::make(d, v, Int(static_cast<long>(u)));
                        bool accepted = false;
                        for (int s = 0; s <= 2 && !accepted; ++s)
                            for (brute::i64 t = 0; t < brute::ipow(P, s) && !accepted; ++t) {
                                Rat x = rat_pow_p(p, v) * Rat(static_cast<long>(u + brute::ipow(P, d) * t));
                                accepted = check_conditions(a, x, x0, d, p).has_value();
                            }
                        if (!accepted) continue;
                        ++out.cases;
                        std::string where = tag(f, p) + " rv_" + std::to_string(d) + "=(" + std::to_string(v) +
                                            "," + std::to_string(u) + ")";
                        auto r0 = h(a, x0, p);
                        if (!r0) {
                            out.fail(where + ": h returned zero");
                            continue;
                        }
                        PadicApprox r = refine_root(*r0, v + d + 8);
                        Val fx = ord(f.eval(r.approx), p);
                        Val dfx = ord(f.derivative().eval(r.approx), p);
                        if (r.exact() ? !fx.is_inf() : fx < r.precision + dfx) out.fail(where + ": certificate");
                        RvData got = rv(r.approx, p, d);
                        if (got.zero || got.valuation != v || got.unit != u) out.fail(where + ": rv tag");
                        const brute::i64 e = order_law_at_root(f, r).value();
                        const int K = static_cast<int>(v + d + 2 * e + 2);
                        if (brute::ipow(P, K - v - d) > 2'000'000) {
                            ++out.skipped;
                        } else if (std::size_t n = detail::liftable_classes(f, P, d, v, u, K); n != 1) {
                            out.fail(where + ": " + std::to_string(n) + " liftable classes mod p^" + std::to_string(K));
                        }
                        PadicApprox deep = refine_root(r, v + d + 80);
                        for (int i = 0; i < w_samples; ++i) {
                            Rat tau(digits(rng), 1 + static_cast<long>(p) * digits(rng));
                            tau.canonicalize();
                            Rat w = rat_pow_p(p, v) * (Rat(static_cast<long>(u)) + rat_pow_p(p, d) * tau);
                            Val lhs = ord(f.eval(w), p);
                            Val dist = ord(w - deep.approx, p);
                            if (!deep.exact() && dist >= deep.precision) {
                                out.fail(where + ": w too close to resolve");
                                continue;
                            }
                            if (lhs != Val(e) + dist) out.fail(where + ": (h5) fails at w=" + w.get_str());
                        }
                    }
        }
    return out;
}

}  // namespace suites
