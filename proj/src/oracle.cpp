#include "padic/oracle.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "padic/decompose.hpp"
#include "padic/measure.hpp"

namespace padic::oracle {

namespace {

constexpr std::int64_t kZero = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t val(const Int& x, Prime p) {
    if (x == 0) return kZero;
    Int t = x;
    std::int64_t v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

Int power(Prime p, std::int64_t k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
    return r;
}

// Coefficients of f(y + c).
std::vector<Int> shifted(std::vector<Int> a, const Int& c) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) a[j] += c * a[j + 1];
    return a;
}

// Roots of g(p^j t) mod p^k with t ranging over Z/p^(k-j), g already
// recentered at the class representative.
Int lift(const std::vector<Int>& g, Prime p, int j, int k) {
    std::int64_t v0 = val(g[0], p);
    std::int64_t rest = kZero;
    for (std::size_t i = 1; i < g.size(); ++i)
        rest = std::min(rest, val(g[i], p) + static_cast<std::int64_t>(i) * j);
    if (std::min(v0, rest) >= k) return power(p, k - j);
    if (v0 < rest || j >= k) return 0;
    Int total = 0;
    Int step = power(p, j);
    for (Prime digit = 0; digit < p; ++digit) total += lift(shifted(g, step * Int(digit)), p, j + 1, k);
    return total;
}

}  // namespace

std::vector<Int> integer_coeffs(const Poly& f, Prime p) {
    Int l = 1;
    for (const Rat& c : f.coeffs()) {
        if (mpz_divisible_ui_p(c.get_den_mpz_t(), p))
            throw UnsupportedInput("oracle: p divides a coefficient denominator");
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<Int> out;
    for (const Rat& c : f.coeffs()) {
        Rat s = c * Rat(l);
        out.push_back(s.get_num());
    }
    return out;
}

Int count_roots_mod(const Poly& f, Prime p, int k) {
    if (f.is_zero()) return power(p, k);
    return lift(integer_coeffs(f, p), p, 0, k);
}

Int count_roots_scan(const Poly& f, Prime p, int k) {
    std::vector<Int> a = integer_coeffs(f, p);
    Int mod = power(p, k);
    Int count = 0;
    for (Int y = 0; y < mod; ++y) {
        Int acc = 0;
        for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (acc * y + *it) % mod;
        if (acc == 0) ++count;
    }
    return count;
}

std::vector<Int> root_counts(const Poly& f, Prime p, int K) {
    std::vector<Int> out;
    for (int k = 1; k <= K; ++k) out.push_back(count_roots_mod(f, p, k));
    return out;
}

Int count_roots_in_ball(const Poly& f, Prime p, int k, const Int& a, int j) {
    if (j > k) throw std::invalid_argument("count_roots_in_ball: ball finer than the modulus");
    if (f.is_zero()) return power(p, k - j);
    return lift(shifted(integer_coeffs(f, p), a), p, j, k);
}

Rat order_measure(const Poly& f, Prime p, int m) {
    Rat a = Rat(m == 0 ? Int(1) : count_roots_mod(f, p, m)) / Rat(power(p, m));
    Rat b = Rat(count_roots_mod(f, p, m + 1)) / Rat(power(p, m + 1));
    Rat r = a - b;
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- partitions

namespace {

struct FastCell {
    bool point = false;
    std::int64_t center = 0;
    MRange range;
    int depth = 1;
    bool all = true;
    std::vector<char> table;  // membership mod p^depth when small
    const ResidueSet* residue = nullptr;
};

std::int64_t ipow(Prime p, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<std::int64_t>(p);
    return r;
}

bool in_residue(const FastCell& c, std::int64_t u, Prime p) {
    if (c.all) return true;
    if (!c.table.empty()) return c.table[static_cast<std::size_t>(u % ipow(p, c.depth))] != 0;
    return c.residue->contains(Int(static_cast<long>(u)), p);
}

}  // namespace

PartitionReport verify_partition(const Decomposition& d, int k) {
    const Prime p = d.p;
    if (!(d.domain == Domain{})) throw std::invalid_argument("verify_partition: domain must be Z_p");
    PartitionReport rep;
    rep.k = k;
    const std::int64_t P = ipow(p, k);
    rep.classes = P;
    std::vector<FastCell> cells;
    for (const auto& c : d.cells) {
        FastCell fc;
        fc.point = c.is_point();
        Rat a = c.center.approx(k + 1);
        if (ord(a, p) < Val(0)) throw std::invalid_argument("verify_partition: center outside Z_p");
        fc.center = reduce_mod(a, p, k).get_si();
        fc.range = c.range;
        fc.depth = c.residue.depth;
        fc.all = c.residue.all;
        fc.residue = &c.residue;
        if (!fc.all && fc.depth <= 20 && ipow(p, fc.depth) <= (1 << 22)) {
            fc.table.assign(static_cast<std::size_t>(ipow(p, fc.depth)), 0);
            for (const Int& u : c.residue.units) fc.table[u.get_ui()] = 1;
        }
        cells.push_back(std::move(fc));
    }
    for (std::int64_t r = 0; r < P; ++r) {
        int full = 0, partial = 0;
        for (const FastCell& c : cells) {
            std::int64_t diff = ((r - c.center) % P + P) % P;
            if (c.point) {
                if (diff == 0) ++partial;
                continue;
            }
            if (diff == 0) {
                if (!c.range.at_least(k).empty()) ++partial;
                continue;
            }
            int v = 0;
            while (diff % static_cast<std::int64_t>(p) == 0) {
                diff /= static_cast<std::int64_t>(p);
                ++v;
            }
            if (!c.range.contains(v)) continue;
            const int known = k - v;  // unit digits fixed by the class
            if (c.depth <= known) {
                if (in_residue(c, diff % ipow(p, c.depth), p)) ++full;
                continue;
            }
            if (c.all) {
                ++full;
                continue;
            }
            const std::int64_t mod = ipow(p, known);
            std::int64_t hits = 0;
            for (const Int& u : c.residue->units)
                if (u.get_si() % mod == diff) ++hits;
            if (hits == ipow(p, c.depth - known)) ++full;
            else if (hits > 0) ++partial;
        }
        if (full == 1 && partial == 0) continue;
        if (full == 0 && partial > 0) {
            ++rep.undecided;
            if (rep.undecided_classes.size() < 16) rep.undecided_classes.push_back(r);
            continue;
        }
        if (rep.violations.size() < 100) {
            rep.violations.push_back("class " + std::to_string(r) + " mod " + std::to_string(p) + "^" +
                                     std::to_string(k) + ": " + std::to_string(full) + " containing, " +
                                     std::to_string(partial) + " partial");
        }
    }
    return rep;
}

bool exact_partition(const Decomposition& d, std::string* why) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    for (std::size_t i = 0; i < d.cells.size(); ++i)
        for (std::size_t j = i + 1; j < d.cells.size(); ++j)
            if (!intersect(d.cells[i], d.cells[j], d.p).empty())
                return fail("cells " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    Rat total = measure(d);
    if (total != domain_measure(d.domain, d.p))
        return fail("total measure " + total.get_str() + " differs from the domain measure");
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
        const Cell1& c = d.cells[i];
        if (c.is_point()) continue;
        // Only the center can be missed by cells of full measure.
        bool in_domain = c.center.ord_diff(d.domain.center) >= Val(d.domain.radius);
        if (!in_domain) continue;
        bool found = std::any_of(d.cells.begin(), d.cells.end(),
                                 [&](const Cell1& o) { return contains(o, c.center); });
        if (!found) return fail("center of cell " + std::to_string(i) + " is not covered");
    }
    return true;
}

// ---------------------------------------------------------------- laws

LawReport verify_laws(const Decomposition& d, const Poly& f, int samples, std::uint64_t seed) {
    const Prime p = d.p;
    LawReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (std::size_t idx = 0; idx < d.cells.size(); ++idx) {
        const Cell1& c = d.cells[idx];
        const OrderLaw* law = c.law_for(f);
        if (!law) {
            rep.failures.push_back(LawFailure{idx, Rat(0), "a law", "none", "law"});
            continue;
        }
        if (c.is_point()) {
            ++rep.checked;
            if (c.center.exact()) {
                Val got = ord(f.eval(c.center.value()), p);
                if (got != law->e0)
                    rep.failures.push_back(LawFailure{idx, c.center.value(), law->e0.str(), got.str(), "law"});
            } else {
                const std::int64_t prec = law->e0.is_inf() ? 60 : law->e0.value() + 40;
                Rat y = c.center.approx(prec);
                Val got = ord(f.eval(y), p);
                bool good = law->e0.is_inf() ? got >= Val(prec / 2) : got == law->e0;
                if (!good) rep.failures.push_back(LawFailure{idx, y, law->e0.str(), got.str(), "law"});
            }
            continue;
        }
        std::vector<std::int64_t> ms;
        for (std::int64_t i = 0; i < 4; ++i) {
            std::int64_t m = c.range.lo + i * c.range.step;
            if (c.range.contains(m)) ms.push_back(m);
        }
        if (c.range.hi) {
            for (std::int64_t m : {c.range.last(), c.range.last() - c.range.step})
                if (c.range.contains(m) && std::find(ms.begin(), ms.end(), m) == ms.end()) ms.push_back(m);
        }
        std::vector<Int> classes = c.residue.all ? c.residue.lift(c.residue.depth, p) : c.residue.units;
        std::vector<Val> bound(ms.size());
        for (std::size_t i = 0; i < ms.size(); ++i) bound[i] = dominant_order(f, c.center, ms[i]);
        std::uniform_int_distribution<long> digits(0, 1'000'000);
        for (int s = 0; s < samples; ++s) {
            const std::size_t mi = static_cast<std::size_t>(s) % ms.size();
            const std::int64_t m = ms[mi];
            const Int& u = classes[(static_cast<std::size_t>(s) / ms.size()) % classes.size()];
            Rat tail(digits(rng));
            if (s % 3 == 2) tail /= Rat(1 + static_cast<long>(p) * (1 + digits(rng) % 50));
            tail.canonicalize();
            Rat y = sample_member(c, m, u, tail);
            ++rep.checked;
            Val expected = law->at(Val(m));
            Val got = ord(f.eval(y), p);
            if (got != expected) {
                rep.failures.push_back(LawFailure{idx, y, expected.str(), got.str(), "law"});
                continue;
            }
            if (got > bound[mi] + Val(d.k_depth))
                rep.failures.push_back(
                    LawFailure{idx, y, "<= " + (bound[mi] + Val(d.k_depth)).str(), got.str(), "bound"});
        }
    }
    return rep;
}

}  // namespace padic::oracle
