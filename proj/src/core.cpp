#include "padic/core.hpp"

namespace padic {

bool is_prime(Prime p) {
    if (p < 2) return false;
    for (Prime q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

void require_prime(Prime p) {
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

Int pow_p(Prime p, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("pow_p: negative exponent");
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
    return r;
}

Rat rat_pow_p(Prime p, std::int64_t k) {
    if (k >= 0) return Rat(pow_p(p, k));
    Rat r(Int(1), pow_p(p, -k));
    r.canonicalize();
    return r;
}

std::int64_t remove_p(Int& n, Prime p) {
    if (n == 0) throw std::invalid_argument("remove_p: zero");
    Int pz(p);
    return static_cast<std::int64_t>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

Val ord(const Int& x, Prime p) {
    if (x == 0) return Val::inf();
    Int n = x;
    return Val(remove_p(n, p));
}

Val ord(const Rat& x, Prime p) {
    if (x == 0) return Val::inf();
    Int num = x.get_num();
    Int den = x.get_den();
    return Val(remove_p(num, p) - remove_p(den, p));
}

namespace {

// Splits x = p^v * a/b with a, b prime to p.
std::int64_t split_unit(const Rat& x, Prime p, Int& a, Int& b) {
    a = x.get_num();
    b = x.get_den();
    return remove_p(a, p) - remove_p(b, p);
}

Int unit_mod(const Int& a, const Int& b, const Int& mod) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("unit_mod: denominator not invertible");
    Int r = (a * inv) % mod;
    if (r < 0) r += mod;
    return r;
}

}  // namespace

UnitDigits unit_digits(const Rat& x, Prime p, int d) {
    if (x == 0) throw std::invalid_argument("unit_digits: zero has no unit part");
    if (d < 1) throw std::invalid_argument("unit_digits: depth must be positive");
    Int a, b;
    split_unit(x, p, a, b);
    return UnitDigits{d, unit_mod(a, b, pow_p(p, d))};
}

RvData rv(const Rat& x, Prime p, int d) {
    if (d < 1) throw std::invalid_argument("rv: depth must be positive");
    if (x == 0) return RvData::make_zero(d);
    Int a, b;
    std::int64_t v = split_unit(x, p, a, b);
    return RvData::make(d, v, unit_mod(a, b, pow_p(p, d)));
}

RvData RvData::project(int to_depth, Prime p) const {
    if (to_depth > depth) throw std::invalid_argument("RvData::project: cannot raise depth");
    if (zero) return make_zero(to_depth);
    Int mod = pow_p(p, to_depth);
    Int u = unit % mod;
    return make(to_depth, valuation, u);
}

Int reduce_mod(const Rat& x, Prime p, std::int64_t k) {
    Int mod = pow_p(p, k);
    if (x.get_den() == 1) {
        Int r = x.get_num() % mod;
        if (r < 0) r += mod;
        return r;
    }
    Int den = x.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        throw std::invalid_argument("reduce_mod: value is not p-integral");
    return unit_mod(x.get_num(), den, mod);
}

Rat truncate(const Rat& x, Prime p, std::int64_t n) {
    if (x == 0) return Rat(0);
    Int a, b;
    std::int64_t v = split_unit(x, p, a, b);
    if (v >= n) return Rat(0);
    Int u = unit_mod(a, b, pow_p(p, n - v));
    Rat r(u);
    r *= rat_pow_p(p, v);
    return r;
}

Int unit_count(Prime p, int d) {
    return Int(p - 1) * pow_p(p, d - 1);
}

std::string to_string(const Rat& x) {
    return x.get_str();
}

std::string to_string(const RvData& r) {
    if (r.zero) return "0";
    return "(d=" + std::to_string(r.depth) + ",m=" + std::to_string(r.valuation) +
           ",u=" + r.unit.get_str() + ")";
}

}  // namespace padic
