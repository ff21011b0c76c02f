#include "padic/poly.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

Poly::Poly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) c_.emplace_back(c);
    trim();
}

Poly Poly::monomial(const Rat& c, int k) {
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1, Rat(0));
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly::eval(const Rat& x) const {
    Rat r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Poly Poly::taylor_shift(const Rat& c) const {
    // Repeated synthetic division by (y - c).
    std::vector<Rat> b = c_;
    const std::size_t n = b.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t i = n - 1; i > k; --i) b[i - 1] += c * b[i];
    return Poly(std::move(b));
}

Poly Poly::compose_linear(const Rat& a, const Rat& b) const {
    Poly lin = Poly::linear(b, a);
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly::constant(*it);
    return acc;
}

Poly Poly::operator-() const {
    std::vector<Rat> v = c_;
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
}

Poly operator*(const Rat& s, const Poly& a) {
    std::vector<Rat> v = a.c_;
    for (auto& x : v) x *= s;
    return Poly(std::move(v));
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("Poly::divmod: division by zero polynomial");
    std::vector<Rat> r = c_;
    if (degree() < d.degree()) return {Poly{}, *this};
    std::vector<Rat> q(static_cast<std::size_t>(degree() - d.degree()) + 1, Rat(0));
    const Rat& lc = d.lead();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        Rat t = r[k + d.degree()] / lc;
        q[k] = t;
        if (t == 0) continue;
        for (int j = 0; j <= d.degree(); ++j) r[k + j] -= t * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    return Rat(1) / lead() * *this;
}

std::vector<Int> Poly::primitive_integer() const {
    if (is_zero()) return {};
    Int l(1);
    for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> out;
    out.reserve(c_.size());
    Int g(0);
    for (const auto& c : c_) {
        Int v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.push_back(std::move(v));
    }
    if (out.back() < 0) g = -g;
    for (auto& v : out) v /= g;
    return out;
}

Poly Poly::primitive() const {
    std::vector<Rat> v;
    for (auto& c : primitive_integer()) v.emplace_back(c);
    return Poly(std::move(v));
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rat c = c_[i];
        if (c == 0) continue;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool unit = (a == 1);
        if (i == 0 || !unit) {
            os << a.get_str();
            if (i > 0) os << "*";
        }
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Poly squarefree_part(const Poly& f) {
    if (f.degree() <= 0) return f.is_zero() ? f : Poly{1};
    Poly g = gcd(f, f.derivative());
    return f.divmod(g).first.primitive();
}

Int determinant(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    Int sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

Int content_scale(const Poly& f, std::vector<Int>& ints) {
    // f = ints / scale, scale rational expressed as (lcm of dens) / gcd; we
    // return the integer multiplier L with L*f having integer coefficients.
    Int l(1);
    for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    ints.clear();
    for (const auto& c : f.coeffs()) ints.push_back(c.get_num() * (l / c.get_den()));
    return l;
}

}  // namespace

Rat resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
    const int m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return Rat(1);
    std::vector<Int> fi, gi;
    Int lf = content_scale(f, fi);
    Int lg = content_scale(g, gi);
    const int size = m + n;
    std::vector<std::vector<Int>> s(size, std::vector<Int>(size, Int(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) s[r][r + j] = fi[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) s[n + r][r + j] = gi[n - j];
    Rat res(determinant(std::move(s)));
    // Res(lf f, lg g) = lf^n lg^m Res(f, g)
    Int scale;
    Int t1, t2;
    mpz_pow_ui(t1.get_mpz_t(), lf.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(t2.get_mpz_t(), lg.get_mpz_t(), static_cast<unsigned long>(m));
    scale = t1 * t2;
    res /= Rat(scale);
    res.canonicalize();
    return res;
}

Val resultant_val(const Poly& f, const Poly& g, Prime p) {
    return ord(resultant(f, g), p);
}

}  // namespace padic
