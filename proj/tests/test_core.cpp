#include <doctest.h>

#include "padic/core.hpp"
#include "padic/hensel.hpp"
#include "padic/poly.hpp"

using namespace padic;

TEST_CASE("valuations and digits") {
    CHECK(ord(Rat(50), 5) == Val(2));
    CHECK(ord(Rat(3, 25), 5) == Val(-2));
    CHECK(ord(Rat(0), 5).is_inf());
    CHECK(unit_digits(Rat(-1), 5, 2).digits == 24);
    CHECK(unit_digits(Rat(1, 3), 2, 3).digits == 3);  // 3*3 = 9 = 1 mod 8
    RvData r = rv(Rat(75), 5, 1);
    CHECK(r.valuation == 2);
    CHECK(r.unit == 3);
    CHECK(rv(Rat(0), 5, 2).zero);
    CHECK(reduce_mod(Rat(-1, 2), 3, 2) == 4);
    Rat t = truncate(Rat(1, 7), 3, 5);
    CHECK(ord(t - Rat(1, 7), 3) >= Val(5));
    CHECK(unit_count(3, 2) == 6);
}

TEST_CASE("polynomial arithmetic") {
    Poly f{-6, 0, 1};
    CHECK(f.taylor_shift(Rat(1)) == Poly{-5, 2, 1});
    CHECK(f.derivative() == Poly{0, 2});
    CHECK(f.compose_linear(Rat(2), Rat(1)) == Poly{-5, 4, 4});
    auto [q, r] = f.divmod(Poly{-2, 1});
    CHECK(q == Poly{2, 1});
    CHECK(r == Poly{-2});
    CHECK(gcd(Poly{-1, 0, 1}, Poly{1, 1}) == Poly{1, 1});
    CHECK(squarefree_part(Poly{1, -1, -1, 1}) == Poly{-1, 0, 1});
    CHECK(resultant_val(Poly{0, 1}, Poly{-5, 1}, 5) == Val(1));
    CHECK(resultant(Poly{-2, 0, 1}, Poly{0, 2}) == Rat(-8));
    CHECK(resultant_val(Poly{1, 2, 1}, Poly{1, 1}, 3).is_inf());
}

TEST_CASE("Hensel conditions and roots") {
    std::vector<Rat> a{Rat(-6), Rat(0), Rat(1)};
    RvData x0 = RvData::make(1, 0, Int(1));
    // y^2 - 6 over Z_5: plain Hensel at depth 1
    auto i0 = check_conditions(a, Rat(1), x0, 1, 5);
    REQUIRE(i0.has_value());
    CHECK(*i0 == 2);  // a_1 = 0, so the minimum is attained at i = 2
    // depth 2: ord f(1) = 1 is not > 2, while 16^2 - 6 = 2 * 5^3 passes
    CHECK_FALSE(check_conditions(a, Rat(1), RvData::make(2, 0, Int(1)), 2, 5).has_value());
    CHECK(check_conditions(a, Rat(16), RvData::make(2, 0, Int(16)), 2, 5) == 2);
    CHECK_FALSE(h(a, RvData::make(2, 0, Int(1)), 5).has_value());
    // y^2 - 1 at p = 2: 1 and -1 share a depth-1 class, so no unique root there
    std::vector<Rat> e{Rat(-1), Rat(0), Rat(1)};
    CHECK_FALSE(check_conditions(e, Rat(1), x0, 1, 2).has_value());
    CHECK(check_conditions(e, Rat(1), RvData::make(2, 0, Int(1)), 2, 2) == 2);
    auto root = h(a, x0, 5);
    REQUIRE(root.has_value());
    PadicApprox r = refine_root(*root, 10);
    CHECK(reduce_mod(r.approx, 5, 2) == 16);
    CHECK(ord(r.approx * r.approx - 6, 5) >= Val(10));
    std::vector<Rat> b{Rat(-2), Rat(0), Rat(1)};
    CHECK_FALSE(h(b, x0, 5).has_value());
    // rational roots are recognised exactly
    std::vector<Rat> c{Rat(-4), Rat(0), Rat(1)};
    auto two = h(c, RvData::make(1, 0, Int(2)), 5);
    REQUIRE(two.has_value());
    CHECK(two->exact());
    CHECK(two->approx == 2);
}

TEST_CASE("points") {
    std::vector<Rat> a{Rat(-6), Rat(0), Rat(1)};
    auto r = h(a, RvData::make(1, 0, Int(1)), 5);
    REQUIRE(r);
    Point s(*r);
    CHECK_FALSE(s.exact());
    CHECK(s.ord_diff(Rat(16)) == Val(3));  // 16^2 - 6 = 2 * 5^3
    CHECK(s.ord_diff(Rat(1)) == Val(1));
    CHECK(s.ord_of(Poly{-6, 0, 1}).is_inf());
    CHECK(s.ord_of(Poly{0, 2}) == Val(0));
    Point t = s.affine(Rat(1), Rat(5));
    CHECK(t.ord_diff(s) == Val(1));
    Point s2(*h(a, RvData::make(1, 0, Int(1)), 5));
    CHECK(s.same(s2));
    Point neg(*h(a, RvData::make(1, 0, Int(4)), 5));
    CHECK_FALSE(s.same(neg));
    CHECK(s.ord_diff(neg) == Val(0));
}
