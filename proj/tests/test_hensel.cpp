#include <doctest.h>

#include "brute.hpp"
#include "padic/hensel.hpp"
#include "padic/term.hpp"
#include "suites.hpp"

using namespace padic;

TEST_CASE("h on the small examples") {
    std::vector<Rat> one{Rat(-1), Rat(0), Rat(1)};
    auto r1 = h(one, RvData::make(1, 0, Int(1)), 5);
    REQUIRE(r1);
    CHECK(r1->exact());
    CHECK(r1->approx == 1);

    std::vector<Rat> two{Rat(-2), Rat(0), Rat(1)};
    for (long u = 1; u < 5; ++u) CHECK_FALSE(h(two, RvData::make(1, 0, Int(u)), 5));
    // 2 is not a square mod 5
    for (brute::i64 y = 0; y < 5; ++y) CHECK(brute::eval_mod({-2, 0, 1}, y, 5) != 0);
}

TEST_CASE("refine_root agrees with a residue scan mod 5^5") {
    std::vector<Rat> a{Rat(-6), Rat(0), Rat(1)};
    auto r = h(a, RvData::make(1, 0, Int(1)), 5);
    REQUIRE(r);
    std::vector<brute::i64> hits;
    for (brute::i64 y = 1; y < 3125; y += 5)
        if (brute::eval_mod({-6, 0, 1}, y, 3125) == 0) hits.push_back(y);
    REQUIRE(hits.size() == 1);
    PadicApprox deep = refine_root(*r, 5);
    CHECK(deep.precision >= Val(5));
    CHECK(reduce_mod(deep.approx, 5, 5) == Int(static_cast<long>(hits[0])));
    CHECK(reduce_mod(deep.approx, 5, 2) == 16);

    PadicApprox same = refine_root(deep, 0);
    CHECK(same.approx == deep.approx);
    CHECK(same.precision == deep.precision);

    std::vector<Rat> e{Rat(-1), Rat(0), Rat(1)};
    PadicApprox ex = refine_root(*h(e, RvData::make(1, 0, Int(1)), 5), 100);
    CHECK(ex.exact());
    CHECK(ex.approx == 1);
}

TEST_CASE("order law at a root") {
    std::vector<Rat> one{Rat(-1), Rat(0), Rat(1)};
    CHECK(order_law_at_root(Poly{-1, 0, 1}, *h(one, RvData::make(1, 0, Int(1)), 5)) == Val(0));
    std::vector<Rat> six{Rat(-6), Rat(0), Rat(1)};
    CHECK(order_law_at_root(Poly{-6, 0, 1}, *h(six, RvData::make(1, 0, Int(1)), 5)) == Val(0));
    std::vector<Rat> sq{Rat(-25), Rat(0), Rat(1)};
    auto five = h(sq, RvData::make(1, 1, Int(1)), 5);
    REQUIRE(five);
    CHECK(five->approx == 5);
    CHECK(order_law_at_root(Poly{-25, 0, 1}, *five) == Val(1));
}

TEST_CASE("certificate invariant") {
    // y^3 - 2 over Z_5: cube roots of 2 exist since 3 is prime to 4
    std::vector<Rat> a{Rat(-2), Rat(0), Rat(0), Rat(1)};
    int found = 0;
    for (long u = 1; u < 5; ++u) {
        auto r = h(a, RvData::make(1, 0, Int(u)), 5);
        if (!r) continue;
        ++found;
        Poly w = r->witness;
        CHECK(ord(w.eval(r->approx), 5) >= r->precision + ord(w.derivative().eval(r->approx), 5));
        CHECK(rv(r->approx, 5, 1) == RvData::make(1, 0, Int(u)));
    }
    brute::i64 roots = 0;
    for (brute::i64 y = 0; y < 5; ++y) roots += brute::eval_mod({-2, 0, 0, 1}, y, 5) == 0;
    CHECK(found == roots);
}

TEST_CASE("Hensel suite on the corpus, p = 3 and 5") {
    suites::Outcome o = suites::hensel({3, 5}, 10);
    INFO(o.summary());
    CHECK(o.ok);
    CHECK(o.cases > 0);
}

TEST_CASE("terms") {
    std::vector<Rat> a{Rat(-6), Rat(0), Rat(1)};
    RvData xi = RvData::make(1, 0, Int(1));
    Term t = Term::hens(1, {Term::constant(-6), Term::constant(0), Term::constant(1)}, Term::aux(xi));
    CHECK(t.hens_count() == 1);
    Rat v = t.evaluate(5, 12);
    CHECK(ord(v * v - 6, 5) >= Val(12));
    CHECK(reduce_mod(v, 5, 2) == 16);
    Term s = Term::add(Term::constant(Rat(3, 2)), Term::var());
    CHECK(s.evaluate(5, 10, Rat(1, 2)) == 2);
    CHECK(Term::poly_at(Poly{1, 0, 1}, Term::constant(2)).evaluate(5, 10) == 5);
    // no root in the class: the function takes the value 0
    Term z = Term::hens(1, {Term::constant(-2), Term::constant(0), Term::constant(1)}, Term::aux(xi));
    CHECK(z.evaluate(5, 10) == 0);
}
