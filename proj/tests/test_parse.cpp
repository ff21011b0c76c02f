#include <doctest.h>

#include <random>

#include "padic/parse.hpp"

using namespace padic;

TEST_CASE("polynomial syntax") {
    CHECK(parse_poly("y^2 - 1") == Poly{-1, 0, 1});
    CHECK(parse_poly("2y + 3") == Poly{3, 2});
    CHECK(parse_poly("(y - 1)^2 * (y + 1)") == Poly{1, -1, -1, 1});
    CHECK(parse_poly("-y^2") == Poly{0, 0, -1});
    CHECK(parse_poly("1/2*y - 3/4") == Poly::linear(Rat(-3, 4), Rat(1, 2)));
    CHECK(parse_poly("4/6") == Poly::constant(Rat(2, 3)));
    CHECK(parse_poly("y - y").is_zero());
    CHECK(parse_poly("123456789012345678901234567890").coeff(0) == Rat("123456789012345678901234567890"));
}

TEST_CASE("formula syntax") {
    Formula f = parse_formula("ord(y^2-1) >= 2 & ac(1, y) = 2");
    REQUIRE(f.kind == Formula::Kind::And);
    REQUIRE(f.kids.size() == 2);
    CHECK(f.kids[0].atom == Atom(OrdCmp{Poly{-1, 0, 1}, Poly{1}, 2, Rel::Ge}));
    CHECK(f.kids[1].atom == Atom(AcEq{1, Poly{0, 1}, Int(2)}));

    CHECK(parse_formula("ord(y) < ord(y - 1) + 3").atom == Atom(OrdCmp{Poly{0, 1}, Poly{-1, 1}, 3, Rel::Lt}));
    CHECK(parse_formula("ord(y) = ord(y-1) - 2").atom == Atom(OrdCmp{Poly{0, 1}, Poly{-1, 1}, -2, Rel::Eq}));
    CHECK(parse_formula("ord(y) > -1").atom == Atom(OrdCmp{Poly{0, 1}, Poly{1}, -1, Rel::Gt}));
    CHECK(parse_formula("rv(2, y - 5) = (1, 7)").atom == Atom(RvEq{2, Poly{-5, 1}, RvData::make(2, 1, 7)}));
    CHECK(parse_formula("rv(1, y) = 0").atom == Atom(RvEq{1, Poly{0, 1}, RvData::make_zero(1)}));
    CHECK(parse_formula("ord(y) mod 3 = 1").atom == Atom(OrdMod{Poly{0, 1}, 3, 1}));
    CHECK(parse_formula("(y-1)^2 = 0").atom == Atom(OrdEqInf{Poly{1, -2, 1}}));

    Formula g = parse_formula("!(y = 0) | ord(y) >= 1 & ord(y) <= 3");
    REQUIRE(g.kind == Formula::Kind::Or);
    CHECK(g.kids[0].kind == Formula::Kind::Not);
    CHECK(g.kids[1].kind == Formula::Kind::And);
    CHECK(parse_formula("((ord(y) >= 1))") == parse_formula("ord(y) >= 1"));
}

TEST_CASE("syntax errors carry a column") {
    auto column_of = [](const std::string& s) -> std::size_t {
        try {
            parse_formula(s);
        } catch (const ParseError& e) {
            return e.column();
        }
        return 0;
    };
    CHECK(column_of("ord(y) >=") == 10);
    CHECK(column_of("ord(z) > 1") == 5);
    CHECK(column_of("y = 1") == 5);
    CHECK(column_of("ord(y) >= 1 &") == 14);
    CHECK(column_of("ac(0, y) = 1") == 5);
    CHECK_THROWS_AS(parse_poly("y^"), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0"), ParseError);
    CHECK_THROWS_AS(parse_poly("y)"), ParseError);
}

TEST_CASE("quantifiers are rejected") {
    CHECK_THROWS_WITH_AS(parse_formula("exists y (y = 0)"), "quantifiers not supported", UnsupportedInput);
    CHECK_THROWS_AS(parse_formula("ord(y) >= 0 & forall x (x = 0)"), UnsupportedInput);
}

namespace {

Poly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> deg(0, 3), c(-9, 9), den(1, 4);
    std::vector<Rat> cs;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) {
        Rat r(c(rng), den(rng));
        r.canonicalize();
        cs.push_back(r);
    }
    if (cs.back() == 0) cs.back() = 1;
    return Poly(cs);
}

Formula random_formula(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 4), small(-3, 5);
    Poly f = random_poly(rng);
    switch (pick(rng)) {
        case 0: return Formula::leaf(OrdCmp{f, Poly{1}, small(rng), static_cast<Rel>(small(rng) & 3)});
        case 1: return Formula::leaf(OrdCmp{f, random_poly(rng), small(rng), Rel::Gt});
        case 2: return Formula::leaf(AcEq{1 + (small(rng) & 1), f, Int(std::abs(small(rng)))});
        case 3: return Formula::leaf(RvEq{2, f, RvData::make(2, small(rng), Int(1 + std::abs(small(rng))))});
        case 4: return Formula::leaf(OrdMod{f, 2 + (small(rng) & 1), small(rng) & 1});
        case 5: return Formula::negate(random_formula(rng, depth - 1));
        case 6: return Formula::conj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
        default: return Formula::disj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
    }
}

}  // namespace

TEST_CASE("printing round-trips") {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        Poly f = random_poly(rng);
        CHECK(parse_poly(f.str()) == f);
        Formula phi = random_formula(rng, 3);
        INFO(str(phi));
        CHECK(parse_formula(str(phi)) == phi);
    }
}
