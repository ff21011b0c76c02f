#include <doctest.h>

#include "padic/decompose.hpp"
#include "padic/dim.hpp"
#include "padic/kgroup.hpp"
#include "padic/parse.hpp"

using namespace padic;

namespace {

Decomposition set_of(const char* phi, Prime p) { return decompose_set(parse_formula(phi), p); }

AuxShape shape(long residues, std::vector<OrderPart> orders) { return canonical(AuxShape{Int(residues), orders}); }

}  // namespace

TEST_CASE("graded classes") {
    K0Element a, b;
    a.add(shape(1, {}), 0);
    a.add(shape(4, {OrderPart::half_line()}), 1);
    b.add(shape(2, {OrderPart::finite(3)}), 1);
    K0Element s = k0_add(a, b);
    CHECK(s.terms.size() == 3);
    CHECK(k0_add(a, b) == k0_add(b, a));
    K0Element m = k0_mul(a, b);
    // [1][0]*[2 x len:3][1] + [4 x H][1]*[2 x len:3][1]
    REQUIRE(m.terms.size() == 2);
    CHECK(m.terms[0].grade == 1);
    CHECK(m.terms[1].grade == 2);
    CHECK(m.terms[1].shape.residues == 8);
    CHECK(m.terms[1].shape.orders_str() == "len:3×H");
    K0Element twice = k0_add(a, a);
    CHECK(twice.terms[0].mult == 2);
    CHECK(canonical(AuxShape{Int(3), {OrderPart::finite(1)}}).orders.empty());
}

TEST_CASE("chi of simple sets") {
    // Z_5 = {0} + shells m >= 0 with 4 units each
    K0Element z = chi(prepare(Poly{0, 1}, 5));
    K0Element expected;
    expected.add(shape(1, {}), 0);
    expected.add(shape(4, {OrderPart::half_line()}), 1);
    CHECK(z == expected);
    CHECK(chi(set_of("y = 0 & y - 1 = 0", 5)).terms.empty());
    K0Normal pts = normal_form(chi(set_of("y^3 - y = 0", 5)));
    CHECK(pts.grade == 0);
    CHECK(pts.points == 3);
    CHECK_FALSE(pts.infinite);
    K0Normal ball = normal_form(chi(set_of("ord(y - 2) >= 3", 3)));
    CHECK(ball.grade == 1);
    CHECK(ball.infinite);
    CHECK(normal_form(K0Element{}).grade == -1);
}

TEST_CASE("cv_check") {
    CHECK(cv_check(set_of("ord(y) >= 1", 5), set_of("ord(y - 1) = 0 & ac(1, y - 1) = 4", 5)).equal);
    CHECK(cv_check(set_of("y^2 - 1 = 0", 7), set_of("y - 1 = 0 | y + 1 = 0", 7)).equal);
    CHECK(cv_check(prepare(Poly{-1, 0, 1}, 5), prepare(Poly{0, 1}, 5)).equal);
    CHECK_THROWS_AS(cv_check(set_of("ord(y) >= 1", 5), set_of("ord(y) >= 2", 5)), std::invalid_argument);
    CHECK_THROWS_AS(cv_check(set_of("ord(y) >= 1", 5), set_of("ord(y) >= 1", 3)), std::invalid_argument);
}

TEST_CASE("product grading") {
    Decomposition a = set_of("ord(y) >= 1", 5), b = set_of("y^2 - 1 = 0", 5);
    auto cells = product_cells(as_products(a), b);
    CHECK(chi(cells, 5) == k0_mul(chi(a), chi(b)));
    for (const auto& pc : cells) CHECK(cell_type(pc).size() == 2);
}

TEST_CASE("dimension") {
    CHECK(dim_of(set_of("ord(y) >= 0", 5)) == Dim::of(1));
    CHECK(dim_of(set_of("y^2 - 1 = 0", 5)) == Dim::of(0));
    CHECK(dim_of(set_of("y^2 + 1 = 0", 3)).is_minus_infinity());
    CHECK((Dim::minus_infinity() + Dim::of(2)).is_minus_infinity());
    CHECK(max(Dim::minus_infinity(), Dim::of(0)) == Dim::of(0));
    CHECK(Dim::minus_infinity().str() == "-inf");
    CHECK_THROWS_AS(Dim::minus_infinity().value(), std::logic_error);

    Decomposition a = set_of("ord(y) >= 1", 5), b = set_of("y^2 - 1 = 0", 5);
    CHECK(dim_of(product_cells(as_products(a), b)) == Dim::of(1));
    CHECK(dim_of(product_cells(as_products(a), a)) == Dim::of(2));
    CHECK(dim_of(product_cells(as_products(b), b)) == Dim::of(0));
    CHECK(dim_union({a, b}) == Dim::of(1));
    CHECK_THROWS_AS(dim_union({a, set_of("ord(y) >= 2", 5)}), std::invalid_argument);
    // refinement never changes the dimension
    Decomposition c = set_of("ord(y - 1) >= 1", 5);
    for (auto& cell : c.cells) cell.keep = true;
    CHECK(dim_of(refine_common(a, c)) == dim_of(a));
}
