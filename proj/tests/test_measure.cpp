#include <doctest.h>

#include "brute.hpp"
#include "padic/decompose.hpp"
#include "padic/measure.hpp"
#include "padic/parse.hpp"
#include "suites.hpp"

using namespace padic;

TEST_CASE("cell measures") {
    Point z(5, Rat(0));
    CHECK(cell_measure(Cell1::point(z), 5) == 0);
    CHECK(cell_measure(Cell1::family(z, MRange::from(0), ResidueSet::every(1)), 5) == 1);
    CHECK(cell_measure(Cell1::family(z, MRange::single(0), ResidueSet::of(1, {Int(2)})), 5) == Rat(1, 5));
    CHECK(cell_measure(Cell1::family(z, MRange::from(1), ResidueSet::every(2)), 5) == Rat(1, 5));
    // shells 0, 3, 6, ... with two of six classes: (2/7) / (1 - 7^-3)
    CHECK(cell_measure(Cell1::family(Point(7, Rat(0)), MRange{0, std::nullopt, 3}, ResidueSet::of(1, {Int(1), Int(6)})),
                       7) == Rat(49, 171));
    CHECK(domain_measure(Domain{Rat(3), 2}, 5) == Rat(1, 25));
}

TEST_CASE("zeta of y^k in closed form") {
    for (Prime p : {2ul, 3ul, 5ul, 7ul})
        for (int k = 1; k <= 4; ++k) {
            Poly f = Poly::monomial(1, k);
            ZetaFn z = igusa_zeta(prepare(f, p), f);
            CHECK(z == suites::monomial_zeta(p, k));
        }
    ZetaFn z = igusa_zeta(prepare(Poly{0, 1}, 5), Poly{0, 1});
    CHECK(z.num == Poly::constant(Rat(4, 5)));
    CHECK(z.den == Poly::linear(1, Rat(-1, 5)));
    CHECK(z.low == 0);
}

TEST_CASE("zeta series match the residue-scan measures") {
    for (Prime p : {2ul, 3ul, 5ul})
        for (const Poly& f : brute::corpus(p)) {
            ZetaFn z = igusa_zeta(prepare(f, p), f);
            std::vector<Rat> s = z.series(5 - static_cast<int>(z.low));
            for (int m = 0; m < 5; ++m) {
                Rat c = m < z.low ? Rat(0) : s[static_cast<std::size_t>(m - z.low)];
                INFO(f.str() << " @ " << p << " m=" << m);
                CHECK(c == brute::order_measure(brute::coeffs(f), static_cast<brute::i64>(p), m));
            }
            CHECK(z.at(1) == 1);
        }
}

TEST_CASE("zeta canonical form") {
    // same rational function written with a common factor
    ZetaFn a = make_zeta(Poly{1, 1}, Poly{1, 0, -1});
    ZetaFn b = make_zeta(Poly{1}, Poly{1, -1});
    CHECK(a == b);
    CHECK(b.den.coeff(0) == 1);
    ZetaFn c = make_zeta(Poly{0, 0, 2}, Poly{2, -1});
    // positive powers of t stay in the numerator
    CHECK(c.low == 0);
    CHECK(c.num == Poly{0, 0, 1});
    CHECK(c.at(Rat(1, 2)) == Rat(1, 3));
    ZetaFn d = make_zeta(Poly{1}, Poly{0, 1, -1});
    CHECK(d.low == -1);
    CHECK(d.den == Poly{1, -1});
}

TEST_CASE("measure of a formula equals the oracle count for ord(f) >= k") {
    for (Prime p : {2ul, 3ul, 5ul})
        for (const Poly& f : brute::corpus(p))
            for (int k = 1; k <= 3; ++k) {
                Formula phi = Formula::leaf(OrdCmp{f, Poly{1}, k, Rel::Ge});
                Rat mu = measure(decompose_set(phi, p), true);
                Rat expected(brute::count_roots(brute::coeffs(f), static_cast<brute::i64>(p), k),
                             brute::ipow(static_cast<brute::i64>(p), k));
                expected.canonicalize();
                INFO(str(phi) << " @ " << p);
                CHECK(mu == expected);
            }
}
