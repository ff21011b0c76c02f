#include <doctest.h>

#include "brute.hpp"
#include "padic/decompose.hpp"
#include "padic/oracle.hpp"

using namespace padic;

TEST_CASE("root counts: lifting against scanning") {
    for (Prime p : {2ul, 3ul, 5ul})
        for (const Poly& f : brute::corpus(p))
            for (int k = 1; k <= 4; ++k) {
                INFO(f.str() << " @ " << p << " k=" << k);
                Int lifted = oracle::count_roots_mod(f, p, k);
                CHECK(lifted == oracle::count_roots_scan(f, p, k));
                CHECK(lifted == Int(static_cast<long>(brute::count_roots(brute::coeffs(f), static_cast<brute::i64>(p), k))));
            }
}

TEST_CASE("root counts of small examples") {
    CHECK(oracle::count_roots_mod(Poly{-1, 0, 1}, 5, 3) == 2);
    CHECK(oracle::count_roots_mod(Poly{0, 0, 1}, 3, 4) == 9);  // y = 0 mod 9
    CHECK(oracle::count_roots_mod(Poly{-1, 0, 1}, 2, 3) == 4);  // 1, 3, 5, 7
    CHECK(oracle::count_roots_in_ball(Poly{-1, 0, 1}, 5, 3, Int(1), 1) == 1);
    CHECK(oracle::order_measure(Poly{0, 1}, 5, 0) == Rat(4, 5));
    CHECK(oracle::order_measure(Poly{0, 1}, 5, 2) == Rat(4, 125));
    CHECK(oracle::root_counts(Poly{0, 0, 1}, 2, 3) == std::vector<Int>{Int(1), Int(2), Int(2)});
}

TEST_CASE("denominators divisible by p are rejected") {
    CHECK_THROWS_AS(oracle::integer_coeffs(Poly::linear(Rat(1, 5), 1), 5), std::invalid_argument);
    CHECK(oracle::integer_coeffs(Poly::linear(Rat(1, 3), 1), 5) == std::vector<Int>{Int(1), Int(3)});
}

TEST_CASE("corrupted decompositions are caught") {
    Poly f{-1, 0, 1};
    Decomposition good = prepare(f, 5);
    CHECK(oracle::verify_partition(good, 5).ok());
    CHECK(oracle::exact_partition(good));
    CHECK(oracle::verify_laws(good, f, 50).ok());

    Decomposition overlap = good;
    for (const auto& c : good.cells)
        if (!c.is_point()) {
            overlap.cells.push_back(c);
            break;
        }
    CHECK_FALSE(oracle::verify_partition(overlap, 5).ok());
    std::string why;
    CHECK_FALSE(oracle::exact_partition(overlap, &why));
    CHECK_FALSE(why.empty());

    Decomposition gap = good;
    for (std::size_t i = 0; i < gap.cells.size(); ++i)
        if (!gap.cells[i].is_point()) {
            gap.cells.erase(gap.cells.begin() + static_cast<long>(i));
            break;
        }
    CHECK_FALSE(oracle::verify_partition(gap, 5).ok());
    CHECK_FALSE(oracle::exact_partition(gap));

    Decomposition off = good;
    for (auto& c : off.cells)
        if (!c.is_point()) {
            OrderLaw law = *c.law_for(f);
            law.e0 = law.e0 + Val(1);
            c.set_law(f, law);
            break;
        }
    oracle::LawReport r = oracle::verify_laws(off, f, 50);
    CHECK_FALSE(r.ok());
    CHECK(r.failures.front().kind == "law");

    Decomposition slope = good;
    for (auto& c : slope.cells)
        if (!c.is_point() && !c.range.is_single()) {
            OrderLaw law = *c.law_for(f);
            law.i0 += 1;
            c.set_law(f, law);
            break;
        }
    CHECK_FALSE(oracle::verify_laws(slope, f, 50).ok());
}

TEST_CASE("law sampling is deterministic") {
    Poly f{-6, 0, 1};
    Decomposition d = prepare(f, 7);
    oracle::LawReport a = oracle::verify_laws(d, f, 30, 99), b = oracle::verify_laws(d, f, 30, 99);
    CHECK(a.checked == b.checked);
    CHECK(a.seed == 99);
}
