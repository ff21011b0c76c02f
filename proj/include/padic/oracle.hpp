#pragma once

// Brute-force ground truth: root counts modulo p^k and direct membership and
// law checks on decompositions.

#include <cstdint>
#include <string>
#include <vector>

#include "padic/cells.hpp"

namespace padic::oracle {

/// f with denominators cleared; rejects p in a denominator.
std::vector<Int> integer_coeffs(const Poly& f, Prime p);

/// #{y mod p^k : f(y) = 0 mod p^k}, by digit lifting with pruning.
Int count_roots_mod(const Poly& f, Prime p, int k);
/// Same count by scanning every residue (small p^k only).
Int count_roots_scan(const Poly& f, Prime p, int k);
/// N_1 .. N_K.
std::vector<Int> root_counts(const Poly& f, Prime p, int K);

/// #{y mod p^k : y = a mod p^j, f(y) = 0 mod p^k}.
Int count_roots_in_ball(const Poly& f, Prime p, int k, const Int& a, int j);

/// N_m p^-m - N_{m+1} p^-(m+1), the measure of ord f = m (m >= 0).
Rat order_measure(const Poly& f, Prime p, int m);

struct PartitionReport {
    int k = 0;
    std::int64_t classes = 0;
    std::int64_t undecided = 0;
    std::vector<std::int64_t> undecided_classes;  // first few
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Every residue class mod p^k must lie in exactly one cell, or meet cells
/// only partially (undecided at this depth).
PartitionReport verify_partition(const Decomposition& d, int k);

struct LawFailure {
    std::size_t cell = 0;
    Rat y;
    std::string expected;
    std::string got;
    std::string kind;  // "law", "bound", "membership"
};

struct LawReport {
    std::uint64_t seed = 0;
    std::int64_t checked = 0;
    std::vector<LawFailure> failures;
    bool ok() const { return failures.empty(); }
};

constexpr std::uint64_t kDefaultSeed = 20240611;

/// Samples members of every cell and checks ord f(y) = e0 + i0 ord(y - c)
/// and ord f(y) <= k_depth + min_i ord(b_i (y - c)^i).
LawReport verify_laws(const Decomposition& d, const Poly& f, int samples, std::uint64_t seed = kDefaultSeed);

/// Disjointness by pairwise cell intersection, cover by total measure plus
/// membership of every family center in some cell.
bool exact_partition(const Decomposition& d, std::string* why = nullptr);

}  // namespace padic::oracle
