#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "motzkin/automaton.hpp"
#include "motzkin/langops.hpp"

namespace motzkin {

using Rational = mpq_class;

enum class PatternVariant { S, SPrime };

/// The arithmetic-geometric set S(q,r,s,t) = { (q i + r) q^(s j + t) :
/// i >= 0, j >= 0 }, or with j >= 1 for the primed variant, shifted down
/// by `shift`. Requires q >= 2, 0 < r < q, s >= 1, t >= 0; r != 0 keeps
/// the members of the unshifted set uniquely readable off their digits.
struct PatternSet {
    std::int64_t q = 0;
    std::int64_t r = 0;
    std::int64_t s = 0;
    std::int64_t t = 0;
    PatternVariant variant = PatternVariant::S;
    std::uint32_t shift = 0;   // constant subtracted from every member
};

/// Natural density of the set: 1 / (q^(t+1-s) (q^s - 1)) for S when t >= s-1,
/// handled uniformly as q^s / (q^(t+1) (q^s - 1)); the primed variant drops
/// the leading q^s. Shifts do not move densities. Throws on constraint
/// violations.
Rational pattern_density(const PatternSet& set);

/// The algebraic sets whose union is { n >= 1 : M_n = 0 mod p }, for
/// p in {11, 13, 23, 29}. Ordered to line up with characterization_forms
/// after splitting multi-digit next sets (ascending).
std::vector<PatternSet> characterization_sets(std::uint32_t p);

/// Sum of the set densities, after machine-checking pairwise disjointness
/// of the corresponding digit acceptors. Throws std::logic_error if any
/// two overlap.
Rational characterization_density(std::uint32_t p);

/// Raw occupancy: counts of length-`depth` digit strings (leading zeros
/// allowed) ending in each state.
std::vector<mpz_class> state_counts(const Dfao& d, std::uint32_t depth);

/// counts[r] = #{ 0 <= n < p^depth : M_n = r mod p }. Digit strings are
/// aggregated by state output; the all-zero string is then moved from the
/// initial state's output bucket to residue 1, since M_0 = 1.
struct CountVector {
    std::uint32_t p = 0;
    std::uint32_t depth = 0;
    std::vector<mpz_class> counts;
};

CountVector count_residues(const Dfao& d, std::uint32_t depth);

/// count_residues(d, depth).counts[residue] / p^depth, exact.
Rational density_estimate(const Dfao& d, std::uint32_t residue, std::uint32_t depth);

/// Evidence that almost every n has M_n = 0 mod p: the count of indices
/// with nonzero residue below p^K grows by a factor strictly less than p,
/// so its share vanishes. Certifies when every ratio c(K+1)/c(K) over
/// [kmin, kmax) stays below p - 1/2 and the residue-0 share at kmax
/// exceeds 99/100.
struct DensityOneReport {
    bool certified = false;
    std::uint32_t kmin = 0;
    std::uint32_t kmax = 0;
    std::vector<Rational> ratios;        // c(K+1)/c(K) for K = kmin .. kmax-1
    Rational max_ratio;
    Rational residue_zero_share;         // at kmax
};

DensityOneReport density_one_certificate(const Dfao& d, std::uint32_t kmin, std::uint32_t kmax);

/// Number of length-`depth` strings (leading zeros allowed) accepted.
mpz_class count_accepted(const DigitDfa& a, std::uint32_t depth);

/// One row of the summary table: density of { n : p | M_n } plus the
/// congruence families that hold at indices p^k - 1 and p^k - 2.
struct DensityTableRow {
    std::uint32_t p = 0;
    bool density_exact = false;   // exact rational vs. certified-empirical 1
    Rational density;
    std::vector<std::string> relations;
};

std::vector<DensityTableRow> density_table();
std::string density_table_text();
std::string density_table_json();

} // namespace motzkin
