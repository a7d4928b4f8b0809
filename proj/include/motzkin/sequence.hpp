#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

namespace motzkin {

using Nat = mpz_class;

/// Largest n accepted by the exact-value routines. Bigger indices are the
/// automaton's job; asking the bignum recurrences for them is a bug.
inline constexpr std::uint64_t kExactCeiling = 100000;

bool is_prime(std::uint32_t n);

/// Catalan number C_k via C_{k+1} = C_k * 2(2k+1) / (k+2); the division is
/// checked to be exact.
Nat catalan_exact(std::uint64_t k);

/// Motzkin number M_n via (n+2) M_n = (2n+1) M_{n-1} + 3(n-1) M_{n-2};
/// the division is checked to be exact. M_0 = M_1 = 1.
Nat motzkin_exact(std::uint64_t n);

/// Independent route: M_n = sum_k binom(n, 2k) C_k.
Nat motzkin_via_sum(std::uint64_t n);

/// Runs the recurrence once, calling visit(n, M_n) for n = 0 .. count-1.
void motzkin_scan(std::uint64_t count, const std::function<void(std::uint64_t, const Nat&)>& visit);

/// M_n mod p for prime p (throws std::invalid_argument otherwise). This is
/// the only place that insists on primality; callers relying on prime
/// moduli funnel through here or check is_prime themselves.
std::uint32_t motzkin_mod(std::uint64_t n, std::uint32_t p);

/// Residues M_0 .. M_{count-1} mod p by the lattice-path height table
/// dp[h] <- dp[h-1] + dp[h] + dp[h+1], a route sharing no code with the
/// recurrence. Quadratic in count; meant for cross-checks.
std::vector<std::uint32_t> motzkin_mod_table(std::uint32_t p, std::size_t count);

} // namespace motzkin
