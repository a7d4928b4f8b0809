#include "motzkin/sequence.hpp"

#include <stdexcept>

namespace motzkin {

namespace {

void check_ceiling(std::uint64_t n) {
    if (n > kExactCeiling)
        throw std::invalid_argument("exact sequence routines are capped at n = 100000");
}

// q = num / den, checked exact. The recurrences below only ever produce
// integers; a nonzero remainder means broken arithmetic, not bad input.
void divide_exact(Nat& q, const Nat& num, const Nat& den) {
    Nat rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) throw std::logic_error("sequence recurrence: inexact division");
}

} // namespace

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d : {2u, 3u}) {
        if (n % d == 0) return n == d;
    }
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Nat catalan_exact(std::uint64_t k) {
    check_ceiling(k);
    Nat c = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        // C_{i+1} = C_i * 2(2i+1) / (i+2)
        Nat num = c * (2 * (2 * i + 1));
        divide_exact(c, num, Nat(i + 2));
    }
    return c;
}

Nat motzkin_exact(std::uint64_t n) {
    check_ceiling(n);
    Nat prev = 1, cur = 1;   // M_0, M_1
    if (n == 0) return prev;
    for (std::uint64_t i = 2; i <= n; ++i) {
        // (i+2) M_i = (2i+1) M_{i-1} + 3(i-1) M_{i-2}
        Nat num = cur * (2 * i + 1) + prev * (3 * (i - 1));
        prev = std::move(cur);
        divide_exact(cur, num, Nat(i + 2));
    }
    return cur;
}

Nat motzkin_via_sum(std::uint64_t n) {
    check_ceiling(n);
    Nat total = 0;
    Nat binom, cat = 1;   // C_0
    for (std::uint64_t k = 0; 2 * k <= n; ++k) {
        if (k > 0) {
            Nat num = cat * (2 * (2 * (k - 1) + 1));
            divide_exact(cat, num, Nat(k + 1));
        }
        mpz_bin_uiui(binom.get_mpz_t(), n, 2 * k);
        total += binom * cat;
    }
    return total;
}

void motzkin_scan(std::uint64_t count,
                  const std::function<void(std::uint64_t, const Nat&)>& visit) {
    if (count == 0) return;
    check_ceiling(count - 1);
    Nat prev = 1, cur = 1;
    visit(0, prev);
    if (count == 1) return;
    visit(1, cur);
    for (std::uint64_t i = 2; i < count; ++i) {
        Nat num = cur * (2 * i + 1) + prev * (3 * (i - 1));
        prev = std::move(cur);
        divide_exact(cur, num, Nat(i + 2));
        visit(i, cur);
    }
}

std::uint32_t motzkin_mod(std::uint64_t n, std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("motzkin_mod: modulus must be prime");
    Nat m = motzkin_exact(n);
    return static_cast<std::uint32_t>(mpz_fdiv_ui(m.get_mpz_t(), p));
}

std::vector<std::uint32_t> motzkin_mod_table(std::uint32_t p, std::size_t count) {
    if (p < 2) throw std::invalid_argument("motzkin_mod_table: modulus must be at least 2");
    std::vector<std::uint32_t> out;
    out.reserve(count);
    if (count == 0) return out;

    // dp[h] counts prefix walks at height h; M_i is the count back at 0.
    // Heights above i are unreachable after i steps, so the strip grows
    // with the index.
    std::vector<std::uint64_t> dp(count + 2, 0), next(count + 2, 0);
    dp[0] = 1;
    out.push_back(1 % p);
    for (std::size_t i = 1; i < count; ++i) {
        for (std::size_t h = 0; h <= i; ++h) {
            std::uint64_t v = dp[h] + dp[h + 1];
            if (v >= p) v -= p;
            if (h > 0) {
                v += dp[h - 1];
                if (v >= p) v -= p;
            }
            next[h] = v;
        }
        std::swap(dp, next);
        out.push_back(static_cast<std::uint32_t>(dp[0]));
    }
    return out;
}

} // namespace motzkin
