#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "motzkin/fppoly.hpp"

namespace motzkin {

/// Base-b expansion, least significant digit first, no trailing (i.e. most
/// significant) zeros. Zero is the empty digit list.
struct Digits {
    std::uint32_t base = 0;
    std::vector<std::uint32_t> lsd_first;

    friend bool operator==(const Digits&, const Digits&) = default;
};

Digits digits_lsd(const mpz_class& n, std::uint32_t base);
mpz_class digits_value(const Digits& d);

/// The pair (P, Q) of polynomials over Z/pZ whose diagonal P/Q generates
/// the Motzkin numbers: coefficient of x^n y^n in P/Q is M_n mod p for
/// n >= 1 (and 0 for n = 0).
std::pair<PolyFp, PolyFp> base_representation(std::uint32_t p);

/// Deterministic finite automaton with output computing n |-> M_n mod p.
/// States are polynomials over Z/pZ; digits of n are consumed least
/// significant first; the output of a state is its value at the origin.
/// Index 0 is the initial state; displayed names are 1-based (s[1], ...).
class Dfao {
public:
    /// Assembles a machine and checks its invariants: delta is total with
    /// in-range targets, states are pairwise distinct and all reachable
    /// from state 0. Outputs are derived from the states.
    Dfao(std::uint32_t p, std::vector<PolyFp> states, std::vector<std::uint32_t> delta);

    std::uint32_t p() const { return p_; }
    std::size_t state_count() const { return states_.size(); }
    const PolyFp& state(std::uint32_t i) const { return states_.at(i); }
    const std::vector<PolyFp>& states() const { return states_; }
    std::uint32_t output(std::uint32_t i) const { return outputs_.at(i); }
    const std::vector<std::uint32_t>& outputs() const { return outputs_; }

    std::uint32_t step(std::uint32_t state, std::uint32_t digit) const {
        return delta_[state * p_ + digit];
    }
    const std::vector<std::uint32_t>& delta() const { return delta_; }

    /// M_n mod p. The empty digit string would land on the initial state,
    /// whose output is the 0th diagonal coefficient, not M_0; n = 0 is
    /// therefore answered directly as 1 mod p.
    std::uint32_t eval(const mpz_class& n) const;

    /// As eval, also reporting the visited states (initial state first).
    /// For n = 0 the path is just the initial state.
    std::uint32_t eval_path(const mpz_class& n, std::vector<std::uint32_t>& path) const;

    friend bool operator==(const Dfao&, const Dfao&) = default;

private:
    std::uint32_t p_;
    std::vector<PolyFp> states_;
    std::vector<std::uint32_t> outputs_;
    std::vector<std::uint32_t> delta_;   // state_count * p, row-major
};

/// Builds the machine for prime p by closing the base representation
/// under the section operators: the initial state is P, and a state u has
/// successor cartier(u * Q^(p-1), d, d) on digit d. Breadth-first search
/// with digits in ascending order fixes the numbering.
Dfao build_dfao(std::uint32_t p);

/// Moore partition refinement; representatives keep the smallest original
/// index and the result is renumbered breadth-first. The machines built
/// here are already minimal, so this mostly certifies that.
Dfao minimize(const Dfao& d);

} // namespace motzkin
