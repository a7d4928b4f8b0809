#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "motzkin/automaton.hpp"

namespace motzkin {

/// Acceptor for base-b digit strings read least significant digit first.
///
/// Every acceptor produced by this module is padding invariant: appending
/// the digit 0 (a leading zero of the numeral) never changes acceptance,
/// so "accepts n" is well defined on integers via the canonical expansion.
class DigitDfa {
public:
    /// delta is row-major (state_count x base); accepting has one flag per
    /// state. Throws std::invalid_argument on malformed tables.
    DigitDfa(std::uint32_t base, std::vector<std::uint32_t> delta, std::vector<bool> accepting,
             std::uint32_t initial = 0);

    std::uint32_t base() const { return base_; }
    std::size_t state_count() const { return accepting_.size(); }
    std::uint32_t initial() const { return initial_; }
    bool accepting(std::uint32_t state) const { return accepting_.at(state); }
    std::uint32_t step(std::uint32_t state, std::uint32_t digit) const {
        return delta_[state * base_ + digit];
    }

    bool accepts(const std::vector<std::uint32_t>& lsd_digits) const;
    bool accepts(const mpz_class& n) const;

private:
    std::uint32_t base_;
    std::uint32_t initial_;
    std::vector<std::uint32_t> delta_;
    std::vector<bool> accepting_;
};

/// Accepts exactly the n with M_n = 0 mod p, n >= 1: the accepting states
/// are the zero-output states of the machine, and the all-zero strings
/// (representing n = 0, where the true value M_0 = 1 overrides the state
/// output) are carved out.
DigitDfa zero_set_acceptor(const Dfao& d);

/// Accepts strings of zeros only, the empty string included.
DigitDfa zero_string_acceptor(std::uint32_t base);

enum class RunParity { even, odd, any };

/// Digit shape "head, filler^m, one digit from next, anything", read least
/// significant digit first, with m constrained to the given parity.
/// Example: head 9, filler 10, parity even, next {8} over base 11 matches
/// 9, then an even number of 10s, then 8, then any digits.
struct PatternForm {
    std::uint32_t base = 0;
    std::uint32_t head = 0;
    std::uint32_t filler = 0;
    RunParity parity = RunParity::any;
    std::vector<std::uint32_t> next;   // nonempty, digits < base
};

/// Five-state acceptor for a PatternForm. When 0 is among the next digits
/// the match may also end at the numeral's top (the "next" digit then
/// being a leading zero), which is what padding invariance demands.
DigitDfa compile_pattern(const PatternForm& form);

DigitDfa union_of(const DigitDfa& a, const DigitDfa& b);
DigitDfa intersection_of(const DigitDfa& a, const DigitDfa& b);
DigitDfa complement_of(const DigitDfa& a);

bool language_empty(const DigitDfa& a);

struct EquivalenceResult {
    bool equivalent = false;
    /// Shortest distinguishing string (least significant digit first) and
    /// its value; empty/0 when the languages agree.
    std::vector<std::uint32_t> counterexample;
    mpz_class counterexample_value;
};

EquivalenceResult equivalent(const DigitDfa& a, const DigitDfa& b);

/// The digit shapes characterizing M_n = 0 mod p for p in {11, 13, 23, 29}.
/// Multi-digit `next` sets are kept as published; split them per digit when
/// disjoint pieces are needed.
std::vector<PatternForm> characterization_forms(std::uint32_t p);

struct CharacterizationReport {
    std::uint32_t p = 0;
    bool language_equivalent = false;
    std::vector<std::uint32_t> counterexample;   // empty when equivalent
    mpz_class counterexample_value;
    std::uint64_t upto = 0;
    std::uint64_t zero_count_reference = 0;   // #{1 <= n <= upto : M_n = 0 mod p}
    std::uint64_t zero_count_patterns = 0;    // same set, counted via the forms
    bool reference_agrees = false;            // membership matched at every n
    bool ok() const { return language_equivalent && reference_agrees; }
};

/// Checks the pattern union against the machine's zero set (language
/// equivalence) and against independently computed residues for
/// 1 <= n <= upto. The `residues` overload takes residues[n] = M_n mod p
/// (size > upto); the other computes them via motzkin_mod_table.
CharacterizationReport verify_characterization(std::uint32_t p, std::uint64_t upto,
                                               const std::vector<std::uint32_t>& residues);
CharacterizationReport verify_characterization(std::uint32_t p, std::uint64_t upto = 20000);

} // namespace motzkin
