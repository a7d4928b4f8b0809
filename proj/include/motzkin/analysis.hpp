#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "motzkin/automaton.hpp"

namespace motzkin {

/// Witness that M_n = 0 mod p whenever the expansion of n contains at
/// least two digits from `digits`. a_states contains the initial state
/// and is never re-entered once left; a digit from `digits` read inside
/// a_states moves strictly outside (not yet to the loop), and read outside
/// jumps straight to loop_state, the absorbing zero-output state. So the
/// first such digit exits a_states and the second lands on the zero loop.
struct PartitionCertificate {
    std::vector<std::uint32_t> a_states;   // sorted, includes the initial state
    std::vector<std::uint32_t> digits;     // sorted, nonempty
    std::uint32_t loop_state = 0;
};

/// States fixed by every digit, sorted.
std::vector<std::uint32_t> loop_states(const Dfao& d);

/// States with output 0, sorted.
std::vector<std::uint32_t> zero_value_states(const Dfao& d);

/// Searches for the largest digit set admitting a certificate. Only
/// digits that send at least one non-loop state straight to the zero loop
/// can participate, which keeps the subset enumeration tiny. Returns
/// nothing when no nonempty digit set works.
std::optional<PartitionCertificate> find_absorbing_partition(const Dfao& d);

/// Outputs of the machine on n = p^k - offset for k = 1 .. kmax.
/// offset must be 1 or 2.
std::vector<std::uint32_t> check_power_family(const Dfao& d, std::uint32_t offset,
                                              std::size_t kmax);

/// Looks for two disjoint cycles under digit p-1 (self-loops or 2-cycles),
/// both reachable from the initial state in one step, each cycle state
/// having some digit into the zero loop. Such a motif pins at least the
/// arithmetic progressions {(d+1) p^k - 1} to residue 0, giving the lower
/// bound 2 / (p (p-1)) on the density of zeros.
std::optional<mpq_class> motif_lower_bound(const Dfao& d);

/// Output residues over all states reachable by a canonical digit string
/// (nonzero most significant digit), plus the empty string's value, i.e.
/// the initial state's output.
std::set<std::uint32_t> achieved_residues(const Dfao& d);

} // namespace motzkin
