#include "motzkin/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace motzkin {

namespace {

// The unique absorbing state with output 0, or -1 if there is not exactly
// one. Everything in this module that talks about "the zero loop" goes
// through here.
int unique_zero_loop(const Dfao& d) {
    int found = -1;
    for (std::uint32_t u = 0; u < d.state_count(); ++u) {
        bool loop = true;
        for (std::uint32_t digit = 0; digit < d.p() && loop; ++digit)
            loop = d.step(u, digit) == u;
        if (loop && d.output(u) == 0) {
            if (found != -1) return -1;
            found = static_cast<int>(u);
        }
    }
    return found;
}

} // namespace

std::vector<std::uint32_t> loop_states(const Dfao& d) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t u = 0; u < d.state_count(); ++u) {
        bool loop = true;
        for (std::uint32_t digit = 0; digit < d.p() && loop; ++digit)
            loop = d.step(u, digit) == u;
        if (loop) out.push_back(u);
    }
    return out;
}

std::vector<std::uint32_t> zero_value_states(const Dfao& d) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t u = 0; u < d.state_count(); ++u)
        if (d.output(u) == 0) out.push_back(u);
    return out;
}

std::optional<PartitionCertificate> find_absorbing_partition(const Dfao& d) {
    const std::uint32_t n = static_cast<std::uint32_t>(d.state_count());
    const std::uint32_t p = d.p();
    int zi = unique_zero_loop(d);
    if (zi < 0) return std::nullopt;
    const std::uint32_t z = static_cast<std::uint32_t>(zi);

    // bad[d] = states (other than the loop) that digit d does not send to
    // the loop. Digits sending nothing there cannot help and are pruned.
    std::vector<std::vector<bool>> bad(p, std::vector<bool>(n, false));
    std::vector<std::uint32_t> pool;
    for (std::uint32_t digit = 0; digit < p; ++digit) {
        std::size_t count = 0;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (u != z && d.step(u, digit) != z) {
                bad[digit][u] = true;
                ++count;
            }
        }
        if (count < static_cast<std::size_t>(n) - 1) pool.push_back(digit);
    }

    std::optional<PartitionCertificate> best;
    const std::uint32_t subsets = 1u << pool.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        std::vector<std::uint32_t> digits;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask & (1u << i)) digits.push_back(pool[i]);
        if (best && digits.size() <= best->digits.size()) continue;

        // The candidate region is forced: everything some chosen digit
        // fails to send to the loop.
        std::vector<bool> in_a(n, false);
        for (std::uint32_t digit : digits)
            for (std::uint32_t u = 0; u < n; ++u)
                if (bad[digit][u]) in_a[u] = true;
        if (!in_a[0] || in_a[z]) continue;

        bool ok = true;
        for (std::uint32_t u = 0; u < n && ok; ++u) {
            if (in_a[u]) {
                // Chosen digits must move strictly out, not yet to the loop.
                for (std::uint32_t digit : digits) {
                    std::uint32_t t = d.step(u, digit);
                    if (t == z || in_a[t]) {
                        ok = false;
                        break;
                    }
                }
            } else {
                // Once outside, there is no way back in.
                for (std::uint32_t digit = 0; digit < p; ++digit) {
                    if (in_a[d.step(u, digit)]) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (!ok) continue;

        PartitionCertificate cert;
        cert.digits = digits;
        cert.loop_state = z;
        for (std::uint32_t u = 0; u < n; ++u)
            if (in_a[u]) cert.a_states.push_back(u);
        best = std::move(cert);
    }
    return best;
}

std::vector<std::uint32_t> check_power_family(const Dfao& d, std::uint32_t offset,
                                              std::size_t kmax) {
    if (offset != 1 && offset != 2)
        throw std::invalid_argument("check_power_family: offset must be 1 or 2");
    if (kmax == 0) throw std::invalid_argument("check_power_family: kmax must be positive");
    const std::uint32_t p = d.p();
    // p^k - offset reads as digit p - offset followed by k-1 digits p-1.
    std::vector<std::uint32_t> out;
    out.reserve(kmax);
    std::uint32_t u = d.step(0, p - offset);
    out.push_back(d.output(u));
    for (std::size_t k = 2; k <= kmax; ++k) {
        u = d.step(u, p - 1);
        out.push_back(d.output(u));
    }
    return out;
}

std::optional<mpq_class> motif_lower_bound(const Dfao& d) {
    const std::uint32_t p = d.p();
    int zi = unique_zero_loop(d);
    if (zi < 0) return std::nullopt;
    const std::uint32_t z = static_cast<std::uint32_t>(zi);
    const std::uint32_t top = p - 1;

    // Candidate cycle entries: states one digit away from the start.
    std::vector<std::uint32_t> one_step;
    for (std::uint32_t digit = 0; digit < p; ++digit) {
        std::uint32_t u = d.step(0, digit);
        if (u != 0 && u != z && std::find(one_step.begin(), one_step.end(), u) == one_step.end())
            one_step.push_back(u);
    }
    std::sort(one_step.begin(), one_step.end());

    auto exits_to_loop = [&](std::uint32_t u) {
        for (std::uint32_t digit = 0; digit < p; ++digit)
            if (d.step(u, digit) == z) return true;
        return false;
    };

    // Cycles of length 1 or 2 under the top digit, every node of which can
    // fall into the zero loop.
    std::vector<std::vector<std::uint32_t>> cycles;
    for (std::uint32_t u : one_step) {
        std::uint32_t v = d.step(u, top);
        std::vector<std::uint32_t> cyc;
        if (v == u) {
            cyc = {u};
        } else if (v != z && v != 0 && d.step(v, top) == u) {
            cyc = {std::min(u, v), std::max(u, v)};
        } else {
            continue;
        }
        bool all_exit = true;
        for (std::uint32_t c : cyc) all_exit = all_exit && exits_to_loop(c);
        if (all_exit && std::find(cycles.begin(), cycles.end(), cyc) == cycles.end())
            cycles.push_back(cyc);
    }

    // Two disjoint such cycles pin two of the p(p-1) digit prefixes to the
    // zero loop in the limit.
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (std::size_t j = i + 1; j < cycles.size(); ++j) {
            bool disjoint = true;
            for (std::uint32_t a : cycles[i])
                for (std::uint32_t b : cycles[j])
                    if (a == b) disjoint = false;
            if (disjoint) {
                mpq_class bound(2, static_cast<unsigned long>(p) * (p - 1));
                bound.canonicalize();
                return bound;
            }
        }
    }
    return std::nullopt;
}

std::set<std::uint32_t> achieved_residues(const Dfao& d) {
    const std::uint32_t p = d.p();
    std::set<std::uint32_t> result{d.output(0)};   // the empty string, n = 0

    // Some n >= 1 ends its run at u exactly when u is the target of a
    // nonzero digit out of a state reachable by an arbitrary string:
    // numerals carry no leading zeros and digits are fed least significant
    // first, so a canonical run is one whose final fed digit is nonzero.
    std::vector<bool> reached(d.state_count(), false);
    std::vector<bool> visited(d.state_count(), false);   // by any prefix
    std::vector<std::uint32_t> queue{0};
    visited[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t u = queue[head];
        for (std::uint32_t digit = 0; digit < p; ++digit) {
            std::uint32_t v = d.step(u, digit);
            if (digit != 0) reached[v] = true;
            if (!visited[v]) {
                visited[v] = true;
                queue.push_back(v);
            }
        }
    }
    for (std::uint32_t u = 0; u < d.state_count(); ++u)
        if (reached[u]) result.insert(d.output(u));
    return result;
}

} // namespace motzkin
