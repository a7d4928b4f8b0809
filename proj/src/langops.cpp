#include "motzkin/langops.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "motzkin/sequence.hpp"

namespace motzkin {

DigitDfa::DigitDfa(std::uint32_t base, std::vector<std::uint32_t> delta,
                   std::vector<bool> accepting, std::uint32_t initial)
    : base_(base), initial_(initial), delta_(std::move(delta)), accepting_(std::move(accepting)) {
    if (base_ < 2) throw std::invalid_argument("DigitDfa: base must be at least 2");
    const std::size_t n = accepting_.size();
    if (n == 0) throw std::invalid_argument("DigitDfa: no states");
    if (delta_.size() != n * base_) throw std::invalid_argument("DigitDfa: transition table size");
    if (initial_ >= n) throw std::invalid_argument("DigitDfa: initial state out of range");
    for (std::uint32_t t : delta_)
        if (t >= n) throw std::invalid_argument("DigitDfa: transition target out of range");
}

bool DigitDfa::accepts(const std::vector<std::uint32_t>& lsd_digits) const {
    std::uint32_t u = initial_;
    for (std::uint32_t d : lsd_digits) {
        if (d >= base_) throw std::invalid_argument("DigitDfa: digit out of range");
        u = step(u, d);
    }
    return accepting_[u];
}

bool DigitDfa::accepts(const mpz_class& n) const {
    return accepts(digits_lsd(n, base_).lsd_first);
}

DigitDfa zero_string_acceptor(std::uint32_t base) {
    // State 0: only zeros seen so far (accepting); state 1: spoiled.
    std::vector<std::uint32_t> delta(2 * base, 1);
    delta[0] = 0;
    return DigitDfa(base, std::move(delta), {true, false});
}

DigitDfa zero_set_acceptor(const Dfao& d) {
    const std::uint32_t p = d.p();
    std::vector<std::uint32_t> delta(d.delta().begin(), d.delta().end());
    std::vector<bool> accepting;
    accepting.reserve(d.state_count());
    for (std::uint32_t u = 0; u < d.state_count(); ++u) accepting.push_back(d.output(u) == 0);
    DigitDfa by_output(p, std::move(delta), std::move(accepting));
    // The all-zero strings denote n = 0, where the sequence value is 1, not
    // the initial state's output; cut them out.
    return intersection_of(by_output, complement_of(zero_string_acceptor(p)));
}

DigitDfa compile_pattern(const PatternForm& form) {
    const std::uint32_t b = form.base;
    if (b < 2) throw std::invalid_argument("compile_pattern: base must be at least 2");
    if (form.head >= b || form.filler >= b || form.next.empty())
        throw std::invalid_argument("compile_pattern: malformed form");
    for (std::uint32_t d : form.next)
        if (d >= b) throw std::invalid_argument("compile_pattern: next digit out of range");

    auto in_next = [&form](std::uint32_t d) {
        return std::find(form.next.begin(), form.next.end(), d) != form.next.end();
    };
    bool ok_even = form.parity != RunParity::odd;   // may finish after an even run
    bool ok_odd = form.parity != RunParity::even;

    // States: 0 expect head, 1 even filler run, 2 odd filler run,
    // 3 accepted (tail is free), 4 dead.
    enum : std::uint32_t { start = 0, run_even = 1, run_odd = 2, acc = 3, dead = 4 };
    std::vector<std::uint32_t> delta(5 * b, dead);
    auto at = [&delta, b](std::uint32_t state, std::uint32_t digit) -> std::uint32_t& {
        return delta[state * b + digit];
    };

    at(start, form.head) = run_even;
    for (std::uint32_t d = 0; d < b; ++d) {
        if (ok_even && in_next(d))
            at(run_even, d) = acc;
        else if (d == form.filler)
            at(run_even, d) = run_odd;
        if (ok_odd && in_next(d))
            at(run_odd, d) = acc;
        else if (d == form.filler)
            at(run_odd, d) = run_even;
        at(acc, d) = acc;
    }

    // When 0 is a valid next digit, a numeral may simply end after the
    // run: the next digit is then a leading zero. The run states must
    // accept or appending zeros would change membership.
    bool zero_next = in_next(0);
    std::vector<bool> accepting{false, ok_even && zero_next, ok_odd && zero_next, true, false};
    return DigitDfa(b, std::move(delta), std::move(accepting));
}

namespace {

DigitDfa product(const DigitDfa& a, const DigitDfa& b, bool is_union) {
    if (a.base() != b.base()) throw std::invalid_argument("DigitDfa product: base mismatch");
    const std::uint32_t base = a.base();

    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    auto key = [&b](std::uint32_t ua, std::uint32_t ub) {
        return static_cast<std::uint64_t>(ua) * b.state_count() + ub;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{{a.initial(), b.initial()}};
    ids.emplace(key(a.initial(), b.initial()), 0);
    std::vector<std::uint32_t> delta;
    std::vector<bool> accepting;
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        auto [ua, ub] = pairs[head];
        accepting.push_back(is_union ? (a.accepting(ua) || b.accepting(ub))
                                     : (a.accepting(ua) && b.accepting(ub)));
        for (std::uint32_t d = 0; d < base; ++d) {
            std::uint32_t va = a.step(ua, d), vb = b.step(ub, d);
            auto [it, fresh] = ids.try_emplace(key(va, vb),
                                               static_cast<std::uint32_t>(pairs.size()));
            if (fresh) pairs.emplace_back(va, vb);
            delta.push_back(it->second);
        }
    }
    return DigitDfa(base, std::move(delta), std::move(accepting));
}

} // namespace

DigitDfa union_of(const DigitDfa& a, const DigitDfa& b) { return product(a, b, true); }

DigitDfa intersection_of(const DigitDfa& a, const DigitDfa& b) { return product(a, b, false); }

DigitDfa complement_of(const DigitDfa& a) {
    std::vector<std::uint32_t> delta;
    delta.reserve(a.state_count() * a.base());
    std::vector<bool> accepting;
    accepting.reserve(a.state_count());
    for (std::uint32_t u = 0; u < a.state_count(); ++u) {
        accepting.push_back(!a.accepting(u));
        for (std::uint32_t d = 0; d < a.base(); ++d) delta.push_back(a.step(u, d));
    }
    return DigitDfa(a.base(), std::move(delta), std::move(accepting), a.initial());
}

bool language_empty(const DigitDfa& a) {
    std::vector<bool> seen(a.state_count(), false);
    std::vector<std::uint32_t> queue{a.initial()};
    seen[a.initial()] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        if (a.accepting(queue[head])) return false;
        for (std::uint32_t d = 0; d < a.base(); ++d) {
            std::uint32_t v = a.step(queue[head], d);
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    return true;
}

EquivalenceResult equivalent(const DigitDfa& a, const DigitDfa& b) {
    if (a.base() != b.base()) throw std::invalid_argument("equivalent: base mismatch");
    const std::uint32_t base = a.base();

    // Breadth-first over the pair graph; the first pair disagreeing on
    // acceptance yields a shortest distinguishing string.
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    auto key = [&b](std::uint32_t ua, std::uint32_t ub) {
        return static_cast<std::uint64_t>(ua) * b.state_count() + ub;
    };
    struct Node {
        std::uint32_t ua, ub;
        std::uint32_t parent;   // index into nodes; self for the root
        std::uint32_t digit;    // edge label from parent
    };
    std::vector<Node> nodes{{a.initial(), b.initial(), 0, 0}};
    ids.emplace(key(a.initial(), b.initial()), 0);

    for (std::size_t head = 0; head < nodes.size(); ++head) {
        Node cur = nodes[head];
        if (a.accepting(cur.ua) != b.accepting(cur.ub)) {
            EquivalenceResult r;
            r.equivalent = false;
            std::size_t at = head;
            while (at != 0) {
                r.counterexample.push_back(nodes[at].digit);
                at = nodes[at].parent;
            }
            std::reverse(r.counterexample.begin(), r.counterexample.end());
            r.counterexample_value = digits_value({base, r.counterexample});
            return r;
        }
        for (std::uint32_t d = 0; d < base; ++d) {
            std::uint32_t va = a.step(cur.ua, d), vb = b.step(cur.ub, d);
            auto [it, fresh] = ids.try_emplace(key(va, vb),
                                               static_cast<std::uint32_t>(nodes.size()));
            if (fresh)
                nodes.push_back({va, vb, static_cast<std::uint32_t>(head), d});
        }
    }
    EquivalenceResult r;
    r.equivalent = true;
    return r;
}

std::vector<PatternForm> characterization_forms(std::uint32_t p) {
    using RP = RunParity;
    switch (p) {
        case 11:
            return {{11, 9, 10, RP::even, {8}},
                    {11, 9, 10, RP::odd, {0}},
                    {11, 10, 10, RP::even, {1}},
                    {11, 10, 10, RP::odd, {9}}};
        case 13:
            return {{13, 11, 12, RP::any, {0}},
                    {13, 12, 12, RP::any, {11}}};
        case 23:
            return {{23, 21, 22, RP::even, {20}},
                    {23, 21, 22, RP::odd, {0}},
                    {23, 22, 22, RP::even, {1}},
                    {23, 22, 22, RP::odd, {21}}};
        case 29:
            return {{29, 27, 28, RP::even, {13, 18, 26}},
                    {29, 27, 28, RP::odd, {0}},
                    {29, 28, 28, RP::even, {1, 9, 14}},
                    {29, 28, 28, RP::odd, {27}}};
        default:
            throw std::invalid_argument(
                "characterization_forms: digit characterizations exist for p in {11, 13, 23, 29}");
    }
}

CharacterizationReport verify_characterization(std::uint32_t p, std::uint64_t upto,
                                               const std::vector<std::uint32_t>& residues) {
    if (residues.size() <= upto)
        throw std::invalid_argument("verify_characterization: residue table too short");

    Dfao machine = build_dfao(p);
    DigitDfa zeros = zero_set_acceptor(machine);

    std::vector<PatternForm> forms = characterization_forms(p);
    DigitDfa patterns = compile_pattern(forms[0]);
    for (std::size_t i = 1; i < forms.size(); ++i)
        patterns = union_of(patterns, compile_pattern(forms[i]));

    CharacterizationReport rep;
    rep.p = p;
    rep.upto = upto;

    EquivalenceResult eq = equivalent(zeros, patterns);
    rep.language_equivalent = eq.equivalent;
    rep.counterexample = eq.counterexample;
    rep.counterexample_value = eq.counterexample_value;

    rep.reference_agrees = true;
    for (std::uint64_t n = 1; n <= upto; ++n) {
        bool ref = residues[n] == 0;
        bool pat = patterns.accepts(mpz_class(static_cast<unsigned long>(n)));
        if (ref) ++rep.zero_count_reference;
        if (pat) ++rep.zero_count_patterns;
        if (ref != pat) rep.reference_agrees = false;
    }
    return rep;
}

CharacterizationReport verify_characterization(std::uint32_t p, std::uint64_t upto) {
    return verify_characterization(p, upto,
                                   motzkin_mod_table(p, static_cast<std::size_t>(upto) + 1));
}

} // namespace motzkin
