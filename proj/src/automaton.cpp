#include "motzkin/automaton.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "motzkin/sequence.hpp"

namespace motzkin {

Digits digits_lsd(const mpz_class& n, std::uint32_t base) {
    if (base < 2) throw std::invalid_argument("digits_lsd: base must be at least 2");
    if (n < 0) throw std::invalid_argument("digits_lsd: negative argument");
    Digits d;
    d.base = base;
    mpz_class rest = n;
    while (rest != 0) {
        unsigned long digit = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base);
        d.lsd_first.push_back(static_cast<std::uint32_t>(digit));
    }
    return d;
}

mpz_class digits_value(const Digits& d) {
    mpz_class v = 0;
    for (auto it = d.lsd_first.rbegin(); it != d.lsd_first.rend(); ++it) {
        if (*it >= d.base) throw std::invalid_argument("digits_value: digit out of range");
        v = v * d.base + *it;
    }
    return v;
}

std::pair<PolyFp, PolyFp> base_representation(std::uint32_t p) {
    // P = y - x y^2 - 2 x^2 y^3 - 2 x^2 y^4
    // Q = 1 - x - x y - x^2 y - 2 x^2 y^2 - x^2 y^3
    // The diagonal of P/Q has coefficient M_n at x^n y^n for n >= 1.
    PolyFp P = make_poly(p, {{0, 1, 1}, {1, 2, -1}, {2, 3, -2}, {2, 4, -2}});
    PolyFp Q = make_poly(p, {{0, 0, 1}, {1, 0, -1}, {1, 1, -1}, {2, 1, -1}, {2, 2, -2}, {2, 3, -1}});
    return {std::move(P), std::move(Q)};
}

Dfao::Dfao(std::uint32_t p, std::vector<PolyFp> states, std::vector<std::uint32_t> delta)
    : p_(p), states_(std::move(states)), delta_(std::move(delta)) {
    const std::size_t n = states_.size();
    if (n == 0) throw std::invalid_argument("Dfao: no states");
    if (delta_.size() != n * p_) throw std::invalid_argument("Dfao: transition table size");
    for (std::uint32_t target : delta_) {
        if (target >= n) throw std::invalid_argument("Dfao: transition target out of range");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (states_[i].modulus() != p_)
            throw std::invalid_argument("Dfao: state modulus mismatch");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (states_[i] == states_[j])
                throw std::invalid_argument("Dfao: duplicate states");
        }
    }

    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> queue{0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::uint32_t d = 0; d < p_; ++d) {
            std::uint32_t v = step(queue[head], d);
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::invalid_argument("Dfao: unreachable state");

    outputs_.reserve(n);
    for (const PolyFp& s : states_) outputs_.push_back(s.eval_origin());
}

std::uint32_t Dfao::eval(const mpz_class& n) const {
    if (n == 0) return 1 % p_;
    Digits d = digits_lsd(n, p_);
    std::uint32_t state = 0;
    for (std::uint32_t digit : d.lsd_first) state = step(state, digit);
    return outputs_[state];
}

std::uint32_t Dfao::eval_path(const mpz_class& n, std::vector<std::uint32_t>& path) const {
    path.clear();
    path.push_back(0);
    if (n == 0) return 1 % p_;
    Digits d = digits_lsd(n, p_);
    std::uint32_t state = 0;
    for (std::uint32_t digit : d.lsd_first) {
        state = step(state, digit);
        path.push_back(state);
    }
    return outputs_[state];
}

Dfao build_dfao(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("build_dfao: p must be prime");

    auto [P, Q] = base_representation(p);
    PolyFp qpow = Q.pow(p - 1);

    std::vector<PolyFp> states{P};
    std::vector<std::uint32_t> delta;
    for (std::size_t head = 0; head < states.size(); ++head) {
        PolyFp scaled = states[head] * qpow;
        for (std::uint32_t d = 0; d < p; ++d) {
            PolyFp next = scaled.cartier(d, d);
            std::uint32_t idx = 0;
            while (idx < states.size() && !(states[idx] == next)) ++idx;
            if (idx == states.size()) states.push_back(std::move(next));
            delta.push_back(idx);
        }
    }
    return Dfao(p, std::move(states), std::move(delta));
}

Dfao minimize(const Dfao& d) {
    const std::size_t n = d.state_count();
    const std::uint32_t p = d.p();

    // Moore refinement: start from output classes, split by transition
    // profiles until stable.
    std::vector<std::uint32_t> cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[i] = d.output(i);
    {
        // Compact the initial class ids.
        std::map<std::uint32_t, std::uint32_t> remap;
        for (std::size_t i = 0; i < n; ++i) {
            auto it = remap.try_emplace(cls[i], static_cast<std::uint32_t>(remap.size())).first;
            cls[i] = it->second;
        }
    }

    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
        std::vector<std::uint32_t> next_cls(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint32_t> sig;
            sig.reserve(p + 1);
            sig.push_back(cls[i]);
            for (std::uint32_t digit = 0; digit < p; ++digit)
                sig.push_back(cls[d.step(static_cast<std::uint32_t>(i), digit)]);
            auto it = sig_ids.try_emplace(std::move(sig),
                                          static_cast<std::uint32_t>(sig_ids.size())).first;
            next_cls[i] = it->second;
        }
        bool stable = sig_ids.size() ==
                      static_cast<std::size_t>(1 + *std::max_element(cls.begin(), cls.end()));
        cls = std::move(next_cls);
        if (stable) break;
    }

    // Representative of a class: its smallest original state index.
    std::uint32_t class_count = 1 + *std::max_element(cls.begin(), cls.end());
    std::vector<std::uint32_t> rep(class_count, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t i = 0; i < n; ++i)
        rep[cls[i]] = std::min(rep[cls[i]], static_cast<std::uint32_t>(i));

    // Renumber classes breadth-first from the initial state's class.
    std::vector<std::uint32_t> order(class_count, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> queue{cls[0]};
    order[cls[0]] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::uint32_t digit = 0; digit < p; ++digit) {
            std::uint32_t target = cls[d.step(rep[queue[head]], digit)];
            if (order[target] == std::numeric_limits<std::uint32_t>::max()) {
                order[target] = static_cast<std::uint32_t>(queue.size());
                queue.push_back(target);
            }
        }
    }

    std::vector<PolyFp> states;
    states.reserve(queue.size());
    std::vector<std::uint32_t> delta;
    delta.reserve(queue.size() * p);
    for (std::uint32_t cls_id : queue) {
        states.push_back(d.state(rep[cls_id]));
        for (std::uint32_t digit = 0; digit < p; ++digit)
            delta.push_back(order[cls[d.step(rep[cls_id], digit)]]);
    }
    return Dfao(p, std::move(states), std::move(delta));
}

} // namespace motzkin
