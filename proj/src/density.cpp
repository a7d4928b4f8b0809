#include "motzkin/density.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "motzkin/analysis.hpp"

namespace motzkin {

Rational pattern_density(const PatternSet& set) {
    if (set.q < 2) throw std::invalid_argument("pattern_density: q must be at least 2");
    if (set.r <= 0 || set.r >= set.q)
        throw std::invalid_argument(
            "pattern_density: r must satisfy 0 < r < q (r = 0 would let members collide "
            "across powers)");
    if (set.s < 1) throw std::invalid_argument("pattern_density: s must be positive");
    if (set.t < 0) throw std::invalid_argument("pattern_density: t must be nonnegative");

    // Members with a fixed j form the progression (q i + r) q^(s j + t) of
    // density q^-(s j + t + 1); r != 0 makes the j-slices disjoint, so the
    // densities sum: a geometric series with ratio q^-s.
    mpz_class qs, qt1;
    mpz_ui_pow_ui(qs.get_mpz_t(), static_cast<unsigned long>(set.q),
                  static_cast<unsigned long>(set.s));
    mpz_ui_pow_ui(qt1.get_mpz_t(), static_cast<unsigned long>(set.q),
                  static_cast<unsigned long>(set.t + 1));
    Rational density(set.variant == PatternVariant::S ? qs : mpz_class(1), qt1 * (qs - 1));
    density.canonicalize();
    return density;
}

std::vector<PatternSet> characterization_sets(std::uint32_t p) {
    using V = PatternVariant;
    // Ordered to match characterization_forms(p) with multi-digit next
    // sets split per digit, ascending.
    switch (p) {
        case 11:
            return {{11, 9, 2, 1, V::S, 2},
                    {11, 1, 2, 0, V::SPrime, 2},
                    {11, 2, 2, 1, V::S, 1},
                    {11, 10, 2, 0, V::SPrime, 1}};
        case 13:
            return {{13, 1, 1, 0, V::SPrime, 2},
                    {13, 12, 1, 0, V::SPrime, 1}};
        case 23:
            return {{23, 21, 2, 1, V::S, 2},
                    {23, 1, 2, 0, V::SPrime, 2},
                    {23, 2, 2, 1, V::S, 1},
                    {23, 22, 2, 0, V::SPrime, 1}};
        case 29:
            return {{29, 14, 2, 1, V::S, 2},
                    {29, 19, 2, 1, V::S, 2},
                    {29, 27, 2, 1, V::S, 2},
                    {29, 1, 2, 0, V::SPrime, 2},
                    {29, 2, 2, 1, V::S, 1},
                    {29, 10, 2, 1, V::S, 1},
                    {29, 15, 2, 1, V::S, 1},
                    {29, 28, 2, 0, V::SPrime, 1}};
        default:
            throw std::invalid_argument(
                "characterization_sets: exact densities exist for p in {11, 13, 23, 29}");
    }
}

namespace {

std::vector<PatternForm> singleton_forms(std::uint32_t p) {
    std::vector<PatternForm> out;
    for (const PatternForm& form : characterization_forms(p)) {
        std::vector<std::uint32_t> next = form.next;
        std::sort(next.begin(), next.end());
        for (std::uint32_t d : next) {
            PatternForm single = form;
            single.next = {d};
            out.push_back(std::move(single));
        }
    }
    return out;
}

} // namespace

Rational characterization_density(std::uint32_t p) {
    std::vector<PatternSet> sets = characterization_sets(p);
    std::vector<PatternForm> forms = singleton_forms(p);
    if (sets.size() != forms.size())
        throw std::logic_error("characterization_density: set/form tables out of step");

    // The densities may only be summed if the pieces are disjoint; check
    // that on the digit side, where emptiness of intersections is decidable.
    std::vector<DigitDfa> acceptors;
    acceptors.reserve(forms.size());
    for (const PatternForm& f : forms) acceptors.push_back(compile_pattern(f));
    for (std::size_t i = 0; i < acceptors.size(); ++i) {
        for (std::size_t j = i + 1; j < acceptors.size(); ++j) {
            if (!language_empty(intersection_of(acceptors[i], acceptors[j])))
                throw std::logic_error("characterization_density: pieces overlap");
        }
    }

    Rational total = 0;
    for (const PatternSet& s : sets) total += pattern_density(s);
    total.canonicalize();
    return total;
}

std::vector<mpz_class> state_counts(const Dfao& d, std::uint32_t depth) {
    std::vector<mpz_class> cur(d.state_count()), next(d.state_count());
    cur[0] = 1;
    for (std::uint32_t k = 0; k < depth; ++k) {
        for (auto& v : next) v = 0;
        for (std::uint32_t u = 0; u < d.state_count(); ++u) {
            if (cur[u] == 0) continue;
            for (std::uint32_t digit = 0; digit < d.p(); ++digit)
                next[d.step(u, digit)] += cur[u];
        }
        std::swap(cur, next);
    }
    return cur;
}

namespace {

CountVector aggregate_counts(const Dfao& d, const std::vector<mpz_class>& per_state,
                             std::uint32_t depth) {
    CountVector cv;
    cv.p = d.p();
    cv.depth = depth;
    cv.counts.assign(d.p(), 0);
    for (std::uint32_t u = 0; u < d.state_count(); ++u) cv.counts[d.output(u)] += per_state[u];

    // The all-zero string stands for n = 0, whose sequence value is 1, not
    // the output of the state the padding lands on.
    std::uint32_t zstate = 0;
    for (std::uint32_t k = 0; k < depth; ++k) zstate = d.step(zstate, 0);
    cv.counts[d.output(zstate)] -= 1;
    cv.counts[1 % d.p()] += 1;
    return cv;
}

} // namespace

CountVector count_residues(const Dfao& d, std::uint32_t depth) {
    if (depth == 0) throw std::invalid_argument("count_residues: depth must be positive");
    return aggregate_counts(d, state_counts(d, depth), depth);
}

Rational density_estimate(const Dfao& d, std::uint32_t residue, std::uint32_t depth) {
    if (residue >= d.p()) throw std::invalid_argument("density_estimate: residue out of range");
    CountVector cv = count_residues(d, depth);
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), d.p(), depth);
    Rational share(cv.counts[residue], total);
    share.canonicalize();
    return share;
}

DensityOneReport density_one_certificate(const Dfao& d, std::uint32_t kmin, std::uint32_t kmax) {
    if (kmin < 1 || kmin >= kmax)
        throw std::invalid_argument("density_one_certificate: need 1 <= kmin < kmax");

    DensityOneReport rep;
    rep.kmin = kmin;
    rep.kmax = kmax;

    // March the state occupancy DP once, reading off the nonzero-residue
    // count at each depth in the window.
    std::vector<mpz_class> cur(d.state_count()), next(d.state_count());
    cur[0] = 1;
    mpz_class prev_nonzero = 0;
    mpz_class pk = 1;
    CountVector last;
    for (std::uint32_t k = 1; k <= kmax; ++k) {
        for (auto& v : next) v = 0;
        for (std::uint32_t u = 0; u < d.state_count(); ++u) {
            if (cur[u] == 0) continue;
            for (std::uint32_t digit = 0; digit < d.p(); ++digit)
                next[d.step(u, digit)] += cur[u];
        }
        std::swap(cur, next);
        pk *= d.p();
        if (k < kmin) continue;
        CountVector cv = aggregate_counts(d, cur, k);
        mpz_class nonzero = pk - cv.counts[0];
        if (k > kmin) {
            Rational ratio(nonzero, prev_nonzero);
            ratio.canonicalize();
            rep.ratios.push_back(ratio);
        }
        prev_nonzero = nonzero;
        if (k == kmax) last = std::move(cv);
    }

    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), d.p(), kmax);
    rep.residue_zero_share = Rational(last.counts[0], total);
    rep.residue_zero_share.canonicalize();

    // Nonzero counts multiplying by less than p - 1/2 per digit while the
    // space multiplies by p certifies a vanishing nonzero share; the
    // endpoint estimate guards against a window chosen before the decay
    // sets in.
    Rational threshold(2 * static_cast<unsigned long>(d.p()) - 1, 2);
    rep.certified = rep.max_ratio < threshold && rep.residue_zero_share > Rational(99, 100);
    return rep;
}

mpz_class count_accepted(const DigitDfa& a, std::uint32_t depth) {
    std::vector<mpz_class> cur(a.state_count()), next(a.state_count());
    cur[a.initial()] = 1;
    for (std::uint32_t k = 0; k < depth; ++k) {
        for (auto& v : next) v = 0;
        for (std::uint32_t u = 0; u < a.state_count(); ++u) {
            if (cur[u] == 0) continue;
            for (std::uint32_t digit = 0; digit < a.base(); ++digit)
                next[a.step(u, digit)] += cur[u];
        }
        std::swap(cur, next);
    }
    mpz_class total = 0;
    for (std::uint32_t u = 0; u < a.state_count(); ++u)
        if (a.accepting(u)) total += cur[u];
    return total;
}

namespace {

// Provable congruence along n = p^k - offset: the states visited for
// k = 1, 2, ... walk a deterministic path that must enter a cycle, so
// outputs are eventually periodic and any statement checked through one
// full period past the tail start holds for every k.
std::string family_relation(const Dfao& d, std::uint32_t offset) {
    const std::uint32_t p = d.p();
    std::vector<std::uint32_t> outputs;
    std::map<std::uint32_t, std::size_t> first_seen;   // state -> k
    std::uint32_t u = d.step(0, p - offset);
    std::size_t tail_start = 0, period = 0;
    for (std::size_t k = 1;; ++k) {
        auto it = first_seen.find(u);
        if (it != first_seen.end()) {
            tail_start = it->second;
            period = k - it->second;
            break;
        }
        first_seen.emplace(u, k);
        outputs.push_back(d.output(u));
        u = d.step(u, p - 1);
    }
    std::size_t window = tail_start + (period % 2 == 0 ? period : 2 * period);
    while (outputs.size() < window) {
        outputs.push_back(d.output(u));
        u = d.step(u, p - 1);
    }

    std::ostringstream os;
    os << "M(" << p << "^k-" << offset << ") = ";
    bool constant = std::all_of(outputs.begin(), outputs.end(),
                                [&outputs](std::uint32_t v) { return v == outputs[0]; });
    if (constant) {
        os << outputs[0] << " (mod " << p << ") for all k >= 1";
        return os.str();
    }
    bool by_parity = true;
    for (std::size_t i = 2; i < outputs.size() && by_parity; ++i)
        by_parity = outputs[i] == outputs[i - 2];
    if (by_parity) {
        os << outputs[0] << " (mod " << p << ") for odd k, " << outputs[1] << " for even k";
        return os.str();
    }
    os << "periodic (mod " << p << "): ";
    for (std::size_t i = 0; i < outputs.size(); ++i) os << (i ? ", " : "") << outputs[i];
    return os.str();
}

} // namespace

std::vector<DensityTableRow> density_table() {
    std::vector<DensityTableRow> rows;
    for (std::uint32_t p : {7u, 11u, 13u, 17u, 19u, 23u, 29u}) {
        Dfao d = build_dfao(p);
        DensityTableRow row;
        row.p = p;
        if (p == 7 || p == 17 || p == 19) {
            row.density_exact = false;
            row.density = 1;
        } else {
            row.density_exact = true;
            row.density = characterization_density(p);
        }
        row.relations.push_back(family_relation(d, 1));
        row.relations.push_back(family_relation(d, 2));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string density_table_text() {
    std::ostringstream os;
    os << "p   density of {n : M_n = 0 (mod p)}   congruences along power families\n";
    for (const DensityTableRow& row : density_table()) {
        std::ostringstream dens;
        dens << row.density.get_str();
        if (!row.density_exact) dens << " (empirical)";
        os << row.p << std::string(row.p < 10 ? 3 : 2, ' ')
           << dens.str() << std::string(dens.str().size() < 34 ? 34 - dens.str().size() : 1, ' ');
        for (std::size_t i = 0; i < row.relations.size(); ++i)
            os << (i ? "; " : "") << row.relations[i];
        os << "\n";
    }
    return os.str();
}

std::string density_table_json() {
    nlohmann::json rows = nlohmann::json::array();
    for (const DensityTableRow& row : density_table()) {
        nlohmann::json r;
        r["p"] = row.p;
        r["density"] = row.density.get_str();
        r["exact"] = row.density_exact;
        r["relations"] = row.relations;
        rows.push_back(std::move(r));
    }
    return rows.dump(1);
}

} // namespace motzkin
