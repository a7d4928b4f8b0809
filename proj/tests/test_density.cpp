#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "motzkin/analysis.hpp"
#include "motzkin/density.hpp"
#include "motzkin/sequence.hpp"

using namespace motzkin;

namespace {

Rational qabs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

const Rational kTol(1, 1000);

} // namespace

TEST_CASE("closed-form set densities") {
    using V = PatternVariant;
    CHECK(pattern_density({11, 9, 2, 1, V::S, 2}) == Rational(1, 120));
    CHECK(pattern_density({11, 1, 2, 0, V::SPrime, 2}) == Rational(1, 1320));
    CHECK(pattern_density({13, 1, 1, 0, V::SPrime, 2}) == Rational(1, 156));
    CHECK(pattern_density({23, 21, 2, 1, V::S, 2}) == Rational(1, 528));
    CHECK(pattern_density({23, 1, 2, 0, V::SPrime, 2}) == Rational(1, 12144));
    CHECK(pattern_density({29, 14, 2, 1, V::S, 2}) == Rational(1, 840));
    CHECK(pattern_density({29, 1, 2, 0, V::SPrime, 2}) == Rational(1, 24360));

    // Shifts translate the set and leave its density alone.
    CHECK(pattern_density({11, 9, 2, 1, V::S, 0}) == pattern_density({11, 9, 2, 1, V::S, 2}));

    CHECK_THROWS_AS(pattern_density({1, 0, 1, 0, V::S, 0}), std::invalid_argument);
    CHECK_THROWS_AS(pattern_density({11, 0, 2, 1, V::S, 0}), std::invalid_argument);
    CHECK_THROWS_AS(pattern_density({11, 11, 2, 1, V::S, 0}), std::invalid_argument);
    CHECK_THROWS_AS(pattern_density({11, 9, 0, 1, V::S, 0}), std::invalid_argument);
    CHECK_THROWS_AS(pattern_density({11, 9, 2, -1, V::S, 0}), std::invalid_argument);
}

TEST_CASE("exact zero densities") {
    CHECK(characterization_density(11) == Rational(1, 55));
    CHECK(characterization_density(13) == Rational(1, 78));
    CHECK(characterization_density(23) == Rational(1, 253));
    CHECK(characterization_density(29) == Rational(22, 3045));
    CHECK_THROWS_AS(characterization_density(7), std::invalid_argument);
    CHECK(characterization_sets(29).size() == 8);
}

TEST_CASE("residue counting") {
    Dfao d7 = build_dfao(7);
    CountVector cv = count_residues(d7, 1);
    CHECK(cv.counts == std::vector<mpz_class>{1, 2, 3, 0, 1, 0, 0});

    for (std::uint32_t depth : {1u, 2u, 3u, 5u}) {
        CountVector c = count_residues(d7, depth);
        mpz_class total = 0;
        for (const auto& v : c.counts) total += v;
        mpz_class expect;
        mpz_ui_pow_ui(expect.get_mpz_t(), 7, depth);
        CHECK(total == expect);
    }
    CHECK_THROWS_AS(count_residues(d7, 0), std::invalid_argument);
}

TEST_CASE("residue counts agree with the sequence") {
    auto brute = [](std::uint32_t p, std::uint32_t depth) {
        std::size_t span = 1;
        for (std::uint32_t k = 0; k < depth; ++k) span *= p;
        std::vector<std::uint32_t> table = motzkin_mod_table(p, span);
        std::vector<mpz_class> counts(p, 0);
        for (std::uint32_t r : table) counts[r] += 1;
        return counts;
    };
    for (std::uint32_t p : {3u, 5u, 7u}) {
        Dfao d = build_dfao(p);
        for (std::uint32_t depth : {1u, 2u, 3u}) CHECK(count_residues(d, depth).counts == brute(p, depth));
    }
    for (std::uint32_t p : {11u, 13u}) CHECK(count_residues(build_dfao(p), 2).counts == brute(p, 2));
}

TEST_CASE("finite-depth estimates approach the limits") {
    CHECK(qabs(density_estimate(build_dfao(13), 0, 10) - Rational(1, 78)) < kTol);
    CHECK(qabs(density_estimate(build_dfao(29), 0, 8) - Rational(22, 3045)) < kTol);
    CHECK(qabs(density_estimate(build_dfao(5), 0, 12) - Rational(1, 10)) < kTol);
    CHECK(density_estimate(build_dfao(7), 0, 60) > Rational(9, 10));
    CHECK_THROWS_AS(density_estimate(build_dfao(7), 7, 3), std::invalid_argument);
}

TEST_CASE("density-one certificates") {
    Dfao d7 = build_dfao(7);
    DensityOneReport rep = density_one_certificate(d7, 20, 200);
    CHECK(rep.certified);
    CHECK(rep.ratios.size() == 180);
    CHECK(rep.max_ratio < Rational(13, 2));
    CHECK(rep.residue_zero_share > Rational(99, 100));

    // Density 1/55 < 1: no window can certify, and this one visibly fails.
    DensityOneReport bad = density_one_certificate(build_dfao(11), 20, 60);
    CHECK_FALSE(bad.certified);

    CHECK_THROWS_AS(density_one_certificate(d7, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(density_one_certificate(d7, 10, 10), std::invalid_argument);
}

TEST_CASE("string counting under acceptors") {
    CHECK(count_accepted(zero_string_acceptor(5), 3) == 1);
    CHECK(count_accepted(complement_of(zero_string_acceptor(5)), 3) == 124);

    // Each split digit shape occupies its predicted share of digit space.
    auto check_prime = [](std::uint32_t p, std::uint32_t depth) {
        std::vector<PatternSet> sets = characterization_sets(p);
        std::size_t at = 0;
        mpz_class total;
        mpz_ui_pow_ui(total.get_mpz_t(), p, depth);
        for (const PatternForm& form : characterization_forms(p)) {
            std::vector<std::uint32_t> next = form.next;
            std::sort(next.begin(), next.end());
            for (std::uint32_t d : next) {
                PatternForm single = form;
                single.next = {d};
                Rational share(count_accepted(compile_pattern(single), depth), total);
                share.canonicalize();
                CHECK(qabs(share - pattern_density(sets[at])) < kTol);
                ++at;
            }
        }
        CHECK(at == sets.size());
    };
    check_prime(11, 10);
    check_prime(13, 10);
    check_prime(23, 8);
    check_prime(29, 8);
}

TEST_CASE("motif bound sits below the measured density") {
    for (std::uint32_t p : {11u, 13u, 23u}) {
        auto bound = motif_lower_bound(build_dfao(p));
        REQUIRE(bound.has_value());
        CHECK(*bound == characterization_density(p));
    }
    auto bound29 = motif_lower_bound(build_dfao(29));
    REQUIRE(bound29.has_value());
    CHECK(*bound29 < characterization_density(29));

    for (std::uint32_t p : {7u, 17u, 19u}) {
        Dfao d = build_dfao(p);
        auto bound = motif_lower_bound(d);
        REQUIRE(bound.has_value());
        CHECK(*bound <= density_estimate(d, 0, 20) + kTol);
    }
}

TEST_CASE("summary table") {
    std::vector<DensityTableRow> rows = density_table();
    REQUIRE(rows.size() == 7);

    CHECK(rows[0].p == 7);
    CHECK_FALSE(rows[0].density_exact);
    CHECK(rows[0].density == 1);
    REQUIRE(rows[0].relations.size() == 2);
    CHECK(rows[0].relations[0] == "M(7^k-1) = 2 (mod 7) for all k >= 1");
    CHECK(rows[0].relations[1] == "M(7^k-2) = 0 (mod 7) for all k >= 1");

    CHECK(rows[1].p == 11);
    CHECK(rows[1].density_exact);
    CHECK(rows[1].density == Rational(1, 55));

    CHECK(rows[3].p == 17);
    CHECK(rows[3].relations[1] == "M(17^k-2) = 16 (mod 17) for odd k, 0 for even k");

    CHECK(rows[6].density == Rational(22, 3045));

    std::string text = density_table_text();
    CHECK(text.find("1/55") != std::string::npos);
    CHECK(text.find("22/3045") != std::string::npos);
    CHECK(text.find("(empirical)") != std::string::npos);

    nlohmann::json parsed = nlohmann::json::parse(density_table_json());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 7);
    CHECK(parsed[1]["p"] == 11);
    CHECK(parsed[1]["density"] == "1/55");
    CHECK(parsed[1]["exact"] == true);
    CHECK(parsed[0]["exact"] == false);
    CHECK(parsed[0]["relations"].size() == 2);
}
