#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "motzkin/fppoly.hpp"

using namespace motzkin;

namespace {

// Q over Z/pZ as used by the machines; handy as a nontrivial fixture.
PolyFp fixture_q(std::uint32_t p) {
    return make_poly(p, {{0, 0, 1}, {1, 0, -1}, {1, 1, -1}, {2, 1, -1}, {2, 2, -2}, {2, 3, -1}});
}

std::mt19937 rng(20240917);

PolyFp random_poly(std::uint32_t p, int max_terms, int max_exp) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<long long> exp(0, max_exp);
    std::uniform_int_distribution<long long> coeff(0, p - 1);
    std::vector<std::array<long long, 3>> triples;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) triples.push_back({exp(rng), exp(rng), coeff(rng)});
    return make_poly(p, triples);
}

// Substitutes x -> x^p, y -> y^p; the partner of the section operators.
PolyFp inflate(const PolyFp& a) {
    std::vector<std::array<long long, 3>> triples;
    for (const Term& t : a.terms())
        triples.push_back({static_cast<long long>(t.xe) * a.modulus(),
                           static_cast<long long>(t.ye) * a.modulus(), t.coeff});
    return make_poly(a.modulus(), triples);
}

} // namespace

TEST_CASE("construction canonicalizes") {
    PolyFp a = make_poly(7, {{1, 2, 3}, {0, 0, 5}, {1, 2, 4}});
    PolyFp b = make_poly(7, {{0, 0, 5}, {1, 2, 7}});
    CHECK(a == b);
    CHECK(a.coeff(1, 2) == 0);
    CHECK(a.coeff(0, 0) == 5);
    CHECK(a.term_count() == 1);

    CHECK(make_poly(7, {{3, 1, -1}}).coeff(3, 1) == 6);
    CHECK(make_poly(7, {{3, 1, 14}}).is_zero());
    CHECK(make_poly(7, {{1, 0, 2}, {0, 1, 4}}) == make_poly(7, {{0, 1, 4}, {1, 0, 2}}));

    CHECK_THROWS_AS(PolyFp(1), std::invalid_argument);
    CHECK_THROWS_AS(make_poly(5, {{-1, 0, 1}}), std::invalid_argument);
}

TEST_CASE("degrees and origin") {
    PolyFp zero(7);
    CHECK(zero.is_zero());
    CHECK(zero.degree_x() == -1);
    CHECK(zero.degree_y() == -1);
    CHECK(zero.eval_origin() == 0);

    PolyFp q = fixture_q(7);
    CHECK(q.degree_x() == 2);
    CHECK(q.degree_y() == 3);
    CHECK(q.eval_origin() == 1);
}

TEST_CASE("addition") {
    CHECK(make_poly(5, {{1, 0, 1}}) + make_poly(5, {{1, 0, 2}}) == make_poly(5, {{1, 0, 3}}));
    CHECK((make_poly(7, {{0, 1, 6}}) + make_poly(7, {{0, 1, 1}})).is_zero());
    PolyFp a = random_poly(7, 6, 9);
    CHECK(a + PolyFp(7) == a);
    CHECK_THROWS_AS(PolyFp(5) + PolyFp(7), std::invalid_argument);
}

TEST_CASE("multiplication") {
    PolyFp q = fixture_q(7);
    CHECK((q * q).eval_origin() == 1);
    // (x + y)^2 = x^2 + 2xy + y^2
    PolyFp s = make_poly(7, {{1, 0, 1}, {0, 1, 1}});
    CHECK(s * s == make_poly(7, {{2, 0, 1}, {1, 1, 2}, {0, 2, 1}}));
    CHECK((q * PolyFp(7)).is_zero());
    CHECK(q * PolyFp::constant(7, 1) == q);
    CHECK_THROWS_AS(fixture_q(5) * fixture_q(7), std::invalid_argument);
}

TEST_CASE("powers") {
    PolyFp q = fixture_q(7);
    PolyFp q6 = q.pow(6);
    CHECK(q6.eval_origin() == 1);
    CHECK(q6.degree_x() == 12);
    CHECK(q6.degree_y() == 18);
    CHECK(q.pow(0) == PolyFp::constant(7, 1));
    CHECK(PolyFp(7).pow(0) == PolyFp::constant(7, 1));
    CHECK(q.pow(1) == q);
    CHECK(q.pow(3) == q * q * q);
}

TEST_CASE("section operator basics") {
    PolyFp a = PolyFp::monomial(7, 8, 15, 1);
    CHECK(a.cartier(1, 1) == PolyFp::monomial(7, 1, 2, 1));
    CHECK(PolyFp::monomial(7, 3, 3, 1).cartier(3, 3) == PolyFp::constant(7, 1));
    CHECK(PolyFp::monomial(7, 0, 1, 1).cartier(0, 1) == PolyFp::constant(7, 1));
    // Terms not congruent to the digit pair are dropped.
    CHECK(PolyFp::monomial(7, 1, 0, 1).cartier(0, 0).is_zero());
    CHECK_THROWS_AS(a.cartier(7, 0), std::invalid_argument);
    CHECK_THROWS_AS(a.cartier(0, 9), std::invalid_argument);
}

TEST_CASE("section operator properties") {
    std::uniform_int_distribution<std::uint32_t> digit7(0, 6);
    for (int round = 0; round < 500; ++round) {
        PolyFp a = random_poly(7, 8, 12), b = random_poly(7, 8, 12);
        std::uint32_t r = digit7(rng), s = digit7(rng);
        CHECK((a + b).cartier(r, s) == a.cartier(r, s) + b.cartier(r, s));
        CHECK(a.cartier(r, s).degree_x() <= (a.degree_x() < 0 ? -1 : a.degree_x() / 7));
    }

    // The sections of a reassemble it: sum over digit pairs of
    // x^r y^s * cartier(a, r, s)(x^p, y^p).
    for (int round = 0; round < 100; ++round) {
        PolyFp a = random_poly(5, 10, 14);
        PolyFp sum(5);
        for (std::uint32_t r = 0; r < 5; ++r)
            for (std::uint32_t s = 0; s < 5; ++s)
                sum = sum + PolyFp::monomial(5, r, s, 1) * inflate(a.cartier(r, s));
        CHECK(sum == a);
    }

    // cartier(a^p * b) = a * cartier(b): the Frobenius twist passes through.
    std::uniform_int_distribution<std::uint32_t> digit5(0, 4);
    for (int round = 0; round < 100; ++round) {
        PolyFp a = random_poly(5, 3, 3), b = random_poly(5, 6, 10);
        std::uint32_t r = digit5(rng), s = digit5(rng);
        CHECK((a.pow(5) * b).cartier(r, s) == a * b.cartier(r, s));
    }
}

TEST_CASE("ring identities on random polynomials") {
    for (int round = 0; round < 200; ++round) {
        PolyFp a = random_poly(13, 6, 8), b = random_poly(13, 6, 8), c = random_poly(13, 6, 8);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("rendering") {
    CHECK(PolyFp(7).to_string() == "0");
    CHECK(PolyFp::constant(7, 1).to_string() == "1");
    CHECK(PolyFp::constant(7, 3).to_string() == "3");
    CHECK(PolyFp::monomial(7, 1, 1, 1).to_string() == "y*x");
    CHECK(PolyFp::monomial(7, 2, 0, 1).to_string() == "x^2");
    CHECK(PolyFp::monomial(7, 2, 0, 3).to_string() == "3*x^2");
    CHECK(PolyFp::monomial(7, 0, 2, 1).to_string() == "y^2");
    CHECK(make_poly(7, {{0, 2, 1}, {0, 1, 1}, {0, 0, 1}}).to_string() == "y^2 + y + 1");
    CHECK(make_poly(7, {{2, 0, 1}, {0, 0, 3}}).to_string() == "x^2 + 3");
    CHECK(make_poly(7, {{2, 4, 5}, {2, 3, 5}, {1, 2, 6}, {0, 1, 1}}).to_string() ==
          "(5*y^4 + 5*y^3)*x^2 + 6*y^2*x + y");
    CHECK(make_poly(7, {{2, 3, 2}, {2, 2, 2}, {1, 1, 1}}).to_string() ==
          "(2*y^3 + 2*y^2)*x^2 + y*x");
}

TEST_CASE("hashing follows equality") {
    PolyFp a = make_poly(7, {{1, 2, 3}, {0, 0, 5}});
    PolyFp b = make_poly(7, {{0, 0, 5}, {1, 2, 3}});
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != PolyFp(7).hash());
}
