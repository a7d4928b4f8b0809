#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include <json.hpp>

#include "motzkin/io.hpp"

using namespace motzkin;
namespace fs = std::filesystem;

namespace {

std::size_t count_arrows(const std::string& dot) {
    std::size_t n = 0, at = 0;
    while ((at = dot.find("->", at)) != std::string::npos) {
        ++n;
        at += 2;
    }
    return n;
}

} // namespace

TEST_CASE("json round trip") {
    for (std::uint32_t p : {7u, 13u, 29u}) {
        Dfao d = build_dfao(p);
        Dfao back = automaton_from_json(automaton_to_json(d));
        CHECK(back == d);
    }

    std::vector<PolyFp> states{make_poly(2, {{1, 0, 1}, {0, 1, 1}}),
                               PolyFp::monomial(2, 1, 0, 1), PolyFp::monomial(2, 0, 1, 1)};
    Dfao toy(2, std::move(states), {1, 2, 1, 1, 2, 2});
    Dfao tiny = minimize(toy);
    CHECK(automaton_from_json(automaton_to_json(tiny)) == tiny);
}

TEST_CASE("file round trip") {
    fs::path dir = fs::temp_directory_path() / "motzkin_io_test";
    fs::create_directories(dir);
    fs::path file = dir / "m13.json";

    Dfao d = build_dfao(13);
    save_automaton(d, file);
    CHECK(fs::exists(file));
    CHECK_FALSE(fs::exists(file.string() + ".tmp"));
    CHECK(load_automaton(file) == d);

    fs::remove_all(dir);
    CHECK_THROWS_AS(load_automaton(file), std::runtime_error);
}

TEST_CASE("tampered files are rejected") {
    Dfao d = build_dfao(7);
    std::string text = automaton_to_json(d);
    auto reject = [](const nlohmann::json& doc) {
        CHECK_THROWS_AS(automaton_from_json(doc.dump()), std::runtime_error);
    };

    nlohmann::json doc = nlohmann::json::parse(text);
    doc["outputs"][2] = (doc["outputs"][2].get<int>() + 1) % 7;
    reject(doc);

    doc = nlohmann::json::parse(text);
    doc["format"] = 2;
    reject(doc);

    doc = nlohmann::json::parse(text);
    doc["modulus"] = 9;
    reject(doc);

    doc = nlohmann::json::parse(text);
    doc["states"][1]["text"] = "y";
    reject(doc);

    doc = nlohmann::json::parse(text);
    doc["transitions"][0][3] = 0;   // states are numbered from 1
    reject(doc);

    doc = nlohmann::json::parse(text);
    doc["states"][0]["terms"].push_back(doc["states"][0]["terms"][0]);
    reject(doc);

    CHECK_THROWS_AS(automaton_from_json(text.substr(0, text.size() / 2)), std::runtime_error);
    CHECK_THROWS_AS(automaton_from_json("[]"), std::runtime_error);
}

TEST_CASE("dot rendering") {
    Dfao d7 = build_dfao(7);
    std::string dot = to_dot(d7);
    CHECK(dot == to_dot(build_dfao(7)));
    CHECK(dot.rfind("digraph motzkin_mod_7 {", 0) == 0);
    CHECK(dot.find("s1 [label=\"s[1] / 0\"];") != std::string::npos);
    CHECK(dot.find("s9 -> s9 [label=\"0,1,2,3,4,5,6\"];") != std::string::npos);
}

TEST_CASE("dot zero-paths subgraph") {
    std::string sub11 = to_dot(build_dfao(11), true);
    CHECK(sub11.find("s1 -> s11 [label=\"10\"];") != std::string::npos);

    std::string sub13 = to_dot(build_dfao(13), true);
    CHECK(sub13.find("s12 -> s17 [label=\"0\"];") != std::string::npos);

    for (std::uint32_t p : {11u, 13u}) {
        Dfao d = build_dfao(p);
        std::string full = to_dot(d);
        std::string sub = to_dot(d, true);
        CHECK(count_arrows(sub) < count_arrows(full));
        CHECK(sub.size() < full.size());
        CHECK(sub.find("s1 [label=") != std::string::npos);   // entry always drawn
    }

    // Almost every index is a zero of the sequence mod 7, so every state
    // still leads to the zero loop and nothing can be pruned.
    Dfao d7 = build_dfao(7);
    CHECK(to_dot(d7, true) == to_dot(d7, false));
}
