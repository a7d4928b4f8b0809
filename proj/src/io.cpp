#include "motzkin/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "motzkin/sequence.hpp"

namespace motzkin {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

[[noreturn]] void bad(const std::string& what) {
    throw std::runtime_error("automaton JSON: " + what);
}

} // namespace

std::string automaton_to_json(const Dfao& d) {
    json out;
    out["format"] = kFormatVersion;
    out["modulus"] = d.p();
    out["initial"] = 1;   // state indices are 1-based in the file

    json states = json::array();
    for (std::uint32_t u = 0; u < d.state_count(); ++u) {
        json terms = json::array();
        for (const Term& t : d.state(u).terms())
            terms.push_back(json::array({t.xe, t.ye, t.coeff}));
        states.push_back(json{{"terms", std::move(terms)}, {"text", d.state(u).to_string()}});
    }
    out["states"] = std::move(states);
    out["outputs"] = d.outputs();

    json rows = json::array();
    for (std::uint32_t u = 0; u < d.state_count(); ++u) {
        json row = json::array();
        for (std::uint32_t digit = 0; digit < d.p(); ++digit)
            row.push_back(d.step(u, digit) + 1);
        rows.push_back(std::move(row));
    }
    out["transitions"] = std::move(rows);
    return out.dump(1);
}

Dfao automaton_from_json(const std::string& text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("parse failure: ") + e.what());
    }
    try {
        if (!in.is_object()) bad("top level must be an object");
        if (in.value("format", -1) != kFormatVersion) bad("unsupported format version");
        if (!in.contains("modulus") || !in["modulus"].is_number_unsigned())
            bad("missing modulus");
        std::uint64_t p64 = in["modulus"].get<std::uint64_t>();
        if (p64 < 2 || p64 >= (1ull << 31) || !is_prime(static_cast<std::uint32_t>(p64)))
            bad("modulus must be a prime below 2^31");
        std::uint32_t p = static_cast<std::uint32_t>(p64);
        if (in.value("initial", 0) != 1) bad("initial state must be 1");

        const json& jstates = in.at("states");
        if (!jstates.is_array() || jstates.empty()) bad("states must be a nonempty array");
        const std::size_t n = jstates.size();

        std::vector<PolyFp> states;
        states.reserve(n);
        for (const json& js : jstates) {
            std::vector<std::array<long long, 3>> triples;
            for (const json& jt : js.at("terms")) {
                if (!jt.is_array() || jt.size() != 3) bad("terms must be [xe, ye, coeff] triples");
                long long xe = jt[0].get<long long>();
                long long ye = jt[1].get<long long>();
                long long c = jt[2].get<long long>();
                if (xe < 0 || ye < 0 || c <= 0 || c >= static_cast<long long>(p))
                    bad("term out of range");
                triples.push_back({xe, ye, c});
            }
            PolyFp poly = make_poly(p, triples);
            if (poly.term_count() != triples.size()) bad("terms not canonical");
            if (js.contains("text") && js.at("text").get<std::string>() != poly.to_string())
                bad("state text disagrees with terms");
            states.push_back(std::move(poly));
        }

        const json& jout = in.at("outputs");
        if (!jout.is_array() || jout.size() != n) bad("outputs must list one value per state");
        for (std::size_t u = 0; u < n; ++u) {
            if (jout[u].get<long long>() != static_cast<long long>(states[u].eval_origin()))
                bad("stored output disagrees with state polynomial");
        }

        const json& jtrans = in.at("transitions");
        if (!jtrans.is_array() || jtrans.size() != n) bad("transitions must list one row per state");
        std::vector<std::uint32_t> delta;
        delta.reserve(n * p);
        for (const json& jrow : jtrans) {
            if (!jrow.is_array() || jrow.size() != p) bad("transition row must have p entries");
            for (const json& jt : jrow) {
                long long target = jt.get<long long>();
                if (target < 1 || target > static_cast<long long>(n))
                    bad("transition target out of range");
                delta.push_back(static_cast<std::uint32_t>(target - 1));
            }
        }

        return Dfao(p, std::move(states), std::move(delta));
    } catch (const json::exception& e) {
        bad(std::string("structure: ") + e.what());
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

void save_automaton(const Dfao& d, const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << automaton_to_json(d) << '\n';
        if (!out.flush()) throw std::runtime_error("write failure on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Dfao load_automaton(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return automaton_from_json(buffer.str());
}

std::string to_dot(const Dfao& d, bool zero_paths_only) {
    const std::uint32_t p = d.p();
    const std::size_t n = d.state_count();

    std::vector<bool> drawn(n, true);
    if (zero_paths_only) {
        // Zero-output states reachable by some numeral (its most
        // significant digit being nonzero), ...
        std::vector<bool> canonical(n, false);
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t digit = 1; digit < p; ++digit) canonical[d.step(u, digit)] = true;
        // ... and everything that can still reach one of them; outside
        // this region divisibility is already decided negatively.
        std::vector<bool> relevant(n, false);
        for (std::uint32_t u = 0; u < n; ++u)
            relevant[u] = canonical[u] && d.output(u) == 0;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::uint32_t u = 0; u < n; ++u) {
                if (relevant[u]) continue;
                for (std::uint32_t digit = 0; digit < p; ++digit) {
                    if (relevant[d.step(u, digit)]) {
                        relevant[u] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        drawn = relevant;
        drawn[0] = true;   // keep the entry point visible even if decided
    }

    std::ostringstream os;
    os << "digraph motzkin_mod_" << p << " {\n";
    os << "  rankdir=LR;\n  node [shape=box];\n";
    for (std::uint32_t u = 0; u < n; ++u) {
        if (!drawn[u]) continue;
        os << "  s" << u + 1 << " [label=\"s[" << u + 1 << "] / " << d.output(u) << "\"];\n";
    }
    for (std::uint32_t u = 0; u < n; ++u) {
        if (!drawn[u]) continue;
        std::map<std::uint32_t, std::vector<std::uint32_t>> grouped;   // target -> digits
        for (std::uint32_t digit = 0; digit < p; ++digit) {
            std::uint32_t v = d.step(u, digit);
            if (zero_paths_only && !drawn[v]) continue;
            grouped[v].push_back(digit);
        }
        for (const auto& [v, digits] : grouped) {
            os << "  s" << u + 1 << " -> s" << v + 1 << " [label=\"";
            for (std::size_t i = 0; i < digits.size(); ++i) os << (i ? "," : "") << digits[i];
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace motzkin
