#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "motzkin/analysis.hpp"
#include "motzkin/automaton.hpp"
#include "motzkin/density.hpp"
#include "motzkin/io.hpp"
#include "motzkin/langops.hpp"
#include "motzkin/sequence.hpp"

namespace {

using namespace motzkin;
using nlohmann::json;

std::string state_name(std::uint32_t i) { return "s[" + std::to_string(i + 1) + "]"; }

std::string state_list(const std::vector<std::uint32_t>& states) {
    std::string out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i) out += ", ";
        out += state_name(states[i]);
    }
    return out;
}

std::string digit_list(const std::vector<std::uint32_t>& digits) {
    std::string out = "{";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(digits[i]);
    }
    return out + "}";
}

// Index arguments accept plain decimal or the shorthands B^K, B^K+C and
// B^K-C (no spaces), e.g. 7^6-2.
mpz_class parse_index(const std::string& text) {
    auto fail = [&text]() -> mpz_class {
        throw std::invalid_argument("cannot parse index '" + text + "'");
    };
    auto decimal = [&](const std::string& part) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) fail();
        return mpz_class(part, 10);
    };

    std::size_t caret = text.find('^');
    if (caret == std::string::npos) return decimal(text);

    mpz_class base = decimal(text.substr(0, caret));
    std::string rest = text.substr(caret + 1);
    std::size_t sign = rest.find_first_of("+-");
    mpz_class shift = 0;
    bool negative = false;
    if (sign != std::string::npos) {
        negative = rest[sign] == '-';
        shift = decimal(rest.substr(sign + 1));
        rest = rest.substr(0, sign);
    }
    mpz_class exponent = decimal(rest);
    if (exponent < 0 || !exponent.fits_ulong_p()) fail();

    mpz_class value;
    mpz_pow_ui(value.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
    value += negative ? -shift : shift;
    if (value < 0) throw std::invalid_argument("index '" + text + "' is negative");
    return value;
}

std::uint32_t require_prime(std::uint32_t p) {
    if (!is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    return p;
}

double to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

int cmd_build(std::uint32_t p, const std::string& out_path, bool do_minimize) {
    Dfao d = build_dfao(require_prime(p));
    if (do_minimize) d = minimize(d);
    std::cout << d.state_count() << " states\n";
    if (!out_path.empty()) {
        save_automaton(d, out_path);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_eval(std::optional<std::uint32_t> prime, const std::string& automaton_path,
             const std::string& index) {
    Dfao d = prime ? build_dfao(require_prime(*prime)) : load_automaton(automaton_path);
    mpz_class n = parse_index(index);
    std::vector<std::uint32_t> path;
    std::uint32_t value = d.eval_path(n, path);
    std::cout << "n = " << n.get_str() << "\n";
    std::cout << "M_n mod " << d.p() << " = " << value << "\n";
    std::cout << "path:";
    for (std::uint32_t u : path) std::cout << " " << state_name(u);
    std::cout << "\n";
    return 0;
}

int cmd_analyze(std::uint32_t p, bool as_json) {
    Dfao d = build_dfao(require_prime(p));
    auto loops = loop_states(d);
    auto zeros = zero_value_states(d);
    auto partition = find_absorbing_partition(d);
    auto fam1 = check_power_family(d, 1, 10);
    auto fam2 = check_power_family(d, 2, 10);
    auto motif = motif_lower_bound(d);
    auto residues = achieved_residues(d);

    if (as_json) {
        json out;
        out["p"] = p;
        out["states"] = d.state_count();
        out["loop_states"] = loops;
        out["zero_output_states"] = zeros;
        if (partition) {
            out["absorbing_partition"] = {{"digits", partition->digits},
                                          {"a_states", partition->a_states},
                                          {"loop_state", partition->loop_state}};
        } else {
            out["absorbing_partition"] = nullptr;
        }
        out["family_power_minus_1"] = fam1;
        out["family_power_minus_2"] = fam2;
        out["motif_lower_bound"] = motif ? json(motif->get_str()) : json(nullptr);
        out["achieved_residues"] = residues;
        std::cout << out.dump(1) << "\n";
        return 0;
    }

    std::cout << "automaton for M_n mod " << p << ": " << d.state_count() << " states\n";
    std::cout << "loop states: " << state_list(loops) << "\n";
    std::cout << "zero-output states: " << state_list(zeros) << "\n";
    if (partition) {
        std::cout << "absorbing partition: digits " << digit_list(partition->digits) << "; A = {"
                  << state_list(partition->a_states) << "}; zero loop "
                  << state_name(partition->loop_state) << "\n";
    } else {
        std::cout << "absorbing partition: none\n";
    }
    auto family_line = [&](std::uint32_t offset, const std::vector<std::uint32_t>& fam) {
        std::cout << "family M(" << p << "^k-" << offset << "), k = 1..10:";
        for (std::uint32_t v : fam) std::cout << " " << v;
        std::cout << "\n";
    };
    family_line(1, fam1);
    family_line(2, fam2);
    if (motif)
        std::cout << "motif lower bound on zero density: " << motif->get_str() << "\n";
    else
        std::cout << "motif lower bound on zero density: none\n";
    std::cout << "achieved residues:";
    for (std::uint32_t r : residues) std::cout << " " << r;
    std::cout << "\n";
    return 0;
}

int cmd_density(std::uint32_t p, std::uint32_t residue, std::uint32_t depth, bool closed_form) {
    Dfao d = build_dfao(require_prime(p));
    if (residue >= p) throw std::invalid_argument("residue must be below the prime");
    CountVector cv = count_residues(d, depth);
    Rational estimate = density_estimate(d, residue, depth);
    std::cout << "count(residue " << residue << ", depth " << depth
              << ") = " << cv.counts[residue].get_str() << " of " << p << "^" << depth << "\n";
    std::cout << "estimate = " << estimate.get_str() << " ~ " << to_double(estimate) << "\n";
    if (closed_form) {
        if (residue != 0)
            throw std::invalid_argument("closed forms exist only for residue 0");
        Rational exact = characterization_density(p);
        Rational gap = estimate - exact;
        if (gap < 0) gap = -gap;
        std::cout << "closed form = " << exact.get_str() << " ~ " << to_double(exact) << "\n";
        std::cout << "|estimate - closed form| = " << to_double(gap)
                  << (gap < Rational(1, 1000) ? " < 1/1000" : " >= 1/1000") << "\n";
    }
    return 0;
}

int cmd_table(bool as_json) {
    std::cout << (as_json ? density_table_json() + "\n" : density_table_text());
    return 0;
}

struct VerifyContext {
    bool all_pass = true;
    json items = json::array();
    bool as_json = false;

    void check(const std::string& name, bool pass) {
        all_pass = all_pass && pass;
        if (as_json)
            items.push_back({{"check", name}, {"pass", pass}});
        else
            std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "\n";
    }
};

int cmd_verify(std::uint32_t p, std::uint64_t upto, bool as_json) {
    static const std::map<std::uint32_t, std::size_t> expected_states{
        {7, 11}, {11, 17}, {13, 17}, {17, 23}, {19, 23}, {23, 29}, {29, 35}};
    if (!expected_states.count(p))
        throw std::invalid_argument("verify covers p in {7, 11, 13, 17, 19, 23, 29}");
    if (upto < 100 || upto > kExactCeiling)
        throw std::invalid_argument("--upto must be in [100, 100000]");

    VerifyContext v;
    v.as_json = as_json;
    Dfao d = build_dfao(p);

    v.check("state count = " + std::to_string(expected_states.at(p)),
            d.state_count() == expected_states.at(p));

    std::vector<std::uint32_t> residues = motzkin_mod_table(p, upto + 1);
    bool agree = d.eval(0) == 1 % p;
    for (std::uint64_t n = 0; n <= upto && agree; ++n) {
        std::uint32_t want = n == 0 ? 1 % p : residues[n];
        agree = d.eval(mpz_class(static_cast<unsigned long>(n))) == want;
    }
    v.check("machine agrees with direct computation for n <= " + std::to_string(upto), agree);

    if (p == 7 || p == 17 || p == 19) {
        static const std::map<std::uint32_t, std::vector<std::uint32_t>> expected_digits{
            {7, {3}}, {17, {5, 11}}, {19, {4, 14}}};
        auto partition = find_absorbing_partition(d);
        v.check("absorbing partition with digits " + digit_list(expected_digits.at(p)),
                partition && partition->digits == expected_digits.at(p));

        auto fam1 = check_power_family(d, 1, 30);
        auto fam2 = check_power_family(d, 2, 30);
        bool fams_ok = true;
        for (std::size_t k = 1; k <= 30; ++k) {
            std::uint32_t want1, want2;
            if (p == 17) {
                want1 = k % 2 ? 16 : 2;
                want2 = k % 2 ? 16 : 0;
            } else {
                want1 = 2;
                want2 = 0;
            }
            fams_ok = fams_ok && fam1[k - 1] == want1 && fam2[k - 1] == want2;
        }
        v.check("power families follow the expected pattern for k <= 30", fams_ok);

        DensityOneReport rep = density_one_certificate(d, 20, 200);
        v.check("density-one certificate holds on depths [20, 200]", rep.certified);
    } else {
        CharacterizationReport rep = verify_characterization(p, upto, residues);
        v.check("digit patterns are language-equivalent to the zero set", rep.language_equivalent);
        v.check("pattern membership matches direct computation for n <= " + std::to_string(upto),
                rep.reference_agrees && rep.zero_count_patterns == rep.zero_count_reference);

        Rational exact = characterization_density(p);
        std::uint32_t depth = p == 29 ? 8 : 10;
        Rational gap = density_estimate(d, 0, depth) - exact;
        if (gap < 0) gap = -gap;
        v.check("depth-" + std::to_string(depth) + " estimate is within 1/1000 of " +
                    exact.get_str(),
                gap < Rational(1, 1000));

        auto motif = motif_lower_bound(d);
        Rational expected_bound(2, static_cast<unsigned long>(p) * (p - 1));
        expected_bound.canonicalize();
        v.check("motif fires with bound 2/(p(p-1)) <= exact density",
                motif && *motif == expected_bound && *motif <= exact);
    }

    if (as_json) {
        json out;
        out["p"] = p;
        out["upto"] = upto;
        out["items"] = v.items;
        out["all_pass"] = v.all_pass;
        std::cout << out.dump(1) << "\n";
    }
    return v.all_pass ? 0 : 1;
}

int cmd_export(const std::string& automaton_path, const std::string& format,
               const std::string& subgraph, const std::string& out_path) {
    Dfao d = load_automaton(automaton_path);
    if (!subgraph.empty() && subgraph != "zero-paths")
        throw std::invalid_argument("unknown subgraph '" + subgraph + "' (try zero-paths)");

    std::string rendered;
    if (format == "dot") {
        rendered = to_dot(d, subgraph == "zero-paths");
    } else if (format == "json") {
        if (!subgraph.empty())
            throw std::invalid_argument("subgraphs are only available for dot output");
        rendered = automaton_to_json(d) + "\n";
    } else {
        throw std::invalid_argument("unknown format '" + format + "' (dot or json)");
    }

    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
        out << rendered;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite automata for Motzkin numbers modulo primes"};
    app.require_subcommand(1);

    std::uint32_t prime = 0;
    std::string out_path;
    bool do_minimize = false;
    auto* build = app.add_subcommand("build", "build the automaton for a prime");
    build->add_option("--prime", prime, "prime modulus")->required();
    build->add_option("--out", out_path, "write the machine as JSON");
    build->add_flag("--minimize", do_minimize, "minimize before writing");

    std::uint32_t eval_prime = 0;
    std::string eval_automaton, eval_index;
    auto* eval = app.add_subcommand("eval", "evaluate M_n mod p");
    auto* eval_prime_opt = eval->add_option("--prime", eval_prime, "build the machine for this prime");
    auto* eval_auto_opt = eval->add_option("--automaton", eval_automaton, "load a machine from JSON");
    eval->add_option("--n", eval_index, "index; decimal or B^K, B^K+C, B^K-C")->required();
    eval_prime_opt->excludes(eval_auto_opt);

    std::uint32_t analyze_prime = 0;
    bool analyze_json = false;
    auto* analyze = app.add_subcommand("analyze", "structural facts about the automaton");
    analyze->add_option("--prime", analyze_prime, "prime modulus")->required();
    analyze->add_flag("--json", analyze_json, "emit JSON");

    std::uint32_t density_prime = 0, density_residue = 0, density_depth = 10;
    bool density_closed = false;
    auto* density = app.add_subcommand("density", "residue counts below p^depth");
    density->add_option("--prime", density_prime, "prime modulus")->required();
    density->add_option("--residue", density_residue, "residue class")->required();
    density->add_option("--depth", density_depth, "number of digits");
    density->add_flag("--closed-form", density_closed, "compare with the exact density");

    bool table_json = false;
    auto* table = app.add_subcommand("table", "density and congruence summary for small primes");
    table->add_flag("--json", table_json, "emit JSON");

    std::uint32_t verify_prime = 0;
    std::uint64_t verify_upto = 20000;
    bool verify_json = false;
    auto* verify = app.add_subcommand("verify", "re-check the published facts for a prime");
    verify->add_option("--prime", verify_prime, "prime modulus")->required();
    verify->add_option("--upto", verify_upto, "direct-computation bound (default 20000)");
    verify->add_flag("--json", verify_json, "emit JSON");

    std::string export_automaton, export_format = "dot", export_subgraph, export_out;
    auto* exp = app.add_subcommand("export", "render a machine as dot or JSON");
    exp->add_option("--automaton", export_automaton, "machine JSON file")->required();
    exp->add_option("--format", export_format, "dot or json");
    exp->add_option("--subgraph", export_subgraph, "restrict dot output (zero-paths)");
    exp->add_option("--out", export_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(prime, out_path, do_minimize);
        if (eval->parsed()) {
            if (eval_prime == 0 && eval_automaton.empty())
                throw std::invalid_argument("eval needs --prime or --automaton");
            std::optional<std::uint32_t> p;
            if (eval_prime != 0) p = eval_prime;
            return cmd_eval(p, eval_automaton, eval_index);
        }
        if (analyze->parsed()) return cmd_analyze(analyze_prime, analyze_json);
        if (density->parsed())
            return cmd_density(density_prime, density_residue, density_depth, density_closed);
        if (table->parsed()) return cmd_table(table_json);
        if (verify->parsed()) return cmd_verify(verify_prime, verify_upto, verify_json);
        if (exp->parsed())
            return cmd_export(export_automaton, export_format, export_subgraph, export_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
