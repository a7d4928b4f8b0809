#pragma once

#include <filesystem>
#include <string>

#include "motzkin/automaton.hpp"

namespace motzkin {

/// JSON text for a machine (format version 1): modulus, states as term
/// triples plus rendered text, outputs, and the transition table with
/// 1-based state indices. Deterministic: same machine, same bytes.
std::string automaton_to_json(const Dfao& d);

/// Parses and validates JSON produced by automaton_to_json. Structural
/// problems, out-of-range indices, or stored outputs disagreeing with the
/// state polynomials all throw std::runtime_error.
Dfao automaton_from_json(const std::string& text);

/// save writes atomically (temp file + rename).
void save_automaton(const Dfao& d, const std::filesystem::path& path);
Dfao load_automaton(const std::filesystem::path& path);

/// GraphViz rendering. States are boxes labelled "s[i] / out"; parallel
/// edges are merged with comma-separated digit labels. With
/// zero_paths_only, only states that can still reach a canonically
/// reachable zero-output state are drawn, which is the part of the machine
/// relevant to divisibility.
std::string to_dot(const Dfao& d, bool zero_paths_only = false);

} // namespace motzkin
