// Shared helpers for the test suites.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefrev/background.hpp"
#include "prefrev/parser.hpp"
#include "prefrev/theory.hpp"

namespace prefrev::testing {

inline GroundTheory load(const std::string& text) { return ground_theory(parse_source(text)); }

inline Formula formula(const GroundTheory& theory, const std::string& text) {
  return ground_formula(theory, parse_formula(text));
}

inline std::vector<Formula> bodies(const GroundTheory& theory) {
  std::vector<Formula> out;
  for (const auto& m : theory.members()) out.push_back(m.body);
  return out;
}

inline std::string corpus_text(const std::string& file) {
  std::ifstream in(std::string(PREFREV_CORPUS_DIR) + "/" + file);
  if (!in) throw std::runtime_error("missing corpus file " + file);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline GroundTheory corpus(const std::string& file) { return load(corpus_text(file)); }

inline Term name(const std::string& text) { return parse_term(text).with_sort(SortKind::kName); }

}  // namespace prefrev::testing
