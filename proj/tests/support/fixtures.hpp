#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "stratlang/text_format.hpp"

namespace stratlang::fixture {

inline std::string path(const std::string& file) { return std::string(STRATLANG_FIXTURE_DIR) + "/" + file; }

inline std::string text(const std::string& file) {
  std::ifstream in(path(file));
  if (!in) throw std::runtime_error("missing fixture " + file);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline AnyAutomaton automaton(const std::string& name) { return parse_automaton(text(name + ".aut"), name); }

inline BuchiAutomaton buchi(const std::string& name) {
  const auto a = automaton(name);
  if (const auto* s = std::get_if<SafetyAutomaton>(&a)) return s->as_buchi();
  return std::get<BuchiAutomaton>(a);
}

inline SafetyAutomaton safety(const std::string& name) { return std::get<SafetyAutomaton>(automaton(name)); }
inline Dfa dfa(const std::string& name) { return std::get<Dfa>(automaton(name)); }

inline LoadedStrategy strategy(const std::string& name) { return parse_strategy(text(name + ".strat"), name); }

inline ProductStrategyVector vector(const std::string& name) {
  return std::get<ProductStrategyVector>(strategy(name).strategy);
}

inline FiniteMemoryStrategy general(const std::string& name) {
  const auto loaded = strategy(name);
  if (const auto* v = std::get_if<ProductStrategyVector>(&loaded.strategy)) return v->to_general();
  return std::get<FiniteMemoryStrategy>(loaded.strategy);
}

inline Game prisoners_dilemma() { return parse_game(text("pd.game"), "pd"); }

}  // namespace stratlang::fixture
