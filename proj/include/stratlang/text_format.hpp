#pragma once

// Textual formats shared by the command-line tool and the fixtures.
//
// Lasso:     letters separated by whitespace, the cycle in parentheses:
//            "c,c c,d ( d,d )"  is (c,c)(c,d)((d,d))^omega.
// Word:      letters separated by whitespace; the empty string is epsilon.
// Alphabet:  "alphabet: c d | c d"  (per-player action lists split by '|').
//
// See docs/file-formats.md for the automaton, strategy and game grammars.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stratlang/alphabet.hpp"
#include "stratlang/automaton.hpp"
#include "stratlang/game.hpp"
#include "stratlang/lasso.hpp"
#include "stratlang/strategy.hpp"

namespace stratlang {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

LassoWord parse_lasso(std::string_view text, const MoveAlphabet& alphabet);
std::string format_lasso(const LassoWord& word, const MoveAlphabet& alphabet);

Word parse_word(std::string_view text, const MoveAlphabet& alphabet);
std::string format_word(std::span<const Letter> word, const MoveAlphabet& alphabet);

/// Builds an alphabet from the letters occurring in lasso or word texts:
/// one player per comma-separated field, actions in order of appearance.
MoveAlphabet infer_alphabet(std::span<const std::string> texts);

/// "c d | c d" -> {{c, d}, {c, d}}.
MoveAlphabet parse_alphabet_spec(std::string_view spec);
std::string format_alphabet_spec(const MoveAlphabet& alphabet);

using AnyAutomaton = std::variant<Dfa, BuchiAutomaton, SafetyAutomaton>;

AnyAutomaton parse_automaton(std::string_view text, const std::string& source = "<automaton>");
std::string format_automaton(const Dfa& automaton);
std::string format_automaton(const BuchiAutomaton& automaton);
std::string format_automaton(const SafetyAutomaton& automaton);

struct LoadedStrategy {
  std::variant<ProductStrategyVector, FiniteMemoryStrategy> strategy;
  std::vector<std::string> memory_names;
  std::optional<std::string> game;
};

LoadedStrategy parse_strategy(std::string_view text, const std::string& source = "<strategy>");
std::string format_strategy(const FiniteMemoryStrategy& strategy,
                            std::span<const std::string> memory_names = {});
std::string format_strategy(const ProductStrategyVector& strategy,
                            std::span<const std::string> memory_names = {});

Game parse_game(std::string_view text, const std::string& source = "<game>");
std::string format_game(const Game& game);

}  // namespace stratlang
