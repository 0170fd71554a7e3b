#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "stratlang/alphabet.hpp"
#include "stratlang/lasso.hpp"

namespace stratlang {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// A deterministic, possibly partial, transition structure. A structure with
/// zero states is the designated empty automaton.
class DetAutomaton {
 public:
  DetAutomaton(MoveAlphabet alphabet, std::size_t states, StateId initial);

  static DetAutomaton empty(MoveAlphabet alphabet);

  const MoveAlphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return states_; }
  bool has_no_states() const { return states_ == 0; }
  StateId initial() const { return initial_; }

  StateId successor(StateId q, Letter a) const { return delta_[index(q, a)]; }
  void set_successor(StateId q, Letter a, StateId target);
  void clear_successor(StateId q, Letter a) { delta_[index(q, a)] = kNoState; }
  bool has_successor(StateId q) const;

  /// Same transitions, different initial state.
  DetAutomaton rerooted(StateId initial) const;

  /// State reached from `from` after reading `word`, or kNoState if the run leaves the domain.
  StateId run(StateId from, std::span<const Letter> word) const;

 private:
  std::size_t index(StateId q, Letter a) const { return std::size_t{q} * alphabet_.size() + a; }

  MoveAlphabet alphabet_;
  std::size_t states_ = 0;
  StateId initial_ = kNoState;
  std::vector<StateId> delta_;
};

/// Deterministic automaton on finite words. Partial runs reject.
class Dfa {
 public:
  Dfa(DetAutomaton structure, std::vector<bool> accepting);
  static Dfa empty(MoveAlphabet alphabet);

  const DetAutomaton& structure() const { return structure_; }
  const MoveAlphabet& alphabet() const { return structure_.alphabet(); }
  const std::vector<bool>& accepting() const { return accepting_; }
  bool accepts(std::span<const Letter> word) const;

 private:
  DetAutomaton structure_;
  std::vector<bool> accepting_;
};

/// Deterministic Buchi automaton: a run is accepting when it is infinite and
/// visits an accepting state infinitely often.
class BuchiAutomaton {
 public:
  BuchiAutomaton(DetAutomaton structure, std::vector<bool> accepting);
  static BuchiAutomaton empty(MoveAlphabet alphabet);
  /// A^omega.
  static BuchiAutomaton universal(MoveAlphabet alphabet);

  const DetAutomaton& structure() const { return structure_; }
  const MoveAlphabet& alphabet() const { return structure_.alphabet(); }
  const std::vector<bool>& accepting() const { return accepting_; }
  /// True when every state is accepting (the acceptance condition is trivial).
  bool all_accepting() const;
  bool accepts(const LassoWord& word) const;

 private:
  DetAutomaton structure_;
  std::vector<bool> accepting_;
};

/// Trim partial deterministic automaton whose infinite runs define a closed
/// language. Every state is reachable and lies on an infinite path.
class SafetyAutomaton {
 public:
  static SafetyAutomaton empty(MoveAlphabet alphabet);
  static SafetyAutomaton universal(MoveAlphabet alphabet);

  const DetAutomaton& structure() const { return structure_; }
  const MoveAlphabet& alphabet() const { return structure_.alphabet(); }
  std::size_t state_count() const { return structure_.state_count(); }
  bool is_empty() const { return structure_.has_no_states(); }
  bool accepts(const LassoWord& word) const;
  BuchiAutomaton as_buchi() const;

 private:
  explicit SafetyAutomaton(DetAutomaton trimmed) : structure_(std::move(trimmed)) {}
  friend SafetyAutomaton trim(const DetAutomaton& raw);

  DetAutomaton structure_;
};

/// Removes states without an infinite continuation, then unreachable states.
SafetyAutomaton trim(const DetAutomaton& raw);

/// States from which some run visits an accepting state infinitely often.
std::vector<bool> alive_states(const BuchiAutomaton& language);

/// Pref(L): every alive state, all accepting. Pref of the empty language is empty.
Dfa pref_automaton(const BuchiAutomaton& language);

/// w^{-1} L, the automaton re-rooted at the state reached by w.
BuchiAutomaton left_quotient(const BuchiAutomaton& language, std::span<const Letter> word);

/// The infinite words having infinitely many prefixes accepted by `prefixes`.
BuchiAutomaton arrow(const Dfa& prefixes);

/// The topological closure of L: the alive part with acceptance dropped.
SafetyAutomaton safety_closure(const BuchiAutomaton& language);

struct Containment {
  bool holds = true;
  std::optional<LassoWord> counterexample;  // member of L(A) \ L(B) when !holds
};

/// Decides L(a) ⊆ L(b) and returns a lasso counterexample when it fails.
Containment contains(const BuchiAutomaton& a, const BuchiAutomaton& b);
Containment contains(const SafetyAutomaton& a, const SafetyAutomaton& b);
Containment contains(const SafetyAutomaton& a, const BuchiAutomaton& b);
Containment contains(const BuchiAutomaton& a, const SafetyAutomaton& b);

template <typename A, typename B>
bool equivalent(const A& a, const B& b) {
  return contains(a, b).holds && contains(b, a).holds;
}

SafetyAutomaton intersect(const SafetyAutomaton& a, const SafetyAutomaton& b);

/// Product of two Buchi automata. At most one operand may have a nontrivial
/// acceptance set; std::invalid_argument otherwise.
BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// A member lasso, or nullopt when the language is empty.
std::optional<LassoWord> find_member(const BuchiAutomaton& language);
std::optional<LassoWord> find_member(const SafetyAutomaton& language);

struct StrategicalVerdict {
  bool strategical = true;
  /// A word of the closure missing from L when !strategical.
  std::optional<LassoWord> missing_limit;
};

/// L is strategical iff it is closed, decided as closure(L) ⊆ L.
StrategicalVerdict check_strategical(const BuchiAutomaton& language);

/// Route through the closure: closure(L) ⊆ L.
bool is_strategical_by_closure(const BuchiAutomaton& language);
/// Route through prefixes: arrow(Pref(L)) ≡ L.
bool is_strategical_by_arrow(const BuchiAutomaton& language);
/// Both routes; throws std::logic_error if they disagree.
bool is_strategical(const BuchiAutomaton& language);

/// All words of length k that can be continued to a member of the language.
std::vector<Word> words_of_length(const SafetyAutomaton& language, std::size_t k);

/// Lassos of `language` whose run enters a simple cycle: a stem path to some
/// state s followed by a simple cycle through s, with |stem| + |cycle| <= bound.
/// Normalized, duplicate-free, ordered by total length and then lexicographically.
std::vector<LassoWord> enumerate_lassos(const SafetyAutomaton& language, std::size_t bound);

}  // namespace stratlang
