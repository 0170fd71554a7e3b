#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stratlang/alphabet.hpp"
#include "stratlang/automaton.hpp"

namespace stratlang {

/// A finite-memory nondeterministic strategy in general relation form: a
/// total memory update and, per memory state, an arbitrary set of permitted
/// move letters.
///
/// The update starts out as the identity (every letter keeps the memory
/// state) and the permitted sets start out empty.
class FiniteMemoryStrategy {
 public:
  FiniteMemoryStrategy(MoveAlphabet alphabet, std::size_t memory_size, StateId initial);

  const MoveAlphabet& alphabet() const { return alphabet_; }
  std::size_t memory_size() const { return memory_size_; }
  StateId initial() const { return initial_; }

  StateId update(StateId m, Letter a) const { return update_[m * alphabet_.size() + a]; }
  void set_update(StateId m, Letter a, StateId next);

  bool allows(StateId m, Letter a) const { return allowed_[m * alphabet_.size() + a]; }
  void set_allowed(StateId m, Letter a, bool allowed = true);
  std::vector<Letter> allowed_moves(StateId m) const;

  /// Memory state after the history `word`.
  StateId state_after(std::span<const Letter> word) const;

 private:
  MoveAlphabet alphabet_;
  std::size_t memory_size_;
  StateId initial_;
  std::vector<StateId> update_;
  std::vector<bool> allowed_;
};

/// A strategy vector (sigma_1, ..., sigma_n) sharing one finite memory. Each
/// player has a permitted action set per memory state; the permitted moves
/// are their product.
class ProductStrategyVector {
 public:
  ProductStrategyVector(MoveAlphabet alphabet, std::size_t memory_size, StateId initial);

  const MoveAlphabet& alphabet() const { return alphabet_; }
  std::size_t players() const { return alphabet_.players(); }
  std::size_t memory_size() const { return memory_size_; }
  StateId initial() const { return initial_; }

  StateId update(StateId m, Letter a) const { return update_[m * alphabet_.size() + a]; }
  void set_update(StateId m, Letter a, StateId next);

  bool allows_action(StateId m, std::size_t player, std::size_t action) const;
  void set_allowed_action(StateId m, std::size_t player, std::size_t action, bool allowed = true);
  /// Permits every action of `player` in every memory state.
  void make_unpredictable(std::size_t player);

  std::vector<std::size_t> allowed_actions(StateId m, std::size_t player) const;
  bool allows(StateId m, Letter a) const;
  std::vector<Letter> allowed_moves(StateId m) const;

  StateId state_after(std::span<const Letter> word) const;

  FiniteMemoryStrategy to_general() const;

 private:
  std::size_t action_slot(StateId m, std::size_t player, std::size_t action) const;

  MoveAlphabet alphabet_;
  std::size_t memory_size_;
  StateId initial_;
  std::vector<StateId> update_;
  std::vector<std::size_t> player_offset_;
  std::vector<bool> allowed_actions_;
};

/// A strategy given by a caller-supplied pure function of the history.
/// Used only for bounded-horizon queries.
struct ProgrammaticStrategy {
  MoveAlphabet alphabet;
  std::function<std::vector<Letter>(std::span<const Letter>)> moves;
};

/// gamma(sigma): the matches whose every letter is permitted at its history.
SafetyAutomaton gamma(const FiniteMemoryStrategy& strategy);
SafetyAutomaton gamma(const ProductStrategyVector& strategy);

/// The minimal strategy of L: at history w it permits Pref_1(w^{-1} L).
/// Memory is the alive part of L plus an absorbing sink with nothing permitted.
FiniteMemoryStrategy minimal_strategy(const BuchiAutomaton& language);

/// sigma(w), sorted ascending.
std::vector<Letter> moves_after(const FiniteMemoryStrategy& strategy, std::span<const Letter> word);
std::vector<Letter> moves_after(const ProductStrategyVector& strategy, std::span<const Letter> word);
std::vector<Letter> moves_after(const ProgrammaticStrategy& strategy, std::span<const Letter> word);

/// s <= t: s(w) ⊆ t(w) for every history w.
bool strategy_leq(const FiniteMemoryStrategy& s, const FiniteMemoryStrategy& t);

struct Rectangularity {
  bool rectangular = true;
  std::optional<StateId> offending_state;
};

/// Whether every reachable memory state permits exactly the product of the
/// per-player projections of its permitted moves.
Rectangularity is_rectangular(const FiniteMemoryStrategy& strategy);

/// Default guard for enumerate_prefixes: |A|^k may not exceed this.
inline constexpr std::size_t kDefaultEnumerationLimit = 1u << 20;

/// Pref_k(gamma(s)) for finite-memory strategies. Throws std::length_error
/// when |A|^k exceeds `limit`.
std::vector<Word> enumerate_prefixes(const FiniteMemoryStrategy& strategy, std::size_t k,
                                     std::size_t limit = kDefaultEnumerationLimit);
std::vector<Word> enumerate_prefixes(const ProductStrategyVector& strategy, std::size_t k,
                                     std::size_t limit = kDefaultEnumerationLimit);

/// The depth-k unrolling {w : |w| = k, every letter permitted at its history}.
/// This is a superset of Pref_k(gamma(s)): the unrolling cannot look ahead to
/// see whether a history dies later.
std::vector<Word> enumerate_prefixes(const ProgrammaticStrategy& strategy, std::size_t k,
                                     std::size_t limit = kDefaultEnumerationLimit);

}  // namespace stratlang
