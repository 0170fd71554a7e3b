#include "stratlang/strategy.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace stratlang {

// ---------------------------------------------------------------------------
// FiniteMemoryStrategy

FiniteMemoryStrategy::FiniteMemoryStrategy(MoveAlphabet alphabet, std::size_t memory_size,
                                           StateId initial)
    : alphabet_(std::move(alphabet)),
      memory_size_(memory_size),
      initial_(initial),
      update_(memory_size * alphabet_.size()),
      allowed_(memory_size * alphabet_.size(), false) {
  if (memory_size == 0) throw std::invalid_argument("strategy needs at least one memory state");
  if (initial >= memory_size) throw std::out_of_range("initial memory state out of range");
  for (StateId m = 0; m < memory_size; ++m)
    std::fill_n(update_.begin() + static_cast<std::ptrdiff_t>(m * alphabet_.size()),
                alphabet_.size(), m);
}

void FiniteMemoryStrategy::set_update(StateId m, Letter a, StateId next) {
  if (m >= memory_size_ || next >= memory_size_) throw std::out_of_range("memory state out of range");
  if (!alphabet_.contains(a)) throw std::out_of_range("letter out of range");
  update_[m * alphabet_.size() + a] = next;
}

void FiniteMemoryStrategy::set_allowed(StateId m, Letter a, bool allowed) {
  if (m >= memory_size_) throw std::out_of_range("memory state out of range");
  if (!alphabet_.contains(a)) throw std::out_of_range("letter out of range");
  allowed_[m * alphabet_.size() + a] = allowed;
}

std::vector<Letter> FiniteMemoryStrategy::allowed_moves(StateId m) const {
  std::vector<Letter> out;
  for (Letter a = 0; a < alphabet_.size(); ++a)
    if (allows(m, a)) out.push_back(a);
  return out;
}

StateId FiniteMemoryStrategy::state_after(std::span<const Letter> word) const {
  StateId m = initial_;
  for (const Letter a : word) m = update(m, a);
  return m;
}

// ---------------------------------------------------------------------------
// ProductStrategyVector

ProductStrategyVector::ProductStrategyVector(MoveAlphabet alphabet, std::size_t memory_size,
                                             StateId initial)
    : alphabet_(std::move(alphabet)),
      memory_size_(memory_size),
      initial_(initial),
      update_(memory_size * alphabet_.size()) {
  if (memory_size == 0) throw std::invalid_argument("strategy needs at least one memory state");
  if (initial >= memory_size) throw std::out_of_range("initial memory state out of range");
  for (StateId m = 0; m < memory_size; ++m)
    std::fill_n(update_.begin() + static_cast<std::ptrdiff_t>(m * alphabet_.size()),
                alphabet_.size(), m);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < alphabet_.players(); ++i) {
    player_offset_.push_back(offset);
    offset += alphabet_.action_count(i);
  }
  player_offset_.push_back(offset);
  allowed_actions_.assign(memory_size * offset, false);
}

std::size_t ProductStrategyVector::action_slot(StateId m, std::size_t player,
                                               std::size_t action) const {
  return m * player_offset_.back() + player_offset_[player] + action;
}

void ProductStrategyVector::set_update(StateId m, Letter a, StateId next) {
  if (m >= memory_size_ || next >= memory_size_) throw std::out_of_range("memory state out of range");
  if (!alphabet_.contains(a)) throw std::out_of_range("letter out of range");
  update_[m * alphabet_.size() + a] = next;
}

bool ProductStrategyVector::allows_action(StateId m, std::size_t player, std::size_t action) const {
  return allowed_actions_[action_slot(m, player, action)];
}

void ProductStrategyVector::set_allowed_action(StateId m, std::size_t player, std::size_t action,
                                               bool allowed) {
  if (m >= memory_size_) throw std::out_of_range("memory state out of range");
  if (player >= alphabet_.players() || action >= alphabet_.action_count(player))
    throw std::out_of_range("action out of range");
  allowed_actions_[action_slot(m, player, action)] = allowed;
}

void ProductStrategyVector::make_unpredictable(std::size_t player) {
  for (StateId m = 0; m < memory_size_; ++m)
    for (std::size_t x = 0; x < alphabet_.action_count(player); ++x)
      set_allowed_action(m, player, x, true);
}

std::vector<std::size_t> ProductStrategyVector::allowed_actions(StateId m,
                                                                std::size_t player) const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < alphabet_.action_count(player); ++x)
    if (allows_action(m, player, x)) out.push_back(x);
  return out;
}

bool ProductStrategyVector::allows(StateId m, Letter a) const {
  for (std::size_t i = 0; i < alphabet_.players(); ++i)
    if (!allows_action(m, i, alphabet_.action(a, i))) return false;
  return true;
}

std::vector<Letter> ProductStrategyVector::allowed_moves(StateId m) const {
  std::vector<Letter> out;
  for (Letter a = 0; a < alphabet_.size(); ++a)
    if (allows(m, a)) out.push_back(a);
  return out;
}

StateId ProductStrategyVector::state_after(std::span<const Letter> word) const {
  StateId m = initial_;
  for (const Letter a : word) m = update(m, a);
  return m;
}

FiniteMemoryStrategy ProductStrategyVector::to_general() const {
  FiniteMemoryStrategy out(alphabet_, memory_size_, initial_);
  for (StateId m = 0; m < memory_size_; ++m)
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      out.set_update(m, a, update(m, a));
      out.set_allowed(m, a, allows(m, a));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

SafetyAutomaton gamma(const FiniteMemoryStrategy& strategy) {
  DetAutomaton raw(strategy.alphabet(), strategy.memory_size(), strategy.initial());
  for (StateId m = 0; m < strategy.memory_size(); ++m)
    for (const Letter a : strategy.allowed_moves(m)) raw.set_successor(m, a, strategy.update(m, a));
  return trim(raw);
}

SafetyAutomaton gamma(const ProductStrategyVector& strategy) {
  return gamma(strategy.to_general());
}

FiniteMemoryStrategy minimal_strategy(const BuchiAutomaton& language) {
  const DetAutomaton& s = language.structure();
  const std::vector<bool> alive = alive_states(language);
  std::vector<StateId> memory_of(s.state_count(), kNoState);
  std::size_t count = 0;
  for (StateId q = 0; q < s.state_count(); ++q)
    if (alive[q]) memory_of[q] = static_cast<StateId>(count++);
  const auto sink = static_cast<StateId>(count);
  const StateId initial =
      s.has_no_states() || !alive[s.initial()] ? sink : memory_of[s.initial()];

  FiniteMemoryStrategy out(language.alphabet(), count + 1, initial);
  for (StateId q = 0; q < s.state_count(); ++q) {
    if (!alive[q]) continue;
    for (Letter a = 0; a < s.alphabet().size(); ++a) {
      const StateId r = s.successor(q, a);
      const bool keeps_alive = r != kNoState && alive[r];
      out.set_update(memory_of[q], a, keeps_alive ? memory_of[r] : sink);
      out.set_allowed(memory_of[q], a, keeps_alive);
    }
  }
  return out;
}

std::vector<Letter> moves_after(const FiniteMemoryStrategy& strategy,
                                std::span<const Letter> word) {
  return strategy.allowed_moves(strategy.state_after(word));
}

std::vector<Letter> moves_after(const ProductStrategyVector& strategy,
                                std::span<const Letter> word) {
  return strategy.allowed_moves(strategy.state_after(word));
}

std::vector<Letter> moves_after(const ProgrammaticStrategy& strategy,
                                std::span<const Letter> word) {
  std::vector<Letter> out = strategy.moves(word);
  for (const Letter a : out)
    if (!strategy.alphabet.contains(a)) throw std::out_of_range("strategy returned a foreign letter");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool strategy_leq(const FiniteMemoryStrategy& s, const FiniteMemoryStrategy& t) {
  if (!(s.alphabet() == t.alphabet())) throw std::invalid_argument("alphabet mismatch");
  const std::size_t k = s.alphabet().size();
  const std::size_t nt = t.memory_size();
  std::vector<bool> seen(s.memory_size() * nt, false);
  std::deque<std::pair<StateId, StateId>> queue{{s.initial(), t.initial()}};
  seen[std::size_t{s.initial()} * nt + t.initial()] = true;
  while (!queue.empty()) {
    const auto [p, q] = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < k; ++a) {
      if (s.allows(p, a) && !t.allows(q, a)) return false;
      const StateId p2 = s.update(p, a), q2 = t.update(q, a);
      if (!seen[std::size_t{p2} * nt + q2]) {
        seen[std::size_t{p2} * nt + q2] = true;
        queue.emplace_back(p2, q2);
      }
    }
  }
  return true;
}

Rectangularity is_rectangular(const FiniteMemoryStrategy& strategy) {
  const MoveAlphabet& alphabet = strategy.alphabet();
  std::vector<bool> seen(strategy.memory_size(), false);
  std::deque<StateId> queue{strategy.initial()};
  seen[strategy.initial()] = true;
  while (!queue.empty()) {
    const StateId m = queue.front();
    queue.pop_front();
    // Per-player projections of the permitted set.
    std::vector<std::vector<bool>> projection(alphabet.players());
    for (std::size_t i = 0; i < alphabet.players(); ++i)
      projection[i].assign(alphabet.action_count(i), false);
    for (const Letter a : strategy.allowed_moves(m))
      for (std::size_t i = 0; i < alphabet.players(); ++i) projection[i][alphabet.action(a, i)] = true;
    for (Letter a = 0; a < alphabet.size(); ++a) {
      bool in_product = true;
      for (std::size_t i = 0; i < alphabet.players() && in_product; ++i)
        in_product = projection[i][alphabet.action(a, i)];
      if (in_product != strategy.allows(m, a)) return Rectangularity{false, m};
    }
    for (Letter a = 0; a < alphabet.size(); ++a) {
      const StateId next = strategy.update(m, a);
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return {};
}

namespace {

void check_enumeration_limit(std::size_t alphabet_size, std::size_t k, std::size_t limit) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > limit / alphabet_size) {
      throw std::length_error("prefix enumeration of depth " + std::to_string(k) +
                              " exceeds the limit of " + std::to_string(limit) + " words");
    }
    total *= alphabet_size;
  }
}

}  // namespace

std::vector<Word> enumerate_prefixes(const FiniteMemoryStrategy& strategy, std::size_t k,
                                     std::size_t limit) {
  check_enumeration_limit(strategy.alphabet().size(), k, limit);
  return words_of_length(gamma(strategy), k);
}

std::vector<Word> enumerate_prefixes(const ProductStrategyVector& strategy, std::size_t k,
                                     std::size_t limit) {
  return enumerate_prefixes(strategy.to_general(), k, limit);
}

std::vector<Word> enumerate_prefixes(const ProgrammaticStrategy& strategy, std::size_t k,
                                     std::size_t limit) {
  check_enumeration_limit(strategy.alphabet.size(), k, limit);
  std::vector<Word> frontier{Word{}};
  for (std::size_t depth = 0; depth < k; ++depth) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (const Letter a : moves_after(strategy, w)) {
        Word extended = w;
        extended.push_back(a);
        next.push_back(std::move(extended));
      }
    frontier = std::move(next);
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

}  // namespace stratlang
