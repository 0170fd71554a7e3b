#include "stratlang/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "graph_search.hpp"

namespace stratlang {

using detail::Edge;
using detail::ExplicitGraph;

// ---------------------------------------------------------------------------
// DetAutomaton

DetAutomaton::DetAutomaton(MoveAlphabet alphabet, std::size_t states, StateId initial)
    : alphabet_(std::move(alphabet)),
      states_(states),
      initial_(states == 0 ? kNoState : initial),
      delta_(states * alphabet_.size(), kNoState) {
  if (states > 0 && initial >= states) throw std::out_of_range("initial state out of range");
}

DetAutomaton DetAutomaton::empty(MoveAlphabet alphabet) {
  return DetAutomaton(std::move(alphabet), 0, kNoState);
}

void DetAutomaton::set_successor(StateId q, Letter a, StateId target) {
  if (q >= states_ || target >= states_) throw std::out_of_range("state out of range");
  if (!alphabet_.contains(a)) throw std::out_of_range("letter out of range");
  delta_[index(q, a)] = target;
}

bool DetAutomaton::has_successor(StateId q) const {
  for (Letter a = 0; a < alphabet_.size(); ++a)
    if (successor(q, a) != kNoState) return true;
  return false;
}

DetAutomaton DetAutomaton::rerooted(StateId initial) const {
  if (initial >= states_) throw std::out_of_range("initial state out of range");
  DetAutomaton copy = *this;
  copy.initial_ = initial;
  return copy;
}

StateId DetAutomaton::run(StateId from, std::span<const Letter> word) const {
  StateId q = from;
  for (const Letter a : word) {
    if (q == kNoState) return kNoState;
    q = successor(q, a);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Dfa / BuchiAutomaton / SafetyAutomaton

Dfa::Dfa(DetAutomaton structure, std::vector<bool> accepting)
    : structure_(std::move(structure)), accepting_(std::move(accepting)) {
  if (accepting_.size() != structure_.state_count())
    throw std::invalid_argument("acceptance vector size mismatch");
}

Dfa Dfa::empty(MoveAlphabet alphabet) { return Dfa(DetAutomaton::empty(std::move(alphabet)), {}); }

bool Dfa::accepts(std::span<const Letter> word) const {
  if (structure_.has_no_states()) return false;
  const StateId q = structure_.run(structure_.initial(), word);
  return q != kNoState && accepting_[q];
}

BuchiAutomaton::BuchiAutomaton(DetAutomaton structure, std::vector<bool> accepting)
    : structure_(std::move(structure)), accepting_(std::move(accepting)) {
  if (accepting_.size() != structure_.state_count())
    throw std::invalid_argument("acceptance vector size mismatch");
}

BuchiAutomaton BuchiAutomaton::empty(MoveAlphabet alphabet) {
  return BuchiAutomaton(DetAutomaton::empty(std::move(alphabet)), {});
}

BuchiAutomaton BuchiAutomaton::universal(MoveAlphabet alphabet) {
  DetAutomaton s(std::move(alphabet), 1, 0);
  for (Letter a = 0; a < s.alphabet().size(); ++a) s.set_successor(0, a, 0);
  return BuchiAutomaton(std::move(s), {true});
}

bool BuchiAutomaton::all_accepting() const {
  return std::all_of(accepting_.begin(), accepting_.end(), [](bool b) { return b; });
}

namespace {

// Runs the lasso; returns whether the run is infinite and, if so, whether an
// accepting state recurs.
bool run_lasso(const DetAutomaton& s, const std::vector<bool>* accepting, const LassoWord& word) {
  if (s.has_no_states()) return false;
  StateId q = s.run(s.initial(), word.stem);
  if (q == kNoState) return false;
  std::vector<int> first_block(s.state_count(), -1);
  std::vector<bool> block_accepting;
  while (first_block[q] == -1) {
    first_block[q] = static_cast<int>(block_accepting.size());
    bool seen = false;
    for (const Letter a : word.cycle) {
      q = s.successor(q, a);
      if (q == kNoState) return false;
      seen = seen || accepting == nullptr || (*accepting)[q];
    }
    block_accepting.push_back(seen);
  }
  return std::any_of(block_accepting.begin() + first_block[q], block_accepting.end(),
                     [](bool b) { return b; });
}

ExplicitGraph reachable_graph(const DetAutomaton& s, std::vector<StateId>& node_to_state) {
  ExplicitGraph g;
  node_to_state.clear();
  if (s.has_no_states()) return g;
  std::vector<std::int64_t> node_of(s.state_count(), -1);
  std::deque<StateId> queue{s.initial()};
  node_of[s.initial()] = 0;
  node_to_state.push_back(s.initial());
  g.out.emplace_back();
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    const auto v = static_cast<std::uint32_t>(node_of[q]);
    for (Letter a = 0; a < s.alphabet().size(); ++a) {
      const StateId r = s.successor(q, a);
      if (r == kNoState) continue;
      if (node_of[r] == -1) {
        node_of[r] = static_cast<std::int64_t>(node_to_state.size());
        node_to_state.push_back(r);
        g.out.emplace_back();
        queue.push_back(r);
      }
      g.out[v].push_back(Edge{a, static_cast<std::uint32_t>(node_of[r])});
    }
  }
  return g;
}

// Builds a new structure from the states in `keep`, in BFS order from the
// initial state, following only transitions between kept states.
DetAutomaton restrict_to(const DetAutomaton& s, const std::vector<bool>& keep,
                         std::vector<StateId>* old_of_new = nullptr) {
  if (s.has_no_states() || !keep[s.initial()]) {
    if (old_of_new) old_of_new->clear();
    return DetAutomaton::empty(s.alphabet());
  }
  std::vector<StateId> new_of(s.state_count(), kNoState);
  std::vector<StateId> order{s.initial()};
  new_of[s.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter a = 0; a < s.alphabet().size(); ++a) {
      const StateId r = s.successor(order[i], a);
      if (r == kNoState || !keep[r] || new_of[r] != kNoState) continue;
      new_of[r] = static_cast<StateId>(order.size());
      order.push_back(r);
    }
  }
  DetAutomaton out(s.alphabet(), order.size(), 0);
  for (StateId i = 0; i < order.size(); ++i)
    for (Letter a = 0; a < s.alphabet().size(); ++a) {
      const StateId r = s.successor(order[i], a);
      if (r != kNoState && keep[r]) out.set_successor(i, a, new_of[r]);
    }
  if (old_of_new) *old_of_new = std::move(order);
  return out;
}

ExplicitGraph full_graph(const DetAutomaton& s) {
  ExplicitGraph g;
  g.out.resize(s.state_count());
  for (StateId q = 0; q < s.state_count(); ++q)
    for (Letter a = 0; a < s.alphabet().size(); ++a)
      if (const StateId r = s.successor(q, a); r != kNoState) g.out[q].push_back(Edge{a, r});
  return g;
}

}  // namespace

bool BuchiAutomaton::accepts(const LassoWord& word) const {
  return run_lasso(structure_, &accepting_, word);
}

SafetyAutomaton SafetyAutomaton::empty(MoveAlphabet alphabet) {
  return trim(DetAutomaton::empty(std::move(alphabet)));
}

SafetyAutomaton SafetyAutomaton::universal(MoveAlphabet alphabet) {
  return trim(BuchiAutomaton::universal(std::move(alphabet)).structure());
}

bool SafetyAutomaton::accepts(const LassoWord& word) const {
  return run_lasso(structure_, nullptr, word);
}

BuchiAutomaton SafetyAutomaton::as_buchi() const {
  return BuchiAutomaton(structure_, std::vector<bool>(structure_.state_count(), true));
}

// ---------------------------------------------------------------------------
// Language operations

SafetyAutomaton trim(const DetAutomaton& raw) {
  const std::size_t n = raw.state_count();
  std::vector<bool> keep(n, true);
  // Peel off states whose every successor is gone.
  std::vector<std::vector<StateId>> preds(n);
  std::vector<std::size_t> live_out(n, 0);
  for (StateId q = 0; q < n; ++q)
    for (Letter a = 0; a < raw.alphabet().size(); ++a)
      if (const StateId r = raw.successor(q, a); r != kNoState) {
        preds[r].push_back(q);
        ++live_out[q];
      }
  std::vector<StateId> dead;
  for (StateId q = 0; q < n; ++q)
    if (live_out[q] == 0) dead.push_back(q);
  while (!dead.empty()) {
    const StateId q = dead.back();
    dead.pop_back();
    if (!keep[q]) continue;
    keep[q] = false;
    for (const StateId p : preds[q])
      if (keep[p] && --live_out[p] == 0) dead.push_back(p);
  }
  return SafetyAutomaton(restrict_to(raw, keep));
}

std::vector<bool> alive_states(const BuchiAutomaton& language) {
  const DetAutomaton& s = language.structure();
  const std::size_t n = s.state_count();
  const ExplicitGraph g = full_graph(s);
  const auto comps = detail::strongly_connected(g, std::vector<bool>(n, true));
  std::vector<bool> good_component(comps.nontrivial.size(), false);
  for (StateId q = 0; q < n; ++q) {
    const auto c = static_cast<std::size_t>(comps.id[q]);
    if (language.accepting()[q] && comps.nontrivial[c]) good_component[c] = true;
  }
  std::vector<std::vector<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q)
    for (const auto& e : g.out[q]) preds[e.target].push_back(q);
  std::vector<bool> alive(n, false);
  std::vector<StateId> stack;
  for (StateId q = 0; q < n; ++q)
    if (good_component[static_cast<std::size_t>(comps.id[q])]) {
      alive[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (const StateId p : preds[q])
      if (!alive[p]) {
        alive[p] = true;
        stack.push_back(p);
      }
  }
  return alive;
}

Dfa pref_automaton(const BuchiAutomaton& language) {
  DetAutomaton restricted = restrict_to(language.structure(), alive_states(language));
  const std::size_t n = restricted.state_count();
  return Dfa(std::move(restricted), std::vector<bool>(n, true));
}

BuchiAutomaton left_quotient(const BuchiAutomaton& language, std::span<const Letter> word) {
  const DetAutomaton& s = language.structure();
  if (s.has_no_states()) return language;
  const StateId q = s.run(s.initial(), word);
  if (q == kNoState) return BuchiAutomaton::empty(language.alphabet());
  return BuchiAutomaton(s.rerooted(q), language.accepting());
}

BuchiAutomaton arrow(const Dfa& prefixes) {
  const DetAutomaton& s = prefixes.structure();
  if (s.has_no_states()) return BuchiAutomaton::empty(prefixes.alphabet());
  const std::size_t n = s.state_count();
  const auto sink = static_cast<StateId>(n);
  DetAutomaton complete(s.alphabet(), n + 1, s.initial());
  for (StateId q = 0; q <= n; ++q)
    for (Letter a = 0; a < s.alphabet().size(); ++a) {
      const StateId r = q < n ? s.successor(q, a) : kNoState;
      complete.set_successor(q, a, r == kNoState ? sink : r);
    }
  std::vector<bool> accepting = prefixes.accepting();
  accepting.push_back(false);
  return BuchiAutomaton(std::move(complete), std::move(accepting));
}

SafetyAutomaton safety_closure(const BuchiAutomaton& language) {
  return trim(restrict_to(language.structure(), alive_states(language)));
}

Containment contains(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw std::invalid_argument("alphabet mismatch");
  const DetAutomaton& sa = a.structure();
  const DetAutomaton& sb = b.structure();
  if (sa.has_no_states()) return {};

  // Product of A with B completed by a rejecting sink.
  const std::size_t nb = sb.state_count() + 1;
  const auto sink = static_cast<StateId>(sb.state_count());
  const StateId b0 = sb.has_no_states() ? sink : sb.initial();
  const auto key = [nb](StateId p, StateId q) { return std::size_t{p} * nb + q; };

  std::vector<std::int64_t> node_of(sa.state_count() * nb, -1);
  std::vector<std::pair<StateId, StateId>> pairs{{sa.initial(), b0}};
  node_of[key(sa.initial(), b0)] = 0;
  ExplicitGraph g;
  g.out.emplace_back();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (Letter x = 0; x < sa.alphabet().size(); ++x) {
      const StateId p2 = sa.successor(p, x);
      if (p2 == kNoState) continue;
      StateId q2 = q == sink ? sink : sb.successor(q, x);
      if (q2 == kNoState) q2 = sink;
      auto& slot = node_of[key(p2, q2)];
      if (slot == -1) {
        slot = static_cast<std::int64_t>(pairs.size());
        pairs.emplace_back(p2, q2);
        g.out.emplace_back();
      }
      g.out[i].push_back(Edge{x, static_cast<std::uint32_t>(slot)});
    }
  }
  std::vector<bool> b_rejecting(pairs.size()), a_accepting(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    a_accepting[i] = a.accepting()[p];
    b_rejecting[i] = q == sink || !b.accepting()[q];
  }
  auto witness = detail::find_accepting_lasso(g, b_rejecting, a_accepting);
  if (!witness) return {};
  return Containment{false, std::move(witness)};
}

Containment contains(const SafetyAutomaton& a, const SafetyAutomaton& b) {
  return contains(a.as_buchi(), b.as_buchi());
}
Containment contains(const SafetyAutomaton& a, const BuchiAutomaton& b) {
  return contains(a.as_buchi(), b);
}
Containment contains(const BuchiAutomaton& a, const SafetyAutomaton& b) {
  return contains(a, b.as_buchi());
}

namespace {

// Synchronous product over pairs reachable from the initial pair; transitions
// exist where both operands have one.
DetAutomaton product_structure(const DetAutomaton& sa, const DetAutomaton& sb,
                               std::vector<std::pair<StateId, StateId>>& pairs) {
  pairs.clear();
  if (!(sa.alphabet() == sb.alphabet())) throw std::invalid_argument("alphabet mismatch");
  if (sa.has_no_states() || sb.has_no_states()) return DetAutomaton::empty(sa.alphabet());
  const std::size_t nb = sb.state_count();
  std::vector<StateId> node_of(sa.state_count() * nb, kNoState);
  pairs.emplace_back(sa.initial(), sb.initial());
  node_of[std::size_t{sa.initial()} * nb + sb.initial()] = 0;
  std::vector<std::tuple<StateId, Letter, StateId>> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (Letter x = 0; x < sa.alphabet().size(); ++x) {
      const StateId p2 = sa.successor(p, x), q2 = sb.successor(q, x);
      if (p2 == kNoState || q2 == kNoState) continue;
      auto& slot = node_of[std::size_t{p2} * nb + q2];
      if (slot == kNoState) {
        slot = static_cast<StateId>(pairs.size());
        pairs.emplace_back(p2, q2);
      }
      edges.emplace_back(static_cast<StateId>(i), x, slot);
    }
  }
  DetAutomaton out(sa.alphabet(), pairs.size(), 0);
  for (const auto& [from, x, to] : edges) out.set_successor(from, x, to);
  return out;
}

}  // namespace

SafetyAutomaton intersect(const SafetyAutomaton& a, const SafetyAutomaton& b) {
  std::vector<std::pair<StateId, StateId>> pairs;
  return trim(product_structure(a.structure(), b.structure(), pairs));
}

BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  const bool a_trivial = a.all_accepting();
  const bool b_trivial = b.all_accepting();
  if (!a_trivial && !b_trivial)
    throw std::invalid_argument(
        "intersect: both operands have nontrivial Buchi acceptance sets; "
        "generalized Buchi products are not supported");
  std::vector<std::pair<StateId, StateId>> pairs;
  DetAutomaton s = product_structure(a.structure(), b.structure(), pairs);
  std::vector<bool> accepting(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    accepting[i] = a.accepting()[pairs[i].first] && b.accepting()[pairs[i].second];
  return BuchiAutomaton(std::move(s), std::move(accepting));
}

std::optional<LassoWord> find_member(const BuchiAutomaton& language) {
  std::vector<StateId> state_of;
  const ExplicitGraph g = reachable_graph(language.structure(), state_of);
  std::vector<bool> accepting(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) accepting[i] = language.accepting()[state_of[i]];
  return detail::find_accepting_lasso(g, std::vector<bool>(g.size(), true), accepting);
}

std::optional<LassoWord> find_member(const SafetyAutomaton& language) {
  return find_member(language.as_buchi());
}

StrategicalVerdict check_strategical(const BuchiAutomaton& language) {
  auto c = contains(safety_closure(language), language);
  return StrategicalVerdict{c.holds, std::move(c.counterexample)};
}

bool is_strategical_by_closure(const BuchiAutomaton& language) {
  return contains(safety_closure(language), language).holds;
}

bool is_strategical_by_arrow(const BuchiAutomaton& language) {
  return equivalent(arrow(pref_automaton(language)), language);
}

bool is_strategical(const BuchiAutomaton& language) {
  const bool by_closure = is_strategical_by_closure(language);
  if (by_closure != is_strategical_by_arrow(language))
    throw std::logic_error("strategical test: closure and prefix routes disagree");
  return by_closure;
}

std::vector<Word> words_of_length(const SafetyAutomaton& language, std::size_t k) {
  std::vector<Word> out;
  if (language.is_empty()) return out;
  const DetAutomaton& s = language.structure();
  Word current;
  std::vector<StateId> states{s.initial()};
  // Depth-first in lexicographic order.
  std::vector<Letter> next_letter{0};
  while (!states.empty()) {
    if (current.size() == k) {
      out.push_back(current);
      states.pop_back();
      next_letter.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    Letter& a = next_letter.back();
    const StateId q = states.back();
    while (a < s.alphabet().size() && s.successor(q, a) == kNoState) ++a;
    if (a == s.alphabet().size()) {
      states.pop_back();
      next_letter.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const Letter chosen = a++;
    current.push_back(chosen);
    states.push_back(s.successor(q, chosen));
    next_letter.push_back(0);
  }
  return out;
}

std::vector<LassoWord> enumerate_lassos(const SafetyAutomaton& language, std::size_t bound) {
  if (language.is_empty() || bound == 0) return {};
  const DetAutomaton& s = language.structure();
  const auto shorter = [](const LassoWord& x, const LassoWord& y) {
    const std::size_t lx = x.stem.size() + x.cycle.size(), ly = y.stem.size() + y.cycle.size();
    if (lx != ly) return lx < ly;
    return x < y;
  };
  std::set<LassoWord, decltype(shorter)> found(shorter);

  Word letters;
  std::vector<StateId> path{s.initial()};
  std::vector<bool> seen(s.state_count());
  const auto emit = [&] {
    // Cycles closing at the last state: scan back while the cycle stays simple.
    std::fill(seen.begin(), seen.end(), false);
    const StateId end = path.back();
    for (std::size_t l = letters.size(); l-- > 0;) {
      if (seen[path[l]]) break;
      seen[path[l]] = true;
      if (path[l] == end) {
        found.insert(normalize_lasso(
            LassoWord{Word(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(l)),
                      Word(letters.begin() + static_cast<std::ptrdiff_t>(l), letters.end())}));
        break;
      }
    }
  };
  const auto descend = [&](auto&& self) -> void {
    if (!letters.empty()) emit();
    if (letters.size() == bound) return;
    const StateId q = path.back();
    for (Letter a = 0; a < s.alphabet().size(); ++a) {
      const StateId r = s.successor(q, a);
      if (r == kNoState) continue;
      letters.push_back(a);
      path.push_back(r);
      self(self);
      letters.pop_back();
      path.pop_back();
    }
  };
  descend(descend);
  return {found.begin(), found.end()};
}

}  // namespace stratlang
