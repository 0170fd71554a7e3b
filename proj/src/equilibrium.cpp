#include "stratlang/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace stratlang {

ProductStrategyVector only_player_follows(const ProductStrategyVector& sigma, std::size_t player) {
  if (player >= sigma.players()) throw std::out_of_range("player out of range");
  ProductStrategyVector mu = sigma;
  for (std::size_t j = 0; j < sigma.players(); ++j)
    if (j != player) mu.make_unpredictable(j);
  return mu;
}

ProductStrategyVector all_but_player_follow(const ProductStrategyVector& sigma, std::size_t player) {
  if (player >= sigma.players()) throw std::out_of_range("player out of range");
  ProductStrategyVector nu = sigma;
  nu.make_unpredictable(player);
  return nu;
}

EquilibriumFamily equilibrium_family(const ProductStrategyVector& sigma) {
  const std::size_t n = sigma.players();
  if (n < 2)
    throw std::invalid_argument(
        "equilibrium languages need at least two players: Y_i intersects the other players' "
        "languages, which is undefined for a single player");
  EquilibriumFamily family{gamma(sigma), {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    family.followers.push_back(gamma(only_player_follows(sigma, i)));
    family.opponents.push_back(gamma(all_but_player_follow(sigma, i)));
  }

  SafetyAutomaton all = family.followers[0];
  for (std::size_t i = 1; i < n; ++i) all = intersect(all, family.followers[i]);
  if (!equivalent(all, family.joint))
    throw std::logic_error("equilibrium family: X differs from the intersection of the X_i");
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<SafetyAutomaton> others;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      others = others ? intersect(*others, family.followers[j]) : family.followers[j];
    }
    if (!equivalent(*others, family.opponents[i]))
      throw std::logic_error("equilibrium family: Y_" + std::to_string(i + 1) +
                             " differs from the intersection of the other X_j");
  }
  return family;
}

std::vector<double> best_deviation_value(const SafetyAutomaton& arena, const Game& game,
                                         std::size_t player, const DiscountFactor& delta,
                                         double tolerance) {
  if (arena.is_empty()) throw std::invalid_argument("best deviation value of an empty language");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(arena.alphabet() == game.alphabet())) throw std::invalid_argument("alphabet mismatch");
  if (player >= game.players()) throw std::out_of_range("player out of range");

  const DetAutomaton& s = arena.structure();
  const double d = delta.value();
  const std::size_t n = s.state_count();
  // Contraction by d: a step of size e leaves at most e*d/(1-d) to the fixed point.
  const double stop = tolerance * (1.0 - d) / (2.0 * d);
  std::vector<double> values(n, 0.0), next(n);
  constexpr std::size_t kMaxIterations = 50'000'000;
  for (std::size_t iteration = 0; iteration < kMaxIterations; ++iteration) {
    double step = 0.0;
    for (StateId q = 0; q < n; ++q) {
      double best = -std::numeric_limits<double>::infinity();
      for (Letter a = 0; a < s.alphabet().size(); ++a) {
        const StateId r = s.successor(q, a);
        if (r == kNoState) continue;
        best = std::max(best, (1.0 - d) * game.utility_value(a, player) + d * values[r]);
      }
      next[q] = best;
      step = std::max(step, std::abs(best - values[q]));
    }
    values.swap(next);
    if (step <= stop) return values;
  }
  throw std::runtime_error("value iteration did not converge");
}

// ---------------------------------------------------------------------------
// DeviationAnalysis

DeviationAnalysis::DeviationAnalysis(SafetyAutomaton arena, const Game& game, std::size_t player,
                                     const DiscountFactor& delta, double tolerance)
    : arena_(std::move(arena)),
      game_(game),
      player_(player),
      delta_(delta.value()),
      tolerance_(tolerance),
      values_(best_deviation_value(arena_, game_, player, delta, tolerance)) {}

double DeviationAnalysis::lookahead(StateId q, Letter a) const {
  const StateId r = arena_.structure().successor(q, a);
  return (1.0 - delta_) * game_.utility_value(a, player_) + delta_ * values_[r];
}

Letter DeviationAnalysis::best_move(StateId q) const {
  const DetAutomaton& s = arena_.structure();
  std::optional<Letter> best;
  double best_value = 0.0;
  for (Letter a = 0; a < s.alphabet().size(); ++a) {
    if (s.successor(q, a) == kNoState) continue;
    const double v = lookahead(q, a);
    if (!best || v > best_value) {
      best = a;
      best_value = v;
    }
  }
  return *best;  // trim: every state has a successor
}

PositionCheck DeviationAnalysis::check_position(const LassoWord& match, std::size_t t) const {
  const DetAutomaton& s = arena_.structure();
  const StateId q = s.run(s.initial(), prefix(match, t));
  if (q == kNoState) throw std::invalid_argument("match leaves the arena");
  PositionCheck check;
  check.position = t;
  check.state = q;
  check.continuation = discounted_payoff_value(game_, delta_, suffix(match, t), player_);
  const MoveAlphabet& alphabet = s.alphabet();
  const Letter played = letter_at(match, t);
  const std::size_t own = alphabet.action(played, player_);
  for (std::size_t x = 0; x < alphabet.action_count(player_); ++x) {
    if (x == own) continue;
    const Letter beta = alphabet.with_action(played, player_, x);
    if (s.successor(q, beta) == kNoState) continue;
    const double v = lookahead(q, beta);
    if (!check.best_deviation || v > *check.best_deviation) {
      check.best_deviation = v;
      check.deviation = beta;
    }
  }
  return check;
}

GoodMatchVerdict DeviationAnalysis::check(const LassoWord& match) const {
  if (!arena_.accepts(match)) throw std::invalid_argument("match is not a member of the arena");
  const DetAutomaton& s = arena_.structure();
  const std::size_t phases = match.stem.size() + match.cycle.size();
  std::vector<bool> seen(phases * s.state_count(), false);

  GoodMatchVerdict verdict;
  StateId q = s.initial();
  for (std::size_t t = 0;; ++t) {
    const std::size_t key = lasso_phase(match, t) * s.state_count() + q;
    if (seen[key]) break;
    seen[key] = true;

    PositionCheck check = check_position(match, t);
    if (const auto m = check.margin()) {
      if (!verdict.margin || *m < *verdict.margin) {
        verdict.margin = m;
        verdict.worst_position = t;
        verdict.deviation = check.deviation;
      }
    }
    verdict.positions.push_back(std::move(check));
    q = s.successor(q, letter_at(match, t));
  }
  verdict.good = !verdict.margin || *verdict.margin >= -tolerance_;
  verdict.boundary = verdict.good && verdict.margin && std::abs(*verdict.margin) <= tolerance_;
  return verdict;
}

LassoWord DeviationAnalysis::deviation_witness(const LassoWord& match,
                                               const GoodMatchVerdict& verdict) const {
  if (!verdict.worst_position || !verdict.deviation)
    throw std::invalid_argument("verdict carries no deviation");
  const DetAutomaton& s = arena_.structure();
  Word stem = prefix(match, *verdict.worst_position);
  StateId q = s.run(s.initial(), stem);
  stem.push_back(*verdict.deviation);
  q = s.successor(q, *verdict.deviation);

  // Follow the greedy policy until a state repeats.
  std::map<StateId, std::size_t> first_visit;
  Word path;
  while (!first_visit.count(q)) {
    first_visit[q] = path.size();
    const Letter a = best_move(q);
    path.push_back(a);
    q = s.successor(q, a);
  }
  const auto loop_start = static_cast<std::ptrdiff_t>(first_visit[q]);
  stem.insert(stem.end(), path.begin(), path.begin() + loop_start);
  return normalize_lasso(LassoWord{std::move(stem), Word(path.begin() + loop_start, path.end())});
}

GoodMatchVerdict is_good_match(const LassoWord& match, const SafetyAutomaton& arena,
                               const Game& game, std::size_t player, const DiscountFactor& delta,
                               double tolerance) {
  return DeviationAnalysis(arena, game, player, delta, tolerance).check(match);
}

// ---------------------------------------------------------------------------
// Nash verification

NashVerdict is_nash(const ProductStrategyVector& sigma, const Game& game,
                    const DiscountFactor& delta, const NashOptions& options) {
  if (sigma.players() < 2)
    throw std::invalid_argument("Nash equilibria need at least two players");
  if (!(sigma.alphabet() == game.alphabet())) throw std::invalid_argument("alphabet mismatch");
  const EquilibriumFamily family = equilibrium_family(sigma);
  const std::size_t n = sigma.players();

  std::vector<DeviationAnalysis> analyses;
  analyses.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (family.opponents[i].is_empty()) {
      NashVerdict verdict;
      verdict.outcome = NashOutcome::not_equilibrium;
      verdict.reason = "Y_" + std::to_string(i + 1) + " is empty";
      return verdict;
    }
    analyses.emplace_back(family.opponents[i], game, i, delta, options.tolerance);
  }

  // Returns the per-player verdicts, stopping at the first failing player.
  const auto evaluate = [&](const LassoWord& h, NashVerdict& verdict) {
    verdict.player_verdicts.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!family.opponents[i].accepts(h)) {
        verdict.reason = "match is not in Y_" + std::to_string(i + 1);
        return false;
      }
      verdict.player_verdicts.push_back(analyses[i].check(h));
      if (!verdict.player_verdicts.back().good) {
        verdict.reason = "match is not good for player " + std::to_string(i + 1);
        return false;
      }
    }
    return true;
  };

  NashVerdict verdict;
  if (options.candidate) {
    const LassoWord h = normalize_lasso(*options.candidate);
    verdict.candidates_examined = 1;
    if (evaluate(h, verdict)) {
      verdict.outcome = NashOutcome::equilibrium;
      verdict.witness = h;
      verdict.reason = "candidate is good for every player";
    } else {
      verdict.outcome = NashOutcome::not_equilibrium;
    }
    return verdict;
  }

  for (const LassoWord& h : enumerate_lassos(family.joint, options.search_bound)) {
    ++verdict.candidates_examined;
    NashVerdict attempt;
    if (evaluate(h, attempt)) {
      attempt.outcome = NashOutcome::equilibrium;
      attempt.witness = h;
      attempt.candidates_examined = verdict.candidates_examined;
      attempt.reason = "witness is good for every player";
      return attempt;
    }
  }
  verdict.outcome = NashOutcome::inconclusive;
  verdict.reason = "no witness found among lassos of length up to " +
                   std::to_string(options.search_bound);
  return verdict;
}

// ---------------------------------------------------------------------------
// Threshold search

ThresholdReport find_thresholds(const std::function<bool(double)>& predicate,
                                const ThresholdOptions& options) {
  if (!(options.grid_step > 0.0 && options.grid_step < 1.0))
    throw std::invalid_argument("grid step must lie in (0, 1)");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  ThresholdReport report;
  for (std::size_t k = 1;; ++k) {
    const double delta = static_cast<double>(k) * options.grid_step;
    if (delta >= 1.0 - 1e-12) break;
    report.grid.emplace_back(delta, predicate(delta));
  }
  for (std::size_t k = 1; k < report.grid.size(); ++k) {
    auto [lo, lo_value] = report.grid[k - 1];
    auto [hi, hi_value] = report.grid[k];
    if (lo_value == hi_value) continue;
    while (hi - lo > options.tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (predicate(mid) == lo_value)
        lo = mid;
      else
        hi = mid;
    }
    report.crossings.push_back(ThresholdCrossing{lo, hi, hi_value});
  }
  return report;
}

ThresholdReport nash_threshold(const ProductStrategyVector& sigma, const Game& game,
                               const LassoWord& candidate, const ThresholdOptions& options) {
  const EquilibriumFamily family = equilibrium_family(sigma);
  std::vector<bool> member(sigma.players());
  for (std::size_t i = 0; i < sigma.players(); ++i)
    member[i] = family.opponents[i].accepts(candidate);
  const auto predicate = [&](double delta) {
    for (std::size_t i = 0; i < sigma.players(); ++i) {
      if (!member[i]) return false;
      const DeviationAnalysis analysis(family.opponents[i], game, i, DiscountFactor(delta),
                                       options.payoff_tolerance);
      if (!analysis.check(candidate).good) return false;
    }
    return true;
  };
  return find_thresholds(predicate, options);
}

ThresholdReport good_match_threshold(const SafetyAutomaton& arena, const Game& game,
                                     std::size_t player, const LassoWord& candidate,
                                     const ThresholdOptions& options) {
  if (!arena.accepts(candidate)) throw std::invalid_argument("match is not a member of the arena");
  const auto predicate = [&](double delta) {
    return DeviationAnalysis(arena, game, player, DiscountFactor(delta), options.payoff_tolerance)
        .check(candidate)
        .good;
  };
  return find_thresholds(predicate, options);
}

}  // namespace stratlang
