// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random.hpp"
#include "stratlang/equilibrium.hpp"

using namespace stratlang;

namespace {

constexpr double kPayoffTolerance = 1e-9;
constexpr double kThresholdTolerance = 1e-6;
constexpr std::size_t kBruteForceLength = 8;

const MoveAlphabet kPd({{"c", "d"}, {"c", "d"}});

struct Result {
  bool passed = true;
  std::string detail;
};

void fail(Result& r, const std::string& why) {
  if (r.passed) r.detail = why;
  r.passed = false;
}

LassoWord pd(const std::string& text) { return parse_lasso(text, kPd); }

Result grim_trigger_generation() {
  Result r;
  const SafetyAutomaton generated = gamma(fixture::general("grim_row"));
  if (!equivalent(generated, fixture::safety("grim_language"))) fail(r, "gamma differs from the fixture language");
  return r;
}

Result arrow_identities() {
  Result r;
  if (find_member(arrow(fixture::dfa("astarb")))) fail(r, "arrow(a*b) is not empty");
  if (!equivalent(arrow(fixture::dfa("ab_plus")), fixture::buchi("ab_omega"))) fail(r, "arrow((ab)+) != (ab)^w");
  if (!equivalent(arrow(fixture::dfa("ab_star_b")), fixture::buchi("astar_b_omega_loop")))
    fail(r, "arrow((a+b)*b) != (a*b)^w");
  return r;
}

Result gamma_regressions() {
  Result r;
  const FiniteMemoryStrategy sigma = fixture::general("stay_a_then_stop");
  const FiniteMemoryStrategy sigma_prime = fixture::general("stay_a_then_free");
  if (!equivalent(gamma(sigma), gamma(sigma_prime))) fail(r, "sigma and sigma' generate different languages");
  if (strategy_leq(sigma_prime, sigma)) fail(r, "sigma and sigma' are the same strategy");
  const auto verdict = check_strategical(fixture::buchi("eventually_b"));
  if (verdict.strategical) fail(r, "non-closed language accepted as strategical");
  if (is_strategical_by_arrow(fixture::buchi("eventually_b"))) fail(r, "arrow route accepts non-closed language");
  return r;
}

std::vector<BuchiAutomaton> random_corpus(std::size_t count) {
  gen::Rng rng(2024);
  std::vector<BuchiAutomaton> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(gen::buchi(rng, gen::letters(gen::uniform(rng, 1, 4)), 6));
  return out;
}

Result equivalence_bundle(const std::vector<BuchiAutomaton>& corpus) {
  Result r;
  std::size_t discrepancies = 0, strategical = 0;
  for (const auto& l : corpus) {
    const bool closed = check_strategical(l).strategical;
    const bool by_gamma = equivalent(gamma(minimal_strategy(l)), l);
    const bool by_arrow = equivalent(arrow(pref_automaton(l)), l);
    if (closed != by_gamma || closed != by_arrow) ++discrepancies;
    strategical += closed;
  }
  r.detail = std::to_string(corpus.size()) + " automata, " + std::to_string(strategical) + " strategical";
  if (discrepancies) fail(r, std::to_string(discrepancies) + " discrepancies");
  return r;
}

Result closure_agreement(const std::vector<BuchiAutomaton>& corpus) {
  Result r;
  std::size_t discrepancies = 0;
  for (const auto& l : corpus)
    if (!equivalent(gamma(minimal_strategy(l)), safety_closure(l))) ++discrepancies;
  r.detail = std::to_string(corpus.size()) + " automata";
  if (discrepancies) fail(r, std::to_string(discrepancies) + " discrepancies");
  if (!equivalent(safety_closure(fixture::buchi("a_star_b_omega")), fixture::buchi("a_omega_or_a_star_b_omega")))
    fail(r, "closure(a*b^w) != a^w + a*b^w");
  return r;
}

// Random strategies built by cloning memory states of the minimal strategy,
// rewiring updates, and occasionally flipping permissions. Only those whose
// language still equals `language` are kept.
FiniteMemoryStrategy mutate(gen::Rng& rng, const FiniteMemoryStrategy& base, std::size_t max_memory) {
  const std::size_t k = base.memory_size();
  const std::size_t m = gen::uniform(rng, k, std::max(k, max_memory));
  std::vector<StateId> original(m);
  for (StateId q = 0; q < m; ++q) original[q] = q < k ? q : static_cast<StateId>(gen::uniform(rng, 0, k - 1));
  const auto copy_of = [&](StateId target) {
    std::vector<StateId> options;
    for (StateId q = 0; q < m; ++q)
      if (original[q] == target) options.push_back(q);
    return options[gen::uniform(rng, 0, options.size() - 1)];
  };
  const MoveAlphabet& alphabet = base.alphabet();
  FiniteMemoryStrategy s(alphabet, m, base.initial());
  for (StateId q = 0; q < m; ++q)
    for (Letter a = 0; a < alphabet.size(); ++a) {
      bool allowed = base.allows(original[q], a);
      if (gen::coin(rng, 0.05)) allowed = !allowed;
      s.set_allowed(q, a, allowed);
      s.set_update(q, a, base.allows(original[q], a) ? copy_of(base.update(original[q], a))
                                                      : static_cast<StateId>(gen::uniform(rng, 0, m - 1)));
    }
  return s;
}

Result minimality() {
  Result r;
  const SafetyAutomaton language = fixture::safety("grim_language");
  const FiniteMemoryStrategy minimal = minimal_strategy(language.as_buchi());
  gen::Rng rng(4101);
  std::size_t kept = 0, attempts = 0, below = 0;
  while (kept < 200 && attempts < 20000) {
    ++attempts;
    const FiniteMemoryStrategy s = mutate(rng, minimal, 4);
    if (!equivalent(gamma(s), language)) continue;
    ++kept;
    below += strategy_leq(minimal, s);
  }
  r.detail = std::to_string(kept) + " strategies from " + std::to_string(attempts) + " candidates, " +
             std::to_string(below) + " dominate the minimal one";
  if (kept < 200) fail(r, "only " + std::to_string(kept) + " strategies generate the language");
  if (below != kept) fail(r, std::to_string(kept - below) + " strategies are not above the minimal one");
  return r;
}

Result payoff_formula() {
  Result r;
  const Game g = fixture::prisoners_dilemma();
  // worst: against the stated formula. shifted: the same formula checked on
  // the word with one more leading (d,d).
  double worst = 0.0, shifted = 0.0;
  for (std::size_t n = 0; n <= 5; ++n) {
    std::string text;
    for (std::size_t k = 0; k < n; ++k) text += "d,d ";
    const LassoWord h = pd(text + "d,c ( c,d )");
    for (const double d : {0.1, 0.2, 0.25, 0.5, 0.9}) {
      const double expected = 1.0 + std::pow(d, static_cast<double>(n + 1)) * (5.0 * d - 1.0);
      worst = std::max(worst, std::abs(discounted_payoff_value(g, d, h, 1) - expected));
      shifted = std::max(shifted, std::abs(discounted_payoff_value(g, d, pd("d,d " + text + "d,c ( c,d )"), 1) -
                                           expected));
    }
  }
  char buffer[160];
  std::snprintf(buffer, sizeof buffer,
                "max error %.3g against 1 + delta^(n+1)(5 delta - 1); %.3g when the word has n+1 leading (d,d)",
                worst, shifted);
  r.detail = buffer;
  if (!(worst <= kPayoffTolerance)) fail(r, buffer);
  return r;
}

Result good_match_verdicts() {
  Result r;
  const Game g = fixture::prisoners_dilemma();
  const SafetyAutomaton arena = fixture::safety("defect_until_cooperation");
  const LassoWord late = pd("d,c ( c,d )");
  const auto verdict = [&](const LassoWord& h, double d) {
    return is_good_match(h, arena, g, 1, DiscountFactor(d), kPayoffTolerance);
  };
  for (const double d : {0.21, 0.3})
    if (!verdict(late, d).good) fail(r, "(d,c)(c,d)^w should be good at " + std::to_string(d));
  for (const double d : {0.19, 0.1})
    if (verdict(late, d).good) fail(r, "(d,c)(c,d)^w should not be good at " + std::to_string(d));
  if (!verdict(pd("( d,d )"), 0.1).good) fail(r, "(d,d)^w should be good at 0.1");
  const GoodMatchVerdict edge = verdict(late, 0.2);
  if (!edge.good || !edge.boundary) fail(r, "delta 0.2 not reported as a boundary case");
  return r;
}

Result nash_threshold_check() {
  Result r;
  const ProductStrategyVector grim = fixture::vector("grim");
  const Game g = fixture::prisoners_dilemma();
  const LassoWord cooperate = pd("( c,c )");
  ThresholdOptions options;
  options.tolerance = kThresholdTolerance;
  const ThresholdReport report = nash_threshold(grim, g, cooperate, options);
  if (report.crossings.size() != 1) {
    fail(r, std::to_string(report.crossings.size()) + " crossings instead of one");
  } else {
    const double t = report.crossings.front().estimate();
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "threshold %.9f", t);
    r.detail = buffer;
    if (!(std::abs(t - 0.25) <= kThresholdTolerance)) fail(r, std::string(buffer) + " not within 1e-6 of 0.25");
    if (!report.crossings.front().good_above) fail(r, "equilibrium should hold above the threshold");
  }
  const SafetyAutomaton arena = equilibrium_family(grim).opponents[0];
  for (const double d : {0.3, 0.5, 0.9}) {
    const DeviationAnalysis analysis(arena, g, 0, DiscountFactor(d), kPayoffTolerance);
    for (std::size_t k = 0; k <= 2; ++k) {
      const auto margin = analysis.check_position(cooperate, k).margin();
      const double expected = std::pow(d, static_cast<double>(k)) * (4.0 * d - 1.0);
      std::string stem;
      for (std::size_t j = 0; j < k; ++j) stem += "c,c ";
      const double direct = discounted_payoff_value(g, d, cooperate, 0) -
                            discounted_payoff_value(g, d, pd(stem + "d,c ( d,d )"), 0);
      if (!margin || std::abs(std::pow(d, static_cast<double>(k)) * *margin - expected) > kPayoffTolerance ||
          std::abs(direct - expected) > kPayoffTolerance)
        fail(r, "deviation margin off at delta " + std::to_string(d) + ", k " + std::to_string(k));
    }
  }
  return r;
}

Result family_identities() {
  Result r;
  gen::Rng rng(1010);
  std::size_t discrepancies = 0;
  const std::size_t count = 150;
  for (std::size_t k = 0; k < count; ++k) {
    const ProductStrategyVector v = gen::product_vector(rng, kPd, 4);
    const SafetyAutomaton x = gamma(v);
    const SafetyAutomaton x1 = gamma(only_player_follows(v, 0)), x2 = gamma(only_player_follows(v, 1));
    const SafetyAutomaton y1 = gamma(all_but_player_follow(v, 0)), y2 = gamma(all_but_player_follow(v, 1));
    if (!equivalent(x, intersect(x1, x2))) ++discrepancies;
    if (!equivalent(y1, x2) || !equivalent(y2, x1)) ++discrepancies;
  }
  r.detail = std::to_string(count) + " vectors";
  if (discrepancies) fail(r, std::to_string(discrepancies) + " discrepancies");
  return r;
}

// Every Buchi automaton with at most `max_states` states over two letters, up
// to renaming: all states reachable and numbered in breadth-first order.
std::vector<BuchiAutomaton> canonical_automata(const MoveAlphabet& alphabet, std::size_t max_states) {
  std::vector<BuchiAutomaton> out;
  const std::size_t letters = alphabet.size();
  for (std::size_t n = 1; n <= max_states; ++n) {
    std::vector<std::size_t> choice(n * letters, 0);  // n means "no transition"
    while (true) {
      std::vector<StateId> order{0};
      std::vector<bool> seen(n, false);
      seen[0] = true;
      bool canonical = true;
      for (std::size_t i = 0; i < order.size() && canonical; ++i)
        for (std::size_t a = 0; a < letters; ++a) {
          const std::size_t t = choice[order[i] * letters + a];
          if (t == n || seen[t]) continue;
          if (t != order.size()) {
            canonical = false;
            break;
          }
          seen[t] = true;
          order.push_back(static_cast<StateId>(t));
        }
      if (canonical && order.size() == n) {
        DetAutomaton d(alphabet, n, 0);
        for (StateId q = 0; q < n; ++q)
          for (Letter a = 0; a < letters; ++a)
            if (choice[q * letters + a] != n) d.set_successor(q, a, static_cast<StateId>(choice[q * letters + a]));
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          std::vector<bool> accepting(n);
          for (std::size_t q = 0; q < n; ++q) accepting[q] = (mask >> q) & 1;
          out.emplace_back(d, accepting);
        }
      }
      std::size_t pos = 0;
      while (pos < choice.size() && choice[pos] == n) choice[pos++] = 0;
      if (pos == choice.size()) break;
      ++choice[pos];
    }
  }
  return out;
}

Result oracle_equivalence() {
  Result r;
  const MoveAlphabet ab = MoveAlphabet::single_player({"a", "b"});
  const std::vector<BuchiAutomaton> automata = canonical_automata(ab, 3);
  const std::vector<LassoWord> lassos = oracle::all_lassos(2, kBruteForceLength);
  const std::size_t words = (lassos.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> member(automata.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < automata.size(); ++i)
    for (std::size_t w = 0; w < lassos.size(); ++w)
      if (oracle::accepts(automata[i], lassos[w])) member[i][w / 64] |= std::uint64_t{1} << (w % 64);

  std::size_t pairs = 0, discrepancies = 0, beyond_bound = 0;
  for (std::size_t i = 0; i < automata.size(); ++i)
    for (std::size_t j = 0; j < automata.size(); ++j) {
      ++pairs;
      bool brute_holds = true;
      for (std::size_t w = 0; w < words && brute_holds; ++w) brute_holds = (member[i][w] & ~member[j][w]) == 0;
      const Containment c = contains(automata[i], automata[j]);
      if (c.holds) {
        discrepancies += !brute_holds;
        continue;
      }
      const bool witness_ok = c.counterexample && oracle::accepts(automata[i], *c.counterexample) &&
                              !oracle::accepts(automata[j], *c.counterexample);
      if (!witness_ok) ++discrepancies;
      else if (brute_holds) ++beyond_bound;
    }
  r.detail = std::to_string(automata.size()) + " automata, " + std::to_string(pairs) + " pairs, " +
             std::to_string(lassos.size()) + " lassos up to length " + std::to_string(kBruteForceLength) + ", " +
             std::to_string(beyond_bound) + " witnesses beyond that length";
  if (discrepancies) fail(r, std::to_string(discrepancies) + " containment discrepancies");

  gen::Rng rng(1111);
  double worst_excess = 0.0;
  for (std::size_t instance = 0; instance < 50;) {
    const SafetyAutomaton arena = gen::safety(rng, kPd, 5);
    if (arena.is_empty()) continue;
    ++instance;
    const Game g = gen::game(rng, kPd);
    const std::size_t player = gen::uniform(rng, 0, 1);
    const double d = 0.1 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng);
    const auto values = best_deviation_value(arena, g, player, DiscountFactor(d), kPayoffTolerance);
    const auto horizon = oracle::horizon_value(arena, g, player, d, 30);
    // Truncating after 30 steps moves the value by at most 2 max|u| delta^30.
    const double bound = 2.0 * g.max_abs_utility() * std::pow(d, 30.0) + 10 * kPayoffTolerance;
    for (std::size_t q = 0; q < values.size(); ++q)
      worst_excess = std::max(worst_excess, std::abs(values[q] - horizon[q]) - bound);
  }
  if (worst_excess > 0.0) fail(r, "best deviation value outside the horizon-30 bound");
  return r;
}

Result metric_properties() {
  Result r;
  gen::Rng rng(1212);
  const auto less_equal = [](const Distance& a, const Distance& b) {
    return a.numerator * b.denominator <= b.numerator * a.denominator;
  };
  std::size_t violations = 0;
  for (int k = 0; k < 1000; ++k) {
    const LassoWord x = gen::lasso(rng, 2, 4, 3);
    LassoWord y = x, z = x;
    // Perturb late letters so that long common prefixes are common.
    if (gen::coin(rng, 0.7)) y = gen::lasso(rng, 2, 4, 3);
    if (!y.stem.empty() && gen::coin(rng)) y.stem.back() ^= 1;
    if (gen::coin(rng, 0.5)) z = gen::lasso(rng, 2, 4, 3);
    else z.cycle.push_back(gen::coin(rng) ? 0 : 1);
    const Distance xy = metric_distance(x, y), yz = metric_distance(y, z), xz = metric_distance(x, z);
    if (metric_distance(x, x).numerator != 0) ++violations;
    if (!(xy == metric_distance(y, x))) ++violations;
    if ((xy.numerator == 0) != same_infinite_word(x, y)) ++violations;
    if (!less_equal(xz, less_equal(xy, yz) ? yz : xy)) ++violations;
  }
  r.detail = "1000 triples";
  if (violations) fail(r, std::to_string(violations) + " violations");
  return r;
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;  // 0 means no time limit
  std::function<Result()> run;
};

}  // namespace

int main() {
  std::vector<BuchiAutomaton> corpus;
  const std::vector<Criterion> criteria{
      {1, "grim-trigger generation", 1.0, grim_trigger_generation},
      {2, "arrow operator identities", 1.0, arrow_identities},
      {3, "non-injective and non-surjective generation", 1.0, gamma_regressions},
      {4, "strategical equivalence bundle", 30.0,
       [&] {
         corpus = random_corpus(600);
         return equivalence_bundle(corpus);
       }},
      {5, "closure via minimal strategy", 0.0, [&] { return closure_agreement(corpus); }},
      {6, "minimal strategy is least", 0.0, minimality},
      {7, "payoff closed form", 0.0, payoff_formula},
      {8, "good-match verdicts", 0.0, good_match_verdicts},
      {9, "nash threshold and deviation margin", 5.0, nash_threshold_check},
      {10, "equilibrium family identities", 0.0, family_identities},
      {11, "containment and deviation value oracles", 0.0, oracle_equivalence},
      {12, "metric properties", 0.0, metric_properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      fail(result, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds)
      fail(result, "took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    failures += !result.passed;
    std::printf("[%s] %2d %s (%.3f s)%s%s\n", result.passed ? "PASS" : "FAIL", c.number, c.title, seconds,
                result.detail.empty() ? "" : ": ", result.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
