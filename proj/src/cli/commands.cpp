#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "workspace.hpp"

namespace stratlang::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::optional<std::string> strategy, automaton, dfa, game, match, word, x, y, delta, player, alphabet;
  std::optional<double> tol, step;
  std::optional<std::size_t> bound;
  std::size_t length = 1;
  std::size_t horizon = 10;
  std::uint64_t seed = 0;
  bool json = false;
};

struct Report {
  Report() { text << std::setprecision(10); }
  Json data = Json::object();
  std::ostringstream text;
  int status = kExitTrue;
};

const char* status_name(int status) {
  switch (status) {
    case kExitTrue: return "true";
    case kExitFalse: return "false";
    default: return "inconclusive";
  }
}

std::string echo(std::span<const std::string> args) {
  std::string out = "stratlang";
  for (const auto& a : args) {
    out += ' ';
    if (a.find_first_of(" \t\"()") != std::string::npos || a.empty())
      out += '"' + a + '"';
    else
      out += a;
  }
  return out;
}

const std::string& need(const std::optional<std::string>& value, const char* flag) {
  if (!value) throw CliError(kExitUsage, std::string("missing ") + flag);
  return *value;
}

Json lasso_or_null(const std::optional<LassoWord>& word, const MoveAlphabet& alphabet) {
  return word ? Json(format_lasso(*word, alphabet)) : Json(nullptr);
}

BuchiAutomaton omega_language(const AnyAutomaton& loaded, const std::string& name) {
  if (const auto* b = std::get_if<BuchiAutomaton>(&loaded)) return *b;
  if (const auto* s = std::get_if<SafetyAutomaton>(&loaded)) return s->as_buchi();
  throw CliError(kExitUsage, name + " is a finite-word automaton; this command needs an omega-automaton");
}

Dfa finite_language(const AnyAutomaton& loaded, const std::string& name) {
  if (const auto* d = std::get_if<Dfa>(&loaded)) return *d;
  throw CliError(kExitUsage, name + " is not a finite-word automaton (kind: dfa)");
}

// Mutual containment of `computed` and the automaton named by --automaton.
void compare_with(Report& r, Workspace& ws, const BuchiAutomaton& computed, const std::string& name) {
  const BuchiAutomaton expected = omega_language(ws.automaton(name), name);
  const auto forward = contains(computed, expected);
  const auto backward = contains(expected, computed);
  const bool equal = forward.holds && backward.holds;
  const auto& alphabet = computed.alphabet();
  r.data["compared_with"] = name;
  r.data["equivalent"] = equal;
  r.data["only_in_result"] = lasso_or_null(forward.counterexample, alphabet);
  r.data["only_in_reference"] = lasso_or_null(backward.counterexample, alphabet);
  r.text << "equivalent to " << name << ": " << (equal ? "yes" : "no") << "\n";
  if (forward.counterexample)
    r.text << "  in result only: " << format_lasso(*forward.counterexample, alphabet) << "\n";
  if (backward.counterexample)
    r.text << "  in " << name << " only: " << format_lasso(*backward.counterexample, alphabet) << "\n";
  r.status = equal ? kExitTrue : kExitFalse;
}

void describe_language(Report& r, const std::string& label, const BuchiAutomaton& language,
                       const std::string& automaton_text) {
  const auto member = find_member(language);
  r.data["states"] = language.structure().state_count();
  r.data["empty"] = !member.has_value();
  r.data["sample"] = lasso_or_null(member, language.alphabet());
  r.data["automaton"] = automaton_text;
  r.text << label << ": " << language.structure().state_count() << " states, "
         << (member ? "nonempty" : "empty language") << "\n";
  if (member) r.text << "sample member: " << format_lasso(*member, language.alphabet()) << "\n";
  r.text << automaton_text;
}

SafetyAutomaton strategy_language(const LoadedStrategy& loaded) {
  return std::visit([](const auto& s) { return gamma(s); }, loaded.strategy);
}

void cmd_gamma(Workspace& ws, const Options& o, Report& r) {
  const auto& name = need(o.strategy, "--strategy");
  const SafetyAutomaton language = strategy_language(ws.strategy(name));
  describe_language(r, "gamma(" + name + ")", language.as_buchi(), format_automaton(language));
  if (o.automaton) compare_with(r, ws, language.as_buchi(), *o.automaton);
}

void cmd_is_strategical(Workspace& ws, const Options& o, Report& r) {
  const auto& name = need(o.automaton, "--automaton");
  const BuchiAutomaton language = omega_language(ws.automaton(name), name);
  const auto verdict = check_strategical(language);
  const bool by_arrow = is_strategical_by_arrow(language);
  if (by_arrow != verdict.strategical)
    throw std::logic_error("closure and arrow characterizations disagree on " + name);
  r.data["strategical"] = verdict.strategical;
  r.data["missing_limit"] = lasso_or_null(verdict.missing_limit, language.alphabet());
  r.text << name << " is " << (verdict.strategical ? "" : "not ") << "strategical\n";
  if (verdict.missing_limit)
    r.text << "limit of prefixes missing from the language: "
           << format_lasso(*verdict.missing_limit, language.alphabet()) << "\n";
  r.status = verdict.strategical ? kExitTrue : kExitFalse;
}

void cmd_closure(Workspace& ws, const Options& o, Report& r) {
  const auto& name = need(o.automaton, "--automaton");
  const BuchiAutomaton language = omega_language(ws.automaton(name), name);
  const SafetyAutomaton closed = safety_closure(language);
  const bool already_closed = contains(closed, language).holds;
  r.data["closed"] = already_closed;
  r.text << name << (already_closed ? " is closed" : " is not closed") << "\n";
  describe_language(r, "closure(" + name + ")", closed.as_buchi(), format_automaton(closed));
}

void cmd_minimal_strategy(Workspace& ws, const Options& o, Report& r) {
  const auto& name = need(o.automaton, "--automaton");
  const BuchiAutomaton language = omega_language(ws.automaton(name), name);
  const FiniteMemoryStrategy minimal = minimal_strategy(language);
  const std::string text = format_strategy(minimal);
  r.data["memory_states"] = minimal.memory_size();
  r.data["strategy"] = text;
  r.text << "minimal strategy for " << name << ": " << minimal.memory_size() << " memory states\n" << text;
}

void cmd_arrow(Workspace& ws, const Options& o, Report& r) {
  const auto& name = o.dfa ? *o.dfa : need(o.automaton, "--dfa");
  const Dfa prefixes = finite_language(ws.automaton(name), name);
  const BuchiAutomaton limit = arrow(prefixes);
  describe_language(r, "arrow(" + name + ")", limit, format_automaton(limit));
  if (o.dfa && o.automaton) compare_with(r, ws, limit, *o.automaton);
}

void cmd_quotient(Workspace& ws, const Options& o, Report& r) {
  const auto& name = need(o.automaton, "--automaton");
  const BuchiAutomaton language = omega_language(ws.automaton(name), name);
  const Word w = parse_word(o.word.value_or(""), language.alphabet());
  const BuchiAutomaton quotient = left_quotient(language, w);
  const Dfa pref = pref_automaton(quotient);
  std::vector<std::string> next;
  if (!pref.structure().has_no_states()) {
    const StateId q = pref.structure().initial();
    for (Letter a = 0; a < language.alphabet().size(); ++a)
      if (pref.structure().successor(q, a) != kNoState) next.push_back(language.alphabet().letter_name(a));
  }
  r.data["word"] = format_word(w, language.alphabet());
  r.data["next_letters"] = next;
  r.text << "next letters after the word: ";
  if (next.empty()) r.text << "none";
  for (std::size_t k = 0; k < next.size(); ++k) r.text << (k ? " " : "") << next[k];
  r.text << "\n";
  describe_language(r, "quotient of " + name, quotient, format_automaton(quotient));
}

void cmd_prefixes(Workspace& ws, const Options& o, Report& r) {
  std::vector<Word> words;
  std::optional<MoveAlphabet> alphabet;
  if (o.strategy) {
    const auto& loaded = ws.strategy(*o.strategy);
    words = std::visit([&](const auto& s) { return enumerate_prefixes(s, o.length); }, loaded.strategy);
    alphabet = std::visit([](const auto& s) { return s.alphabet(); }, loaded.strategy);
  } else {
    const auto& name = need(o.automaton, "--strategy or --automaton");
    const BuchiAutomaton language = omega_language(ws.automaton(name), name);
    words = words_of_length(safety_closure(language), o.length);
    alphabet = language.alphabet();
  }
  Json list = Json::array();
  r.text << words.size() << " prefixes of length " << o.length << "\n";
  for (const auto& w : words) {
    list.push_back(format_word(w, *alphabet));
    r.text << (w.empty() ? std::string("(empty word)") : format_word(w, *alphabet)) << "\n";
  }
  r.data["length"] = o.length;
  r.data["count"] = words.size();
  r.data["prefixes"] = list;
}

void cmd_distance(Workspace&, const Options& o, Report& r) {
  const auto& xs = need(o.x, "--x");
  const auto& ys = need(o.y, "--y");
  const std::vector<std::string> texts{xs, ys};
  const MoveAlphabet alphabet = o.alphabet ? parse_alphabet_spec(*o.alphabet) : infer_alphabet(texts);
  const LassoWord x = parse_lasso(xs, alphabet);
  const LassoWord y = parse_lasso(ys, alphabet);
  const Distance d = metric_distance(x, y);
  const auto common = common_prefix_length(x, y);
  r.data["distance"] = {{"numerator", d.numerator}, {"denominator", d.denominator}};
  r.data["value"] = d.value();
  r.data["common_prefix"] = common ? Json(*common) : Json(nullptr);
  r.text << "distance: ";
  if (d.numerator == 0)
    r.text << "0\n";
  else
    r.text << d.numerator << "/" << d.denominator << "\n";
  r.text << "common prefix: " << (common ? std::to_string(*common) : std::string("whole word (equal)")) << "\n";
}

void cmd_payoff(Workspace& ws, const Options& o, Report& r) {
  const Game& game = ws.game_for(o.game, o.strategy);
  const DiscountFactor delta = DiscountFactor::parse(need(o.delta, "--delta"));
  const LassoWord match = parse_lasso(need(o.match, "--match"), game.alphabet());
  const auto values = discounted_payoff(game, delta, match);
  Json list = Json::array();
  r.text << "discounted payoff at delta " << *o.delta << " of " << format_lasso(match, game.alphabet()) << "\n";
  std::optional<std::vector<Rational>> exact;
  if (delta.exact()) exact = discounted_payoff_exact(game, *delta.exact(), match);
  for (std::size_t i = 0; i < game.players(); ++i) {
    Json entry = {{"player", game.player_names()[i]}, {"value", values[i]}};
    r.text << "  " << game.player_names()[i] << ": " << values[i];
    if (exact) {
      entry["exact"] = to_string((*exact)[i]);
      r.text << " (exactly " << to_string((*exact)[i]) << ")";
    }
    r.text << "\n";
    list.push_back(entry);
  }
  r.data["delta"] = delta.value();
  r.data["match"] = format_lasso(match, game.alphabet());
  r.data["payoff"] = list;
}

Json verdict_json(const GoodMatchVerdict& v, const MoveAlphabet& alphabet) {
  Json positions = Json::array();
  for (const auto& p : v.positions) {
    Json entry = {{"position", p.position}, {"continuation", p.continuation}};
    entry["best_deviation"] = p.best_deviation ? Json(*p.best_deviation) : Json(nullptr);
    entry["deviation"] = p.deviation ? Json(alphabet.letter_name(*p.deviation)) : Json(nullptr);
    entry["margin"] = p.margin() ? Json(*p.margin()) : Json(nullptr);
    positions.push_back(entry);
  }
  return {{"good", v.good},
          {"boundary", v.boundary},
          {"margin", v.margin ? Json(*v.margin) : Json(nullptr)},
          {"worst_position", v.worst_position ? Json(*v.worst_position) : Json(nullptr)},
          {"deviation", v.deviation ? Json(alphabet.letter_name(*v.deviation)) : Json(nullptr)},
          {"positions", positions}};
}

void describe_verdict(std::ostream& text, const GoodMatchVerdict& v, const MoveAlphabet& alphabet,
                      double tolerance) {
  text << (v.good ? "good" : "not good");
  if (v.boundary) text << " (on the boundary: worst margin within " << tolerance << " of zero)";
  text << "\n";
  if (!v.margin) {
    text << "  no deviation is feasible anywhere along the match\n";
    return;
  }
  text << "  worst margin " << *v.margin << " at position " << *v.worst_position << " against deviation "
       << alphabet.letter_name(*v.deviation) << "\n";
}

SafetyAutomaton arena_from_automaton(const AnyAutomaton& loaded, const std::string& name) {
  if (const auto* s = std::get_if<SafetyAutomaton>(&loaded)) return *s;
  const BuchiAutomaton language = omega_language(loaded, name);
  const auto verdict = check_strategical(language);
  if (!verdict.strategical)
    throw CliError(kExitInput, name + " is not closed, so it cannot serve as an arena (missing limit " +
                                   format_lasso(*verdict.missing_limit, language.alphabet()) + ")");
  return safety_closure(language);
}

void cmd_good_match(Workspace& ws, const Options& o, Report& r) {
  const Game& game = ws.game_for(o.game, o.strategy);
  const std::size_t player = parse_player(need(o.player, "--player"), game);
  const DiscountFactor delta = DiscountFactor::parse(need(o.delta, "--delta"));
  const LassoWord match = parse_lasso(need(o.match, "--match"), game.alphabet());
  std::optional<SafetyAutomaton> arena;
  std::string arena_label;
  if (o.automaton) {
    arena = arena_from_automaton(ws.automaton(*o.automaton), *o.automaton);
    arena_label = *o.automaton;
  } else {
    const auto& name = need(o.strategy, "--strategy or --automaton");
    const auto family = equilibrium_family(product_vector(ws.strategy(name), name));
    arena = family.opponents[player];
    arena_label = "matches of " + name + " with player " + game.player_names()[player] + " free";
  }
  const double tol = ws.config().payoff_tolerance;
  const DeviationAnalysis analysis(*arena, game, player, delta, tol);
  const GoodMatchVerdict verdict = analysis.check(match);
  r.data["player"] = game.player_names()[player];
  r.data["delta"] = delta.value();
  r.data["tolerance"] = tol;
  r.data["match"] = format_lasso(match, game.alphabet());
  r.data["arena"] = arena_label;
  r.data["verdict"] = verdict_json(verdict, game.alphabet());
  r.text << "match " << format_lasso(match, game.alphabet()) << " for player " << game.player_names()[player]
         << " in " << arena_label << ": ";
  describe_verdict(r.text, verdict, game.alphabet(), tol);
  if (verdict.deviation) {
    const LassoWord witness = analysis.deviation_witness(match, verdict);
    r.data["deviation_witness"] = format_lasso(witness, game.alphabet());
    r.text << "  best deviation: " << format_lasso(witness, game.alphabet()) << "\n";
  } else {
    r.data["deviation_witness"] = nullptr;
  }
  r.status = verdict.good ? kExitTrue : kExitFalse;
}

void cmd_nash(Workspace& ws, const Options& o, Report& r) {
  const auto& name = need(o.strategy, "--strategy");
  const ProductStrategyVector& sigma = product_vector(ws.strategy(name), name);
  const Game& game = ws.game_for(o.game, o.strategy);
  const DiscountFactor delta = DiscountFactor::parse(need(o.delta, "--delta"));
  NashOptions options;
  options.search_bound = o.bound.value_or(ws.config().search_bound);
  options.tolerance = ws.config().payoff_tolerance;
  if (o.match) options.candidate = parse_lasso(*o.match, game.alphabet());
  const NashVerdict verdict = is_nash(sigma, game, delta, options);
  const char* outcome = verdict.outcome == NashOutcome::equilibrium       ? "equilibrium"
                        : verdict.outcome == NashOutcome::not_equilibrium ? "not_equilibrium"
                                                                          : "inconclusive";
  Json players = Json::array();
  for (const auto& v : verdict.player_verdicts) players.push_back(verdict_json(v, game.alphabet()));
  r.data["delta"] = delta.value();
  r.data["tolerance"] = options.tolerance;
  r.data["search_bound"] = options.search_bound;
  r.data["outcome"] = outcome;
  r.data["reason"] = verdict.reason;
  r.data["witness"] = lasso_or_null(verdict.witness, game.alphabet());
  r.data["candidates_examined"] = verdict.candidates_examined;
  r.data["player_verdicts"] = players;
  r.text << name << " at delta " << *o.delta << ": " << outcome << "\n  " << verdict.reason << "\n";
  if (verdict.witness) r.text << "  match: " << format_lasso(*verdict.witness, game.alphabet()) << "\n";
  for (std::size_t i = 0; i < verdict.player_verdicts.size(); ++i) {
    r.text << "  player " << game.player_names()[i] << ": ";
    describe_verdict(r.text, verdict.player_verdicts[i], game.alphabet(), options.tolerance);
  }
  r.status = verdict.outcome == NashOutcome::equilibrium       ? kExitTrue
             : verdict.outcome == NashOutcome::not_equilibrium ? kExitFalse
                                                               : kExitInconclusive;
}

void cmd_nash_threshold(Workspace& ws, const Options& o, Report& r) {
  const auto& name = need(o.strategy, "--strategy");
  const ProductStrategyVector& sigma = product_vector(ws.strategy(name), name);
  const Game& game = ws.game_for(o.game, o.strategy);
  const LassoWord match = parse_lasso(need(o.match, "--match"), game.alphabet());
  ThresholdOptions options;
  if (o.step) options.grid_step = *o.step;
  if (o.tol) options.tolerance = *o.tol;
  options.payoff_tolerance = ws.config().payoff_tolerance;
  if (!(options.grid_step > 0.0 && options.grid_step < 1.0))
    throw CliError(kExitUsage, "--step must lie in (0, 1)");
  const ThresholdReport report = nash_threshold(sigma, game, match, options);
  Json crossings = Json::array();
  for (const auto& c : report.crossings)
    crossings.push_back({{"threshold", c.estimate()},
                         {"lower", c.lower},
                         {"upper", c.upper},
                         {"equilibrium_above", c.good_above}});
  Json grid = Json::array();
  for (const auto& [d, ok] : report.grid) grid.push_back({{"delta", d}, {"equilibrium", ok}});
  r.data["match"] = format_lasso(match, game.alphabet());
  r.data["grid_step"] = options.grid_step;
  r.data["tolerance"] = options.tolerance;
  r.data["crossings"] = crossings;
  r.data["grid"] = grid;
  r.text << "match " << format_lasso(match, game.alphabet()) << " under " << name << "\n";
  if (report.crossings.empty()) {
    const bool always = !report.grid.empty() && report.grid.front().second;
    r.text << "no threshold on the grid: " << (always ? "an equilibrium match" : "not an equilibrium match")
           << " at every grid point\n";
  }
  for (const auto& c : report.crossings)
    r.text << "threshold: " << std::setprecision(9) << c.estimate() << " (within " << options.tolerance
           << "); equilibrium " << (c.good_above ? "above" : "below") << " it\n";
}

}  // namespace

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Strategies of repeated games as languages of infinite words.", "stratlang"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--tol", o.tol, "Payoff tolerance (threshold width for nash-threshold)")->check(CLI::PositiveNumber);

  auto strategy_opt = [&](CLI::App* c) { return c->add_option("--strategy", o.strategy, "Strategy file or name"); };
  auto automaton_opt = [&](CLI::App* c) { return c->add_option("--automaton", o.automaton, "Automaton file or name"); };
  auto game_opt = [&](CLI::App* c) { return c->add_option("--game", o.game, "Game file or name"); };
  auto delta_opt = [&](CLI::App* c) { return c->add_option("--delta", o.delta, "Discount factor in (0, 1)"); };
  auto match_opt = [&](CLI::App* c) { return c->add_option("--match", o.match, "Match as a lasso, e.g. \"c,c ( d,d )\""); };
  auto player_opt = [&](CLI::App* c) { return c->add_option("--player", o.player, "Player index (1-based) or name"); };

  auto* gamma_cmd = app.add_subcommand("gamma", "Language of matches consistent with a strategy");
  strategy_opt(gamma_cmd)->required();
  automaton_opt(gamma_cmd);

  auto* strategical_cmd = app.add_subcommand("is-strategical", "Whether a language is generated by a strategy");
  automaton_opt(strategical_cmd)->required();

  auto* closure_cmd = app.add_subcommand("closure", "Closure of a language in the prefix topology");
  automaton_opt(closure_cmd)->required();

  auto* minimal_cmd = app.add_subcommand("minimal-strategy", "Smallest strategy whose matches are the closure");
  automaton_opt(minimal_cmd)->required();

  auto* arrow_cmd = app.add_subcommand("arrow", "Words with infinitely many prefixes in a finite-word language");
  arrow_cmd->add_option("--dfa", o.dfa, "Finite-word automaton (kind: dfa)")->required();
  automaton_opt(arrow_cmd);

  auto* quotient_cmd = app.add_subcommand("quotient", "Left quotient by a finite word");
  automaton_opt(quotient_cmd)->required();
  quotient_cmd->add_option("--word", o.word, "Finite word, letters separated by spaces");

  auto* prefixes_cmd = app.add_subcommand("prefixes", "Prefixes of a given length");
  strategy_opt(prefixes_cmd);
  automaton_opt(prefixes_cmd);
  prefixes_cmd->add_option("-k,--length", o.length, "Prefix length");

  auto* distance_cmd = app.add_subcommand("distance", "Prefix distance between two lassos");
  distance_cmd->add_option("--x", o.x, "First lasso")->required();
  distance_cmd->add_option("--y", o.y, "Second lasso")->required();
  distance_cmd->add_option("--alphabet", o.alphabet, "Alphabet, e.g. \"c d | c d\" (inferred when absent)");

  auto* payoff_cmd = app.add_subcommand("payoff", "Discounted payoff of a match");
  game_opt(payoff_cmd);
  strategy_opt(payoff_cmd);
  match_opt(payoff_cmd)->required();
  delta_opt(payoff_cmd)->required();

  auto* good_cmd = app.add_subcommand("good-match", "Whether no single-player deviation pays off");
  strategy_opt(good_cmd);
  automaton_opt(good_cmd);
  game_opt(good_cmd);
  player_opt(good_cmd)->required();
  match_opt(good_cmd)->required();
  delta_opt(good_cmd)->required();

  auto* nash_cmd = app.add_subcommand("nash", "Whether a strategy vector is a Nash equilibrium");
  strategy_opt(nash_cmd)->required();
  game_opt(nash_cmd);
  delta_opt(nash_cmd)->required();
  match_opt(nash_cmd);
  nash_cmd->add_option("--bound", o.bound, "Lasso length bound of the search");

  auto* threshold_cmd = app.add_subcommand("nash-threshold", "Discount factors at which a match stops being an equilibrium match");
  strategy_opt(threshold_cmd)->required();
  game_opt(threshold_cmd);
  match_opt(threshold_cmd)->required();
  threshold_cmd->add_option("--step", o.step, "Grid step");

  auto* play_cmd = app.add_subcommand("play", "Play a match against a strategy vector");
  strategy_opt(play_cmd)->required();
  game_opt(play_cmd);
  player_opt(play_cmd)->required();
  delta_opt(play_cmd)->required();
  play_cmd->add_option("--horizon", o.horizon, "Number of rounds");
  play_cmd->add_option("--seed", o.seed, "Seed of the engine's choices");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Workspace ws(default_config());
    if (o.tol && command != "nash-threshold") ws.config().payoff_tolerance = *o.tol;
    ws.config().json = o.json;

    if (command == "play") {
      PlayOptions p;
      p.strategy = *o.strategy;
      p.game = o.game;
      p.player = *o.player;
      p.delta = *o.delta;
      p.horizon = o.horizon;
      p.seed = o.seed;
      p.json = o.json;
      return play(ws, p, in, out);
    }

    Report r;
    if (command == "gamma") cmd_gamma(ws, o, r);
    else if (command == "is-strategical") cmd_is_strategical(ws, o, r);
    else if (command == "closure") cmd_closure(ws, o, r);
    else if (command == "minimal-strategy") cmd_minimal_strategy(ws, o, r);
    else if (command == "arrow") cmd_arrow(ws, o, r);
    else if (command == "quotient") cmd_quotient(ws, o, r);
    else if (command == "prefixes") cmd_prefixes(ws, o, r);
    else if (command == "distance") cmd_distance(ws, o, r);
    else if (command == "payoff") cmd_payoff(ws, o, r);
    else if (command == "good-match") cmd_good_match(ws, o, r);
    else if (command == "nash") cmd_nash(ws, o, r);
    else if (command == "nash-threshold") cmd_nash_threshold(ws, o, r);

    if (o.json) {
      Json report;
      report["command"] = echo(args);
      report["status"] = status_name(r.status);
      report["exit_code"] = r.status;
      for (auto& [key, value] : r.data.items()) report[key] = value;
      out << report.dump(2) << "\n";
    } else {
      out << r.text.str();
    }
    return r.status;
  } catch (const CliError& e) {
    err << "stratlang " << command << ": " << e.what() << "\n";
    return e.status();
  } catch (const ParseError& e) {
    err << "stratlang " << command << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "stratlang " << command << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::out_of_range& e) {
    err << "stratlang " << command << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::length_error& e) {
    err << "stratlang " << command << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "stratlang " << command << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace stratlang::cli
