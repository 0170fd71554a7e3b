#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "workspace.hpp"

namespace stratlang::cli {

namespace {

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::string join_actions(const MoveAlphabet& alphabet, std::size_t player,
                         const std::vector<std::size_t>& actions) {
  std::string out;
  for (const auto x : actions) {
    if (!out.empty()) out += ' ';
    out += alphabet.actions(player)[x];
  }
  return out.empty() ? "-" : out;
}

std::vector<std::size_t> every_action(const MoveAlphabet& alphabet, std::size_t player) {
  std::vector<std::size_t> all(alphabet.action_count(player));
  for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
  return all;
}

}  // namespace

int play(Workspace& workspace, const PlayOptions& options, std::istream& in, std::ostream& out) {
  if (options.horizon == 0) throw CliError(kExitUsage, "horizon must be at least 1");
  const auto& loaded = workspace.strategy(options.strategy);
  const ProductStrategyVector& sigma = product_vector(loaded, options.strategy);
  const Game& game = workspace.game_for(options.game, options.strategy);
  const std::size_t human = parse_player(options.player, game);
  const DiscountFactor delta = DiscountFactor::parse(options.delta);
  const MoveAlphabet& alphabet = sigma.alphabet();
  const auto& names = game.player_names();

  std::mt19937_64 rng(options.seed);
  Word history;
  StateId memory = sigma.initial();
  std::string end_reason = "horizon reached";
  const bool chatty = !options.json;
  std::ostringstream transcript;
  std::ostream& log = chatty ? out : transcript;
  log << std::setprecision(10);

  log << "playing as player " << names[human] << " against " << options.strategy << " (delta "
      << options.delta << ", horizon " << options.horizon << ", seed " << options.seed << ")\n";

  for (std::size_t round = 0; round < options.horizon; ++round) {
    std::vector<std::size_t> profile(alphabet.players(), 0);
    bool stuck = false;
    for (std::size_t j = 0; j < alphabet.players(); ++j) {
      if (j == human) continue;
      const auto allowed = sigma.allowed_actions(memory, j);
      if (allowed.empty()) {
        end_reason = "match leaves gamma(sigma): player " + names[j] + " has no permitted action";
        stuck = true;
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, allowed.size() - 1);
      profile[j] = allowed[pick(rng)];
    }
    if (stuck) break;

    const auto suggested = sigma.allowed_actions(memory, human);
    log << "round " << round + 1 << ": your actions: "
        << join_actions(alphabet, human, every_action(alphabet, human))
        << " (strategy permits: " << join_actions(alphabet, human, suggested) << ")\n> ";
    log.flush();

    std::optional<std::size_t> choice;
    std::string line;
    while (!choice) {
      if (!std::getline(in, line)) break;
      choice = alphabet.find_action(human, trimmed(line));
      if (!choice) {
        log << "unknown action '" << trimmed(line) << "'; choose one of: "
            << join_actions(alphabet, human, every_action(alphabet, human))
            << "\n> ";
        log.flush();
      }
    }
    if (!choice) {
      log << "\n";
      end_reason = "input closed";
      break;
    }
    profile[human] = *choice;

    const Letter move = alphabet.encode(profile);
    history.push_back(move);
    const bool permitted = sigma.allows_action(memory, human, *choice);
    memory = sigma.update(memory, move);

    log << "move " << alphabet.letter_name(move);
    if (!permitted) log << " (your action is outside your strategy component)";
    log << "; running payoff:";
    for (std::size_t i = 0; i < game.players(); ++i)
      log << ' ' << names[i] << '=' << partial_payoff(game, delta.value(), history, i);
    log << "\n";
  }

  log << "match over: " << end_reason << "\n";
  log << "history: " << (history.empty() ? std::string("(empty)") : format_word(history, alphabet)) << "\n";
  log << "partial payoff:";
  std::vector<double> payoffs;
  for (std::size_t i = 0; i < game.players(); ++i) {
    payoffs.push_back(partial_payoff(game, delta.value(), history, i));
    log << ' ' << names[i] << '=' << payoffs.back();
  }
  log << "\n";

  if (options.json) {
    nlohmann::ordered_json report;
    report["command"] = "play";
    report["status"] = "true";
    report["exit_code"] = kExitTrue;
    report["player"] = names[human];
    report["delta"] = delta.value();
    report["seed"] = options.seed;
    report["rounds"] = history.size();
    report["history"] = format_word(history, alphabet);
    report["end_reason"] = end_reason;
    report["partial_payoff"] = payoffs;
    report["transcript"] = transcript.str();
    out << report.dump(2) << "\n";
  }
  return kExitTrue;
}

}  // namespace stratlang::cli
