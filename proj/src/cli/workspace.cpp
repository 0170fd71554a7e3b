#include "workspace.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace stratlang::cli {

namespace fs = std::filesystem;

Config default_config() {
  Config config;
  if (const char* env = std::getenv("STRATLANG_TOL"); env && *env) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (*end != '\0' || !(tol > 0.0))
      throw CliError(kExitUsage, std::string("STRATLANG_TOL must be a positive number, got '") + env + "'");
    config.payoff_tolerance = tol;
  }
  return config;
}

fs::path Workspace::resolve(const std::string& name, const std::string& extension) const {
  if (fs::is_regular_file(name)) return name;
  std::vector<fs::path> dirs{fs::current_path()};
  if (const char* env = std::getenv("STRATLANG_PATH"); env && *env) {
    std::string_view rest(env);
    while (!rest.empty()) {
      const auto colon = rest.find(':');
      const auto dir = rest.substr(0, colon);
      if (!dir.empty()) dirs.emplace_back(std::string(dir));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
  }
  dirs.emplace_back(STRATLANG_FIXTURE_DIR);
  for (const auto& dir : dirs) {
    const fs::path candidate = dir / (name + extension);
    if (fs::is_regular_file(candidate)) return candidate;
  }
  throw CliError(kExitInput, "cannot find '" + name + "' (looked for " + name + extension +
                                 " in ., STRATLANG_PATH and " STRATLANG_FIXTURE_DIR ")");
}

std::string Workspace::read(const fs::path& path) const {
  std::ifstream file(path);
  if (!file) throw CliError(kExitInput, "cannot open " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

void Workspace::adopt_alphabet(const MoveAlphabet& alphabet, const std::string& what) {
  if (!alphabet_) {
    alphabet_ = alphabet;
    return;
  }
  if (!(*alphabet_ == alphabet))
    throw CliError(kExitInput, "alphabet mismatch: " + what + " uses '" + format_alphabet_spec(alphabet) +
                                   "' but earlier inputs use '" + format_alphabet_spec(*alphabet_) + "'");
}

const Game& Workspace::game(const std::string& name) {
  if (const auto it = games_.find(name); it != games_.end()) return it->second;
  const auto path = resolve(name, ".game");
  Game loaded = parse_game(read(path), path.string());
  adopt_alphabet(loaded.alphabet(), "game " + name);
  return games_.emplace(name, std::move(loaded)).first->second;
}

const LoadedStrategy& Workspace::strategy(const std::string& name) {
  if (const auto it = strategies_.find(name); it != strategies_.end()) return it->second;
  const auto path = resolve(name, ".strat");
  LoadedStrategy loaded = parse_strategy(read(path), path.string());
  std::visit([&](const auto& s) { adopt_alphabet(s.alphabet(), "strategy " + name); }, loaded.strategy);
  return strategies_.emplace(name, std::move(loaded)).first->second;
}

const AnyAutomaton& Workspace::automaton(const std::string& name) {
  if (const auto it = automata_.find(name); it != automata_.end()) return it->second;
  const auto path = resolve(name, ".aut");
  AnyAutomaton loaded = parse_automaton(read(path), path.string());
  std::visit([&](const auto& a) { adopt_alphabet(a.alphabet(), "automaton " + name); }, loaded);
  return automata_.emplace(name, std::move(loaded)).first->second;
}

const Game& Workspace::game_for(const std::optional<std::string>& game_name,
                                const std::optional<std::string>& strategy_name) {
  if (game_name) return game(*game_name);
  if (strategy_name) {
    const auto& loaded = strategy(*strategy_name);
    if (loaded.game) return game(*loaded.game);
  }
  throw CliError(kExitUsage, "no game given: pass --game or add a 'game:' line to the strategy file");
}

const ProductStrategyVector& product_vector(const LoadedStrategy& loaded, const std::string& name) {
  if (const auto* vec = std::get_if<ProductStrategyVector>(&loaded.strategy)) return *vec;
  throw CliError(kExitUsage, "strategy " + name + " is in general form; this command needs a product vector");
}

FiniteMemoryStrategy general_form(const LoadedStrategy& loaded) {
  if (const auto* vec = std::get_if<ProductStrategyVector>(&loaded.strategy)) return vec->to_general();
  return std::get<FiniteMemoryStrategy>(loaded.strategy);
}

std::size_t parse_player(const std::string& text, const Game& game) {
  const auto& names = game.player_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == text) return i;
  std::size_t pos = 0;
  long index = 0;
  try {
    index = std::stol(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || index < 1 || static_cast<std::size_t>(index) > game.players())
    throw CliError(kExitUsage, "unknown player '" + text + "' (use 1.." + std::to_string(game.players()) +
                                   " or a player name)");
  return static_cast<std::size_t>(index - 1);
}

}  // namespace stratlang::cli
