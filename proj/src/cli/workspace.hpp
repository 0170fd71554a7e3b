#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "stratlang/cli.hpp"
#include "stratlang/equilibrium.hpp"
#include "stratlang/text_format.hpp"

namespace stratlang::cli {

/// An error carrying the exit status it should produce.
class CliError : public std::runtime_error {
 public:
  CliError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct Config {
  double payoff_tolerance = kDefaultPayoffTolerance;
  double threshold_tolerance = kDefaultThresholdTolerance;
  std::size_t search_bound = 6;
  bool json = false;
};

/// Reads STRATLANG_TOL when set; throws CliError on a malformed value.
Config default_config();

/// Loaded objects of one invocation. Files are looked up by literal path,
/// then as NAME.EXT in the working directory, each directory of
/// STRATLANG_PATH, and the bundled fixtures. Every loaded object must use the
/// same move alphabet.
class Workspace {
 public:
  explicit Workspace(Config config) : config_(config) {}

  const Config& config() const { return config_; }
  Config& config() { return config_; }

  const Game& game(const std::string& name);
  const LoadedStrategy& strategy(const std::string& name);
  const AnyAutomaton& automaton(const std::string& name);

  /// The game named by --game, else the one named inside the strategy file.
  const Game& game_for(const std::optional<std::string>& game_name,
                       const std::optional<std::string>& strategy_name);

  /// The alphabet shared by everything loaded so far.
  const std::optional<MoveAlphabet>& alphabet() const { return alphabet_; }

  std::filesystem::path resolve(const std::string& name, const std::string& extension) const;

 private:
  std::string read(const std::filesystem::path& path) const;
  void adopt_alphabet(const MoveAlphabet& alphabet, const std::string& what);

  Config config_;
  std::optional<MoveAlphabet> alphabet_;
  std::map<std::string, Game> games_;
  std::map<std::string, LoadedStrategy> strategies_;
  std::map<std::string, AnyAutomaton> automata_;
};

/// Product form required; a general-form file is a usage error.
const ProductStrategyVector& product_vector(const LoadedStrategy& loaded, const std::string& name);
FiniteMemoryStrategy general_form(const LoadedStrategy& loaded);

/// 1-based index or player name.
std::size_t parse_player(const std::string& text, const Game& game);

struct PlayOptions {
  std::string strategy;
  std::optional<std::string> game;
  std::string player;
  std::string delta;
  std::size_t horizon = 10;
  std::uint64_t seed = 0;
  bool json = false;
};

/// The interactive match against the engine; returns the exit status.
int play(Workspace& workspace, const PlayOptions& options, std::istream& in, std::ostream& out);

}  // namespace stratlang::cli
