#include "stratlang/text_format.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace stratlang {

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return s.substr(s.size());
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// One non-blank, comment-stripped input line.
struct SourceLine {
  std::string_view raw;
  std::string_view text;
  std::size_t number;

  std::size_t column(std::string_view part) const {
    return static_cast<std::size_t>(part.data() - raw.data()) + 1;
  }
};

std::vector<SourceLine> logical_lines(std::string_view input) {
  std::vector<SourceLine> out;
  std::size_t number = 0, start = 0;
  while (start <= input.size()) {
    const auto end = input.find('\n', start);
    const std::string_view raw =
        input.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++number;
    std::string_view text = raw.substr(0, raw.find('#'));
    text = trim(text);
    if (!text.empty()) out.push_back(SourceLine{raw, text, number});
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

// "key: value" with a key made of words; nullopt when the line has no such key.
struct KeyValue {
  std::string_view key;
  std::string_view value;
};

std::optional<KeyValue> split_key(const SourceLine& line) {
  const auto colon = line.text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  return KeyValue{trim(line.text.substr(0, colon)), trim(line.text.substr(colon + 1))};
}

class Reporter {
 public:
  explicit Reporter(std::string source) : source_(std::move(source)) {}
  [[noreturn]] void fail(const SourceLine& line, std::string_view part, const std::string& message) const {
    throw ParseError(source_, line.number, line.column(part), message);
  }
  [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& message) const {
    throw ParseError(source_, line, column, message);
  }

 private:
  std::string source_;
};

// Splits "a b | c d" into per-player lists; empty groups are kept.
std::vector<std::vector<std::string_view>> split_groups(std::string_view spec) {
  std::vector<std::vector<std::string_view>> groups;
  std::size_t start = 0;
  while (true) {
    const auto bar = spec.find('|', start);
    groups.push_back(split_ws(spec.substr(start, bar == std::string_view::npos ? bar : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return groups;
}

// Tokens of a lasso: '(' and ')' stand alone, other tokens split on whitespace.
std::vector<std::string_view> lasso_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back(text.substr(i, 1));
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && std::string_view(" \t\r\n()").find(text[i]) == std::string_view::npos) ++i;
      out.push_back(text.substr(start, i - start));
    }
  }
  return out;
}

std::size_t column_in(std::string_view whole, std::string_view part) {
  return static_cast<std::size_t>(part.data() - whole.data()) + 1;
}

Letter letter_or_throw(std::string_view token, std::string_view whole, const MoveAlphabet& alphabet,
                       const std::string& source) {
  const auto letter = alphabet.find_letter(token);
  if (!letter)
    throw ParseError(source, 1, column_in(whole, token), "unknown letter '" + std::string(token) + "'");
  return *letter;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lassos and words

LassoWord parse_lasso(std::string_view text, const MoveAlphabet& alphabet) {
  const std::string source = "<lasso>";
  const auto tokens = lasso_tokens(text);
  LassoWord out;
  bool in_cycle = false, closed = false;
  for (const auto token : tokens) {
    if (closed)
      throw ParseError(source, 1, column_in(text, token), "unexpected text after the cycle");
    if (token == "(") {
      if (in_cycle) throw ParseError(source, 1, column_in(text, token), "nested '('");
      in_cycle = true;
    } else if (token == ")") {
      if (!in_cycle) throw ParseError(source, 1, column_in(text, token), "')' without '('");
      if (out.cycle.empty()) throw ParseError(source, 1, column_in(text, token), "empty cycle");
      closed = true;
    } else {
      (in_cycle ? out.cycle : out.stem).push_back(letter_or_throw(token, text, alphabet, source));
    }
  }
  if (!closed)
    throw ParseError(source, 1, text.size() + 1, "a lasso needs a parenthesized nonempty cycle");
  return out;
}

std::string format_word(std::span<const Letter> word, const MoveAlphabet& alphabet) {
  std::string out;
  for (const Letter a : word) {
    if (!out.empty()) out += ' ';
    out += alphabet.letter_name(a);
  }
  return out;
}

std::string format_lasso(const LassoWord& word, const MoveAlphabet& alphabet) {
  std::string out = format_word(word.stem, alphabet);
  if (!out.empty()) out += ' ';
  return out + "( " + format_word(word.cycle, alphabet) + " )";
}

Word parse_word(std::string_view text, const MoveAlphabet& alphabet) {
  Word out;
  for (const auto token : split_ws(text)) out.push_back(letter_or_throw(token, text, alphabet, "<word>"));
  return out;
}

MoveAlphabet infer_alphabet(std::span<const std::string> texts) {
  std::vector<std::vector<std::string>> actions;
  for (const auto& text : texts) {
    for (const auto token : lasso_tokens(text)) {
      if (token == "(" || token == ")") continue;
      std::vector<std::string_view> fields;
      std::size_t start = 0;
      while (true) {
        const auto comma = token.find(',', start);
        fields.push_back(token.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (actions.empty()) actions.resize(fields.size());
      if (fields.size() != actions.size())
        throw ParseError("<lasso>", 1, column_in(text, token),
                         "letter '" + std::string(token) + "' has the wrong number of players");
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string name(fields[i]);
        if (name.empty())
          throw ParseError("<lasso>", 1, column_in(text, token), "empty action in '" + std::string(token) + "'");
        if (std::find(actions[i].begin(), actions[i].end(), name) == actions[i].end())
          actions[i].push_back(name);
      }
    }
  }
  if (actions.empty()) throw std::invalid_argument("cannot infer an alphabet from empty input");
  return MoveAlphabet(std::move(actions));
}

MoveAlphabet parse_alphabet_spec(std::string_view spec) {
  std::vector<std::vector<std::string>> actions;
  for (const auto& group : split_groups(spec)) {
    actions.emplace_back();
    for (const auto name : group) actions.back().emplace_back(name);
  }
  return MoveAlphabet(std::move(actions));
}

std::string format_alphabet_spec(const MoveAlphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < alphabet.players(); ++i) {
    if (i) out += " | ";
    for (std::size_t x = 0; x < alphabet.action_count(i); ++x) {
      if (x) out += ' ';
      out += alphabet.actions(i)[x];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared machinery for files with states and transition lines

namespace {

struct TransitionLine {
  const SourceLine* line;
  std::string_view state;
  std::string_view letter;
  std::string_view target;
};

TransitionLine parse_transition(const SourceLine& line, const Reporter& report) {
  const auto arrow = line.text.find("->");
  const std::string_view left = line.text.substr(0, arrow);
  const std::string_view target = trim(line.text.substr(arrow + 2));
  const auto comma = left.find(',');
  if (comma == std::string_view::npos)
    report.fail(line, line.text, "transition must read 'state , letter -> state'");
  const std::string_view state = trim(left.substr(0, comma));
  const std::string_view letter = trim(left.substr(comma + 1));
  if (state.empty()) report.fail(line, line.text, "missing source state");
  if (letter.empty()) report.fail(line, left.substr(comma), "missing letter");
  if (target.empty() || split_ws(target).size() != 1)
    report.fail(line, line.text.substr(arrow), "transition needs exactly one target state");
  return TransitionLine{&line, state, letter, target};
}

class StateTable {
 public:
  void declare(const SourceLine& line, std::string_view names, const Reporter& report) {
    for (const auto name : split_ws(names)) add(line, name, report);
  }
  StateId add(const SourceLine& line, std::string_view name, const Reporter& report) {
    if (index_.count(std::string(name)))
      report.fail(line, name, "duplicate state '" + std::string(name) + "'");
    index_.emplace(std::string(name), static_cast<StateId>(names_.size()));
    names_.emplace_back(name);
    return static_cast<StateId>(names_.size() - 1);
  }
  StateId lookup(const SourceLine& line, std::string_view name, const Reporter& report) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) report.fail(line, name, "unknown state '" + std::string(name) + "'");
    return it->second;
  }
  bool has(std::string_view name) const { return index_.count(std::string(name)) > 0; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::map<std::string, StateId> index_;
  std::vector<std::string> names_;
};

// Resolves transition lines into a (state, letter) -> target table; '_'
// covers the letters a state has no explicit line for.
std::vector<StateId> resolve_transitions(const std::vector<TransitionLine>& lines,
                                         const StateTable& states, const MoveAlphabet& alphabet,
                                         const Reporter& report) {
  const std::size_t k = alphabet.size();
  std::vector<StateId> table(states.size() * k, kNoState);
  std::vector<std::optional<StateId>> wildcard(states.size());
  for (const auto& t : lines) {
    const StateId from = states.lookup(*t.line, t.state, report);
    const StateId to = states.lookup(*t.line, t.target, report);
    if (t.letter == "_") {
      if (wildcard[from]) report.fail(*t.line, t.letter, "second wildcard for state '" + std::string(t.state) + "'");
      wildcard[from] = to;
      continue;
    }
    const auto letter = alphabet.find_letter(t.letter);
    if (!letter) report.fail(*t.line, t.letter, "unknown letter '" + std::string(t.letter) + "'");
    StateId& slot = table[from * k + *letter];
    if (slot != kNoState) report.fail(*t.line, t.letter, "duplicate transition");
    slot = to;
  }
  for (StateId q = 0; q < states.size(); ++q)
    if (wildcard[q])
      for (Letter a = 0; a < k; ++a)
        if (table[q * k + a] == kNoState) table[q * k + a] = *wildcard[q];
  return table;
}

bool starts_with_word(std::string_view key, std::string_view word) {
  return key.size() > word.size() && key.substr(0, word.size()) == word &&
         (key[word.size()] == ' ' || key[word.size()] == '\t');
}

}  // namespace

// ---------------------------------------------------------------------------
// Automaton files

AnyAutomaton parse_automaton(std::string_view text, const std::string& source) {
  const Reporter report(source);
  const auto lines = logical_lines(text);
  std::optional<MoveAlphabet> alphabet;
  std::optional<std::string> kind;
  StateTable states;
  bool states_seen = false;
  const SourceLine* initial_line = nullptr;
  std::string_view initial_name;
  const SourceLine* accepting_line = nullptr;
  std::string_view accepting_names;
  std::vector<TransitionLine> transitions;

  for (const auto& line : lines) {
    if (line.text.find("->") != std::string_view::npos) {
      transitions.push_back(parse_transition(line, report));
      continue;
    }
    const auto kv = split_key(line);
    if (!kv) report.fail(line, line.text, "expected 'key: value' or a transition");
    if (kv->key == "kind") {
      if (kv->value != "dfa" && kv->value != "buchi" && kv->value != "safety")
        report.fail(line, kv->value, "kind must be dfa, buchi or safety");
      kind = std::string(kv->value);
    } else if (kv->key == "alphabet") {
      try {
        alphabet = parse_alphabet_spec(kv->value);
      } catch (const std::invalid_argument& e) {
        report.fail(line, kv->value, e.what());
      }
    } else if (kv->key == "states") {
      states.declare(line, kv->value, report);
      states_seen = true;
    } else if (kv->key == "initial") {
      initial_line = &line;
      initial_name = kv->value;
    } else if (kv->key == "accepting") {
      accepting_line = &line;
      accepting_names = kv->value;
    } else {
      report.fail(line, kv->key, "unknown key '" + std::string(kv->key) + "'");
    }
  }
  if (!alphabet) report.fail(1, 1, "missing 'alphabet:' line");
  if (!states_seen) report.fail(1, 1, "missing 'states:' line");
  if (!kind) kind = accepting_line ? "buchi" : "safety";
  if (*kind == "safety" && accepting_line)
    report.fail(*accepting_line, accepting_line->text, "safety automata take no accepting set");

  const auto table = resolve_transitions(transitions, states, *alphabet, report);
  std::vector<bool> accepting(states.size(), false);
  if (accepting_line)
    for (const auto name : split_ws(accepting_names))
      accepting[states.lookup(*accepting_line, name, report)] = true;

  DetAutomaton structure = DetAutomaton::empty(*alphabet);
  if (states.size() > 0) {
    if (!initial_line) report.fail(1, 1, "missing 'initial:' line");
    const StateId initial = states.lookup(*initial_line, initial_name, report);
    structure = DetAutomaton(*alphabet, states.size(), initial);
    for (StateId q = 0; q < states.size(); ++q)
      for (Letter a = 0; a < alphabet->size(); ++a)
        if (const StateId r = table[q * alphabet->size() + a]; r != kNoState)
          structure.set_successor(q, a, r);
  } else if (initial_line) {
    report.fail(*initial_line, initial_name, "initial state given for an automaton without states");
  }

  if (*kind == "dfa") return Dfa(std::move(structure), std::move(accepting));
  if (*kind == "buchi") return BuchiAutomaton(std::move(structure), std::move(accepting));
  return trim(structure);
}

namespace {

std::string format_structure(std::string_view kind, const DetAutomaton& s,
                             const std::vector<bool>* accepting) {
  std::ostringstream out;
  out << "kind: " << kind << "\n";
  out << "alphabet: " << format_alphabet_spec(s.alphabet()) << "\n";
  out << "states:";
  for (StateId q = 0; q < s.state_count(); ++q) out << " q" << q;
  out << "\n";
  if (!s.has_no_states()) out << "initial: q" << s.initial() << "\n";
  for (StateId q = 0; q < s.state_count(); ++q)
    for (Letter a = 0; a < s.alphabet().size(); ++a)
      if (const StateId r = s.successor(q, a); r != kNoState)
        out << "q" << q << " , " << s.alphabet().letter_name(a) << " -> q" << r << "\n";
  if (accepting) {
    out << "accepting:";
    for (StateId q = 0; q < s.state_count(); ++q)
      if ((*accepting)[q]) out << " q" << q;
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string format_automaton(const Dfa& automaton) {
  return format_structure("dfa", automaton.structure(), &automaton.accepting());
}
std::string format_automaton(const BuchiAutomaton& automaton) {
  return format_structure("buchi", automaton.structure(), &automaton.accepting());
}
std::string format_automaton(const SafetyAutomaton& automaton) {
  return format_structure("safety", automaton.structure(), nullptr);
}

// ---------------------------------------------------------------------------
// Strategy files

LoadedStrategy parse_strategy(std::string_view text, const std::string& source) {
  const Reporter report(source);
  const auto lines = logical_lines(text);
  std::optional<MoveAlphabet> alphabet;
  std::optional<std::string> game, form;
  StateTable memory;
  bool memory_seen = false;
  const SourceLine* initial_line = nullptr;
  std::string_view initial_name;
  const SourceLine* default_line = nullptr;
  std::string_view default_name;
  struct AllowLine {
    const SourceLine* line;
    std::string_view state;
    std::string_view value;
    bool product;
  };
  std::vector<AllowLine> allows;
  std::vector<TransitionLine> transitions;

  for (const auto& line : lines) {
    if (line.text.find("->") != std::string_view::npos) {
      transitions.push_back(parse_transition(line, report));
      continue;
    }
    const auto kv = split_key(line);
    if (!kv) report.fail(line, line.text, "expected 'key: value' or a transition");
    if (kv->key == "alphabet") {
      try {
        alphabet = parse_alphabet_spec(kv->value);
      } catch (const std::invalid_argument& e) {
        report.fail(line, kv->value, e.what());
      }
    } else if (kv->key == "game") {
      game = std::string(kv->value);
    } else if (kv->key == "form") {
      if (kv->value != "product" && kv->value != "general")
        report.fail(line, kv->value, "form must be product or general");
      form = std::string(kv->value);
    } else if (kv->key == "memory") {
      memory.declare(line, kv->value, report);
      memory_seen = true;
    } else if (kv->key == "initial") {
      initial_line = &line;
      initial_name = kv->value;
    } else if (kv->key == "default") {
      default_line = &line;
      default_name = kv->value;
    } else if (starts_with_word(kv->key, "allow")) {
      allows.push_back({&line, trim(kv->key.substr(5)), kv->value, true});
    } else if (starts_with_word(kv->key, "moves")) {
      allows.push_back({&line, trim(kv->key.substr(5)), kv->value, false});
    } else {
      report.fail(line, kv->key, "unknown key '" + std::string(kv->key) + "'");
    }
  }
  if (!alphabet) report.fail(1, 1, "missing 'alphabet:' line");
  if (!memory_seen || memory.size() == 0) report.fail(1, 1, "missing or empty 'memory:' line");
  if (!initial_line) report.fail(1, 1, "missing 'initial:' line");

  const bool any_product = std::any_of(allows.begin(), allows.end(), [](const auto& a) { return a.product; });
  const bool any_general = std::any_of(allows.begin(), allows.end(), [](const auto& a) { return !a.product; });
  if (!form) form = any_general ? "general" : "product";
  for (const auto& a : allows)
    if (a.product != (*form == "product"))
      report.fail(*a.line, a.line->text,
                  *form == "product" ? "'moves' line in a product-form strategy"
                                     : "'allow' line in a general-form strategy");
  (void)any_product;

  // The default sink may name a fresh state with nothing permitted.
  std::optional<StateId> sink;
  if (default_line) {
    const auto names = split_ws(default_name);
    if (names.size() != 1) report.fail(*default_line, default_name, "default takes one state");
    sink = memory.has(names[0]) ? memory.lookup(*default_line, names[0], report)
                                : memory.add(*default_line, names[0], report);
  }

  const std::size_t k = alphabet->size();
  auto table = resolve_transitions(transitions, memory, *alphabet, report);
  for (StateId m = 0; m < memory.size(); ++m)
    for (Letter a = 0; a < k; ++a) {
      StateId& slot = table[m * k + a];
      if (slot != kNoState) continue;
      if (!sink)
        report.fail(lines.empty() ? 1 : lines.back().number, 1,
                    "missing transition for memory state '" + memory.names()[m] + "' on letter '" +
                        alphabet->letter_name(a) + "' (add a '_' line or a 'default:' state)");
      slot = *sink;
    }
  const StateId initial = memory.lookup(*initial_line, initial_name, report);

  LoadedStrategy out{FiniteMemoryStrategy(*alphabet, memory.size(), initial), memory.names(), game};
  std::vector<bool> seen_allow(memory.size(), false);
  if (*form == "product") {
    ProductStrategyVector vec(*alphabet, memory.size(), initial);
    for (const auto& a : allows) {
      const StateId m = memory.lookup(*a.line, a.state, report);
      if (seen_allow[m]) report.fail(*a.line, a.state, "second 'allow' line for this state");
      seen_allow[m] = true;
      const auto groups = split_groups(a.value);
      if (groups.size() != alphabet->players())
        report.fail(*a.line, a.value, "expected " + std::to_string(alphabet->players()) +
                                          " '|'-separated action lists");
      for (std::size_t i = 0; i < groups.size(); ++i)
        for (const auto name : groups[i]) {
          if (name == "-") continue;
          const auto x = alphabet->find_action(i, name);
          if (!x) report.fail(*a.line, name, "unknown action '" + std::string(name) + "' for player " + std::to_string(i + 1));
          vec.set_allowed_action(m, i, *x);
        }
    }
    for (StateId m = 0; m < memory.size(); ++m)
      for (Letter a = 0; a < k; ++a) vec.set_update(m, a, table[m * k + a]);
    out.strategy = std::move(vec);
  } else {
    FiniteMemoryStrategy general(*alphabet, memory.size(), initial);
    for (const auto& a : allows) {
      const StateId m = memory.lookup(*a.line, a.state, report);
      if (seen_allow[m]) report.fail(*a.line, a.state, "second 'moves' line for this state");
      seen_allow[m] = true;
      for (const auto token : split_ws(a.value)) {
        if (token == "-") continue;
        const auto letter = alphabet->find_letter(token);
        if (!letter) report.fail(*a.line, token, "unknown letter '" + std::string(token) + "'");
        general.set_allowed(m, *letter);
      }
    }
    for (StateId m = 0; m < memory.size(); ++m)
      for (Letter a = 0; a < k; ++a) general.set_update(m, a, table[m * k + a]);
    out.strategy = std::move(general);
  }
  return out;
}

namespace {

std::vector<std::string> memory_labels(std::size_t size, std::span<const std::string> names) {
  if (names.size() == size) return {names.begin(), names.end()};
  std::vector<std::string> out;
  for (std::size_t m = 0; m < size; ++m) out.push_back("m" + std::to_string(m));
  return out;
}

template <typename Strategy>
void format_updates(std::ostringstream& out, const Strategy& s, const std::vector<std::string>& names) {
  const MoveAlphabet& alphabet = s.alphabet();
  for (StateId m = 0; m < s.memory_size(); ++m) {
    // The most common target becomes the wildcard line.
    std::map<StateId, std::size_t> counts;
    for (Letter a = 0; a < alphabet.size(); ++a) ++counts[s.update(m, a)];
    const auto common = std::max_element(counts.begin(), counts.end(), [](const auto& x, const auto& y) {
                          return x.second < y.second;
                        })->first;
    for (Letter a = 0; a < alphabet.size(); ++a)
      if (s.update(m, a) != common)
        out << names[m] << " , " << alphabet.letter_name(a) << " -> " << names[s.update(m, a)] << "\n";
    out << names[m] << " , _ -> " << names[common] << "\n";
  }
}

}  // namespace

std::string format_strategy(const FiniteMemoryStrategy& strategy,
                            std::span<const std::string> memory_names) {
  const auto names = memory_labels(strategy.memory_size(), memory_names);
  const MoveAlphabet& alphabet = strategy.alphabet();
  std::ostringstream out;
  out << "alphabet: " << format_alphabet_spec(alphabet) << "\n";
  out << "form: general\n";
  out << "memory:";
  for (const auto& n : names) out << ' ' << n;
  out << "\ninitial: " << names[strategy.initial()] << "\n";
  for (StateId m = 0; m < strategy.memory_size(); ++m) {
    const auto moves = strategy.allowed_moves(m);
    out << "moves " << names[m] << ":";
    if (moves.empty()) out << " -";
    for (const Letter a : moves) out << ' ' << alphabet.letter_name(a);
    out << "\n";
  }
  format_updates(out, strategy, names);
  return out.str();
}

std::string format_strategy(const ProductStrategyVector& strategy,
                            std::span<const std::string> memory_names) {
  const auto names = memory_labels(strategy.memory_size(), memory_names);
  const MoveAlphabet& alphabet = strategy.alphabet();
  std::ostringstream out;
  out << "alphabet: " << format_alphabet_spec(alphabet) << "\n";
  out << "form: product\n";
  out << "memory:";
  for (const auto& n : names) out << ' ' << n;
  out << "\ninitial: " << names[strategy.initial()] << "\n";
  for (StateId m = 0; m < strategy.memory_size(); ++m) {
    out << "allow " << names[m] << ":";
    for (std::size_t i = 0; i < alphabet.players(); ++i) {
      if (i) out << " |";
      const auto acts = strategy.allowed_actions(m, i);
      if (acts.empty()) out << " -";
      for (const auto x : acts) out << ' ' << alphabet.actions(i)[x];
    }
    out << "\n";
  }
  format_updates(out, strategy, names);
  return out.str();
}

// ---------------------------------------------------------------------------
// Game files

Game parse_game(std::string_view text, const std::string& source) {
  const Reporter report(source);
  const auto lines = logical_lines(text);
  std::vector<std::string> players;
  const SourceLine* players_line = nullptr;
  std::map<std::string, std::vector<std::string>> actions;
  std::optional<MoveAlphabet> alphabet;
  std::vector<std::optional<std::vector<Rational>>> utility;

  for (const auto& line : lines) {
    const auto kv = split_key(line);
    if (!kv) report.fail(line, line.text, "expected 'key: value'");
    if (kv->key == "players") {
      if (players_line) report.fail(line, kv->key, "second 'players:' line");
      players_line = &line;
      for (const auto p : split_ws(kv->value)) {
        if (std::find(players.begin(), players.end(), p) != players.end())
          report.fail(line, p, "duplicate player '" + std::string(p) + "'");
        players.emplace_back(p);
      }
      if (players.empty()) report.fail(line, kv->value, "no players listed");
    } else if (starts_with_word(kv->key, "actions")) {
      const std::string_view who = trim(kv->key.substr(7));
      if (!players_line) report.fail(line, kv->key, "'actions' before 'players'");
      if (std::find(players.begin(), players.end(), who) == players.end())
        report.fail(line, who, "unknown player '" + std::string(who) + "'");
      if (actions.count(std::string(who))) report.fail(line, who, "second action list for this player");
      auto& list = actions[std::string(who)];
      for (const auto name : split_ws(kv->value)) list.emplace_back(name);
    } else {
      if (!alphabet) {
        if (!players_line) report.fail(line, line.text, "payoff line before 'players:'");
        std::vector<std::vector<std::string>> lists;
        for (const auto& p : players) {
          if (!actions.count(p)) report.fail(line, line.text, "missing action list for player '" + p + "'");
          lists.push_back(actions[p]);
        }
        try {
          alphabet = MoveAlphabet(std::move(lists));
        } catch (const std::invalid_argument& e) {
          report.fail(line, line.text, e.what());
        }
        utility.assign(alphabet->size(), std::nullopt);
      }
      const auto letter = alphabet->find_letter(kv->key);
      if (!letter) report.fail(line, kv->key, "unknown letter '" + std::string(kv->key) + "'");
      if (utility[*letter]) report.fail(line, kv->key, "second payoff line for this letter");
      const auto values = split_ws(kv->value);
      if (values.size() != players.size())
        report.fail(line, kv->value, "expected " + std::to_string(players.size()) + " payoff values");
      std::vector<Rational> row;
      for (const auto v : values) {
        try {
          row.push_back(parse_rational(v));
        } catch (const std::invalid_argument& e) {
          report.fail(line, v, e.what());
        }
      }
      utility[*letter] = std::move(row);
    }
  }
  if (!alphabet) report.fail(lines.empty() ? 1 : lines.back().number, 1, "no payoff lines");
  std::vector<std::vector<Rational>> table;
  for (Letter a = 0; a < alphabet->size(); ++a) {
    if (!utility[a])
      report.fail(lines.back().number, 1, "missing payoff line for '" + alphabet->letter_name(a) + "'");
    table.push_back(*utility[a]);
  }
  return Game(*alphabet, std::move(table), players);
}

std::string format_game(const Game& game) {
  std::ostringstream out;
  out << "players:";
  for (const auto& p : game.player_names()) out << ' ' << p;
  out << "\n";
  for (std::size_t i = 0; i < game.players(); ++i) {
    out << "actions " << game.player_names()[i] << ":";
    for (const auto& a : game.alphabet().actions(i)) out << ' ' << a;
    out << "\n";
  }
  for (Letter a = 0; a < game.alphabet().size(); ++a) {
    out << game.alphabet().letter_name(a) << " :";
    for (std::size_t i = 0; i < game.players(); ++i) out << ' ' << to_string(game.utility(a, i));
    out << "\n";
  }
  return out.str();
}

}  // namespace stratlang
