#include "enconv/ruleset.hpp"

#include <algorithm>
#include <charconv>
#include <climits>

#include "enconv/error.hpp"
#include "enconv/text.hpp"

namespace enconv::rules {

std::string Rule::display_name() const {
  return name.empty() ? "line " + std::to_string(line) : name;
}

RuleSet RuleSet::concat(std::span<const RuleSet> parts) {
  std::vector<Rule> all;
  for (const auto& part : parts) all.insert(all.end(), part.rules().begin(), part.rules().end());
  return RuleSet(std::move(all));
}

bool ConditionSet::matches(const Node* node) const {
  if (any()) return true;
  if (node == nullptr) return false;
  for (const auto& test : tests) {
    bool holds = false;
    switch (test.kind) {
      case Condition::Kind::Attribute:
        holds = node->has(test.value);
        break;
      case Condition::Kind::Headword: {
        std::string joined;
        for (const auto& m : node->morphemes) joined += m;
        holds = !node->is_marker() && joined == test.value;
        break;
      }
      case Condition::Kind::SentenceHead:
        holds = node->marker == Marker::SentenceHead;
        break;
      case Condition::Kind::SentenceTail:
        holds = node->marker == Marker::SentenceTail;
        break;
    }
    if (holds == test.negated) return false;
  }
  return true;
}

namespace {

bool is_word_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '#';
}

bool is_attribute_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c == '#' || c == '_' || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  });
}

class RuleParser {
 public:
  RuleParser(std::string_view line, std::string_view origin, std::size_t line_no,
             const unl::RelationRegistry* strict)
      : line_(line), origin_(origin), line_no_(line_no), strict_(strict) {}

  Rule parse() {
    Rule rule;
    rule.line = line_no_;
    rule.priority = integer();
    expect(':', "':' after priority");
    skip_ws();
    if (peek() == '"') rule.name = string_literal();

    expect_word("L", "left window 'L{'");
    rule.left = conditions();
    expect_word("R", "right window 'R{'");
    rule.right = conditions();
    skip_ws();
    if (peek_word() == "LL") {
      word();
      rule.left_context = conditions();
    }
    if (peek_word() == "RR") {
      word();
      rule.right_context = conditions();
    }
    skip_ws();
    if (!line_.substr(pos_).starts_with("=>")) fail("'=>'");
    pos_ += 2;

    while (true) {
      std::size_t at = pos_;
      std::string name = word();
      if (name == "STAY" || name == "SHIFT_R" || name == "SHIFT_L") {
        if (rule.actions.empty()) {
          pos_ = at;
          fail("action", "a rule needs at least one action");
        }
        rule.movement = name == "STAY"      ? Movement::Stay
                        : name == "SHIFT_R" ? Movement::ShiftRight
                                            : Movement::ShiftLeft;
        break;
      }
      pos_ = at;
      rule.actions.push_back(action());
      expect(';', "';' after action");
    }
    skip_ws();
    if (pos_ != line_.size()) fail("end of rule", "trailing text");

    if (rule.left.any() && rule.right.any()) {
      pos_ = 0;
      fail("window condition", "L{} and R{} cannot both be ANY");
    }
    if (rule.movement == Movement::ShiftLeft) {
      for (const auto& a : rule.actions) {
        if (std::holds_alternative<Rel>(a) || std::holds_alternative<Merge>(a)) {
          pos_ = 0;
          fail("movement", "a rule that deletes a node cannot SHIFT_L");
        }
      }
    }
    return rule;
  }

 private:
  [[noreturn]] void fail(const std::string& element, const std::string& detail = {}) const {
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < line_.size(); ++i) {
      if ((static_cast<unsigned char>(line_[i]) & 0xC0) != 0x80) ++col;
    }
    throw ParseError(std::string(origin_), line_no_, col, element, detail);
  }

  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  void expect(char c, const std::string& element) {
    skip_ws();
    if (peek() != c) fail(element);
    ++pos_;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.size() && is_word_char(line_[pos_])) ++pos_;
    return std::string(line_.substr(start, pos_ - start));
  }

  std::string peek_word() {
    std::size_t saved = pos_;
    std::string w = word();
    pos_ = saved;
    return w;
  }

  void expect_word(std::string_view w, const std::string& element) {
    std::size_t at = pos_;
    if (word() != w) {
      pos_ = at;
      skip_ws();
      fail(element);
    }
  }

  int integer() {
    skip_ws();
    int value = 0;
    auto begin = line_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, line_.data() + line_.size(), value);
    if (ec != std::errc() || ptr == begin) fail("integer priority");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::string string_literal() {
    expect('"', "opening '\"'");
    auto end = line_.find('"', pos_);
    if (end == std::string_view::npos) fail("closing '\"'");
    std::string out(line_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return out;
  }

  ConditionSet conditions() {
    expect('{', "'{'");
    ConditionSet set;
    skip_ws();
    if (peek_word() == "ANY") {
      word();
      expect('}', "'}' after ANY");
      return set;
    }
    while (true) {
      Condition cond;
      skip_ws();
      if (peek() == '!') {
        cond.negated = true;
        ++pos_;
      }
      std::size_t at = pos_;
      std::string w = word();
      if (w == "SHEAD") {
        cond.kind = Condition::Kind::SentenceHead;
      } else if (w == "STAIL") {
        cond.kind = Condition::Kind::SentenceTail;
      } else if (w == "HW") {
        expect('=', "'=' after HW");
        skip_ws();
        cond.kind = Condition::Kind::Headword;
        try {
          cond.value = text::nfc(string_literal());
        } catch (const std::invalid_argument& e) {
          fail("headword", e.what());
        }
      } else if (is_attribute_token(w)) {
        cond.value = w;
      } else {
        pos_ = at;
        fail("condition");
      }
      set.tests.push_back(std::move(cond));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}', "'}' closing conditions");
      return set;
    }
  }

  Window window_arg() {
    std::size_t at = pos_;
    std::string w = word();
    if (w == "L") return Window::Left;
    if (w == "R") return Window::Right;
    pos_ = at;
    skip_ws();
    fail("window L or R");
  }

  Action action() {
    skip_ws();
    std::size_t at = pos_;
    std::string name = word();
    if (name == "SWAP") return Swap{};
    if (name == "NOP") return Nop{};
    if (name == "ADD_ATTR" || name == "DEL_ATTR") {
      expect('(', "'(' after " + name);
      Window w = window_arg();
      expect(',', "','");
      std::size_t attr_at = pos_;
      std::string attr = word();
      if (!is_attribute_token(attr)) {
        pos_ = attr_at;
        skip_ws();
        fail("attribute");
      }
      expect(')', "')'");
      if (name == "ADD_ATTR") return AddAttr{w, attr};
      return DelAttr{w, attr};
    }
    if (name == "MERGE" || name == "REFER") {
      expect('(', "'(' after " + name);
      Window w = window_arg();
      expect(')', "')'");
      if (name == "MERGE") return Merge{w};
      return Refer{w};
    }
    if (name == "REL") {
      expect('(', "'(' after REL");
      std::size_t label_at = pos_;
      std::string label = word();
      if (!unl::is_relation_label(label)) {
        pos_ = label_at;
        skip_ws();
        fail("relation label");
      }
      if (strict_ && !strict_->contains(label)) {
        pos_ = label_at;
        skip_ws();
        fail("relation label", "'" + label + "' is not registered");
      }
      expect(',', "','");
      Window head = window_arg();
      expect(',', "','");
      Window dep = window_arg();
      expect(')', "')'");
      if (head == dep) fail("relation windows", "head and dependent must differ");
      return Rel{label, head, dep};
    }
    if (name == "UNL_ATTR") {
      expect('(', "'(' after UNL_ATTR");
      Window w = window_arg();
      expect(',', "','");
      skip_ws();
      std::size_t label_at = pos_;
      if (peek() != '@') fail("UNL attribute label");
      ++pos_;
      std::string label = "@" + word();
      if (!unl::is_attribute_label(label)) {
        pos_ = label_at;
        fail("UNL attribute label");
      }
      expect(')', "')'");
      return UnlAttr{w, label};
    }
    if (name == "INSERT") {
      expect('(', "'(' after INSERT");
      skip_ws();
      std::string hw = string_literal();
      if (hw.empty()) fail("headword", "empty");
      expect(',', "','");
      Window side = window_arg();
      expect(')', "')'");
      try {
        return Insert{text::nfc(hw), side};
      } catch (const std::invalid_argument& e) {
        fail("headword", e.what());
      }
    }
    pos_ = at;
    skip_ws();
    fail("action", name.empty() ? std::string{} : "unknown action '" + name + "'");
  }

  std::string_view line_;
  std::string_view origin_;
  std::size_t line_no_;
  const unl::RelationRegistry* strict_;
  std::size_t pos_ = 0;
};

std::string render(const ConditionSet& set) {
  if (set.any()) return "ANY";
  std::string out;
  for (std::size_t i = 0; i < set.tests.size(); ++i) {
    const auto& t = set.tests[i];
    if (i > 0) out += ",";
    if (t.negated) out += "!";
    switch (t.kind) {
      case Condition::Kind::Attribute: out += t.value; break;
      case Condition::Kind::Headword: out += "HW=\"" + t.value + "\""; break;
      case Condition::Kind::SentenceHead: out += "SHEAD"; break;
      case Condition::Kind::SentenceTail: out += "STAIL"; break;
    }
  }
  return out;
}

const char* window_name(Window w) { return w == Window::Left ? "L" : "R"; }

std::string render(const Action& action) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AddAttr>) {
          return "ADD_ATTR(" + std::string(window_name(a.window)) + "," + a.attribute + ")";
        } else if constexpr (std::is_same_v<T, DelAttr>) {
          return "DEL_ATTR(" + std::string(window_name(a.window)) + "," + a.attribute + ")";
        } else if constexpr (std::is_same_v<T, Merge>) {
          return "MERGE(" + std::string(window_name(a.into)) + ")";
        } else if constexpr (std::is_same_v<T, Rel>) {
          return "REL(" + a.label + "," + window_name(a.head) + "," + window_name(a.dependent) + ")";
        } else if constexpr (std::is_same_v<T, UnlAttr>) {
          return "UNL_ATTR(" + std::string(window_name(a.window)) + "," + a.label + ")";
        } else if constexpr (std::is_same_v<T, Swap>) {
          return "SWAP";
        } else if constexpr (std::is_same_v<T, Insert>) {
          return "INSERT(\"" + a.headword + "\"," + window_name(a.side) + ")";
        } else if constexpr (std::is_same_v<T, Refer>) {
          return "REFER(" + std::string(window_name(a.window)) + ")";
        } else {
          return "NOP";
        }
      },
      action);
}

}  // namespace

RuleSet parse_rules(std::string_view source, std::string_view origin,
                    const unl::RelationRegistry* strict) {
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    auto end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    auto trimmed = text::trim(line);
    if (!trimmed.empty() && trimmed.front() != '#') {
      rules.push_back(RuleParser(line, origin, line_no, strict).parse());
    }
    if (end == source.size()) break;
    start = end + 1;
  }
  return RuleSet(std::move(rules));
}

std::string render(const Rule& rule) {
  std::string out = std::to_string(rule.priority) + ":";
  if (!rule.name.empty()) out += " \"" + rule.name + "\"";
  out += " L{" + render(rule.left) + "} R{" + render(rule.right) + "}";
  if (rule.left_context) out += " LL{" + render(*rule.left_context) + "}";
  if (rule.right_context) out += " RR{" + render(*rule.right_context) + "}";
  out += " =>";
  for (const auto& a : rule.actions) out += " " + render(a) + ";";
  switch (rule.movement) {
    case Movement::Stay: out += " STAY"; break;
    case Movement::ShiftRight: out += " SHIFT_R"; break;
    case Movement::ShiftLeft: out += " SHIFT_L"; break;
  }
  return out;
}

std::string render(const RuleSet& rules) {
  std::string out;
  for (const auto& r : rules.rules()) out += render(r) + "\n";
  return out;
}

bool applicable(const Rule& rule, const MachineState& state) {
  return rule.left.matches(&state.left()) && rule.right.matches(&state.right()) &&
         (!rule.left_context || rule.left_context->matches(state.left_context())) &&
         (!rule.right_context || rule.right_context->matches(state.right_context()));
}

std::optional<Match> select_rule(const RuleSet& rules, const MachineState& state) {
  const Rule* best = nullptr;
  for (const auto& rule : rules.rules()) {
    if ((best == nullptr || rule.priority > best->priority) && applicable(rule, state)) {
      best = &rule;
    }
  }
  if (best == nullptr) return std::nullopt;
  return Match{best, state.window, &state.left(), &state.right(), state.left_context(),
               state.right_context()};
}

RuleKind classify(const Rule& rule) {
  auto has = [&](auto pred) { return std::any_of(rule.actions.begin(), rule.actions.end(), pred); };
  if (has([](const Action& a) { return std::holds_alternative<Rel>(a); })) return RuleKind::Composition;
  if (has([](const Action& a) {
        return std::holds_alternative<Insert>(a) || std::holds_alternative<Swap>(a) ||
               std::holds_alternative<Refer>(a);
      })) {
    return RuleKind::SpecificConstruct;
  }
  if (has([](const Action& a) { return std::holds_alternative<Merge>(a); })) return RuleKind::Morphological;
  if (has([](const Action& a) {
        return std::holds_alternative<AddAttr>(a) || std::holds_alternative<DelAttr>(a) ||
               std::holds_alternative<UnlAttr>(a);
      })) {
    return RuleKind::Modification;
  }
  return RuleKind::Shift;
}

std::string_view kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Morphological: return "morphological";
    case RuleKind::SpecificConstruct: return "specific-construct";
    case RuleKind::Modification: return "modification";
    case RuleKind::Composition: return "composition";
    case RuleKind::Shift: return "shift";
  }
  return "unknown";
}

std::pair<int, int> band(RuleKind kind) {
  switch (kind) {
    case RuleKind::Morphological: return {200, INT_MAX};
    case RuleKind::SpecificConstruct: return {150, 199};
    case RuleKind::Modification: return {100, 149};
    case RuleKind::Composition: return {50, 99};
    case RuleKind::Shift: return {0, 49};
  }
  return {0, 0};
}

std::vector<BandViolation> check_bands(const RuleSet& rules) {
  std::vector<BandViolation> out;
  for (const auto& rule : rules.rules()) {
    RuleKind kind = classify(rule);
    auto [lo, hi] = band(kind);
    if (rule.priority < lo || rule.priority > hi) {
      std::string range = hi == INT_MAX ? ">= " + std::to_string(lo)
                                        : std::to_string(lo) + ".." + std::to_string(hi);
      out.push_back({&rule, kind,
                     "rule '" + rule.display_name() + "' is a " + std::string(kind_name(kind)) +
                         " rule at priority " + std::to_string(rule.priority) + "; band is " + range});
    }
  }
  return out;
}

std::vector<std::pair<const Rule*, std::string>> unknown_labels(const RuleSet& rules,
                                                                const unl::RelationRegistry& registry) {
  std::vector<std::pair<const Rule*, std::string>> out;
  for (const auto& rule : rules.rules()) {
    for (const auto& a : rule.actions) {
      if (const auto* rel = std::get_if<Rel>(&a); rel && !registry.contains(rel->label)) {
        out.emplace_back(&rule, rel->label);
      }
    }
  }
  return out;
}

}  // namespace enconv::rules
