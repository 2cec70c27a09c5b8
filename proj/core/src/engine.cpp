#include "enconv/engine.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "enconv/morphology.hpp"
#include "enconv/text.hpp"

namespace enconv {

std::string Node::surface() const {
  std::string out;
  for (std::size_t i = 0; i < morphemes.size(); ++i) {
    if (i > 0) out += " ";
    out += morphemes[i];
  }
  return out;
}

AntecedentKey antecedent_key(const Node& node) {
  AntecedentKey key;
  if (node.has("MALE")) key.gender = "MALE";
  if (node.has("FEMALE")) key.gender = "FEMALE";
  for (const auto& attr : node.attributes) {
    if (attr.ends_with("SG")) key.number = "SG";
    if (attr.ends_with("PL")) key.number = "PL";
  }
  return key;
}

std::string_view kind_name(AnalysisError::Kind kind) {
  switch (kind) {
    case AnalysisError::Kind::EmptySentence: return "empty-sentence";
    case AnalysisError::Kind::UnknownWord: return "unknown-word";
    case AnalysisError::Kind::DeadEnd: return "dead-end";
    case AnalysisError::Kind::BudgetExceeded: return "budget-exceeded";
    case AnalysisError::Kind::Cycle: return "cycle";
    case AnalysisError::Kind::InvalidAction: return "invalid-action";
  }
  return "unknown";
}

namespace {

using rules::Window;

void add_unique(std::vector<std::string>& list, const std::string& value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

unl::UwInstance instance_of(const Node& node) {
  return unl::UwInstance{node.uw, node.pending, node.instance_id};
}

std::string fingerprint(const MachineState& state) {
  std::string fp = std::to_string(state.window);
  for (const auto& n : state.nodes) {
    fp += '|';
    fp += std::to_string(n.instance_id);
    fp += ':';
    fp += unl::render(n.uw);
    fp += ':';
    fp += std::to_string(n.morphemes.size());
    for (const auto& a : n.attributes) fp += "," + a;
    for (const auto& p : n.pending) fp += "," + p;
  }
  return fp;
}

[[noreturn]] void fail(const MachineState& state, AnalysisError::Kind kind, const std::string& message) {
  throw AnalysisError(kind, message, state.trace);
}

std::string window_text(const MachineState& state) {
  auto name = [](const Node& n) -> std::string {
    if (n.marker == Marker::SentenceHead) return "SHEAD";
    if (n.marker == Marker::SentenceTail) return "STAIL";
    return n.surface();
  };
  return "(" + name(state.left()) + ", " + name(state.right()) + ")";
}

}  // namespace

Analyzer::Analyzer(const Lexicon& lexicon, const rules::RuleSet& rules, EngineOptions options)
    : lexicon_(lexicon), rules_(rules), options_(options) {}

MachineState Analyzer::init(std::string_view sentence) const {
  std::string input;
  try {
    input = text::nfc(sentence);
  } catch (const std::invalid_argument& e) {
    throw AnalysisError(AnalysisError::Kind::EmptySentence, e.what());
  }
  MachineState state;
  Node head;
  head.marker = Marker::SentenceHead;
  head.instance_id = state.next_id++;
  head.explored = true;
  state.nodes.push_back(std::move(head));

  std::size_t pos = 0;
  while (pos < input.size()) {
    std::size_t next = pos;
    if (text::is_space(text::next_code_point(input, next))) {
      pos = next;
      continue;
    }
    auto segmentations = morphology::segment(lexicon_, input, pos, 1);
    if (segmentations.empty()) {
      std::size_t end = morphology::word_end(input, pos);
      throw AnalysisError(AnalysisError::Kind::UnknownWord,
                          "unknown word '" + input.substr(pos, end - pos) + "' at offset " +
                              std::to_string(text::code_point_count(std::string_view(input).substr(0, pos))));
    }
    const auto& seg = segmentations.front();
    auto push = [&](const LexEntry* entry) {
      Node node;
      node.morphemes = {entry->headword};
      node.entry = entry;
      node.uw = entry->uw;
      node.attributes = entry->attribute_set();
      node.instance_id = state.next_id++;
      state.nodes.push_back(std::move(node));
    };
    push(seg.root);
    for (const auto* suffix : seg.suffixes) push(suffix);
    pos += seg.consumed;
  }

  if (state.nodes.size() == 1) {
    throw AnalysisError(AnalysisError::Kind::EmptySentence, "sentence has no words");
  }
  Node tail;
  tail.marker = Marker::SentenceTail;
  tail.instance_id = state.next_id++;
  state.nodes.push_back(std::move(tail));
  state.nodes[1].explored = true;
  state.window = 0;
  state.budget = options_.budget.value_or(options_.budget_factor * state.nodes.size());
  return state;
}

bool Analyzer::is_final(const MachineState& state) const {
  return state.content_count() == 1 && state.window + 2 == state.nodes.size();
}

std::optional<TraceRecord> Analyzer::step(MachineState& state) const {
  auto match = rules::select_rule(rules_, state);
  if (!match) {
    if (is_final(state)) return std::nullopt;
    fail(state, AnalysisError::Kind::DeadEnd, "dead end: no rule applies at " + window_text(state));
  }
  if (state.steps >= state.budget) {
    fail(state, AnalysisError::Kind::BudgetExceeded,
         "step budget of " + std::to_string(state.budget) + " exceeded");
  }
  if (!state.seen.insert(fingerprint(state)).second) {
    fail(state, AnalysisError::Kind::Cycle,
         "cycle: state repeats before rule '" + match->rule->display_name() + "' at " + window_text(state));
  }

  std::string before = render_state(state);
  apply(state, *match->rule);

  state.left().explored = true;
  state.right().explored = true;
  const Node& law = state.left();
  if (law.has("N") && law.has("ANI")) {
    state.antecedents[antecedent_key(law)] = Antecedent{law.uw, law.instance_id};
  }
  ++state.steps;

  TraceRecord record;
  record.step = state.steps;
  record.rule = match->rule->display_name();
  record.window = state.window;
  record.before = std::move(before);
  record.rendered = render_state(state);
  record.movement_only = std::all_of(match->rule->actions.begin(), match->rule->actions.end(),
                                     [](const rules::Action& a) { return std::holds_alternative<rules::Nop>(a); });
  for (const auto& n : state.nodes) {
    if (n.is_marker()) continue;
    record.nodes.push_back({n.surface(), {n.attributes.begin(), n.attributes.end()}, n.pending});
  }
  state.trace.push_back(record);
  return record;
}

void Analyzer::apply(MachineState& state, const rules::Rule& rule) const {
  auto index_of = [&](Window w) { return w == Window::Left ? state.window : state.window + 1; };
  auto content = [&](Window w, std::string_view action) -> Node& {
    Node& node = state.nodes[index_of(w)];
    if (node.is_marker()) {
      fail(state, AnalysisError::Kind::InvalidAction,
           std::string(action) + " in rule '" + rule.display_name() + "' targets a sentence marker");
    }
    return node;
  };

  for (const auto& action : rule.actions) {
    if (const auto* a = std::get_if<rules::AddAttr>(&action)) {
      content(a->window, "ADD_ATTR").attributes.insert(a->attribute);
    } else if (const auto* a = std::get_if<rules::DelAttr>(&action)) {
      content(a->window, "DEL_ATTR").attributes.erase(a->attribute);
    } else if (const auto* a = std::get_if<rules::UnlAttr>(&action)) {
      add_unique(content(a->window, "UNL_ATTR").pending, a->label);
    } else if (const auto* a = std::get_if<rules::Merge>(&action)) {
      content(Window::Left, "MERGE");
      content(Window::Right, "MERGE");
      std::size_t li = state.window;
      Node& survivor = state.nodes[index_of(a->into)];
      const Node& absorbed = state.nodes[index_of(a->into == Window::Left ? Window::Right : Window::Left)];
      auto merged = morphology::merge_attributes(survivor.attributes, absorbed.attributes);
      std::vector<std::string> morphemes = state.nodes[li].morphemes;
      morphemes.insert(morphemes.end(), state.nodes[li + 1].morphemes.begin(),
                       state.nodes[li + 1].morphemes.end());
      std::vector<std::string> pending = survivor.pending;
      for (const auto& p : absorbed.pending) add_unique(pending, p);
      for (const auto& p : merged.pending) add_unique(pending, p);
      for (auto& rel : state.emitted) {
        if (rel.head_id == absorbed.instance_id) rel.head_id = survivor.instance_id;
        if (rel.dependent_id == absorbed.instance_id) rel.dependent_id = survivor.instance_id;
      }
      survivor.morphemes = std::move(morphemes);
      survivor.attributes = std::move(merged.attributes);
      survivor.pending = std::move(pending);
      Node kept = std::move(survivor);
      state.nodes[li] = std::move(kept);
      state.nodes.erase(state.nodes.begin() + static_cast<std::ptrdiff_t>(li + 1));
      // Survivor under RAW, its left neighbour under LAW.
      state.window = li - 1;
    } else if (const auto* a = std::get_if<rules::Rel>(&action)) {
      const Node& head = content(a->head, "REL");
      const Node& dep = content(a->dependent, "REL");
      if (head.instance_id == dep.instance_id) {
        fail(state, AnalysisError::Kind::InvalidAction,
             "REL in rule '" + rule.display_name() + "' would relate an instance to itself");
      }
      state.instances[head.instance_id] = instance_of(head);
      state.instances[dep.instance_id] = instance_of(dep);
      state.emitted.push_back({a->label, head.instance_id, dep.instance_id});
      std::size_t li = state.window;
      state.nodes.erase(state.nodes.begin() + static_cast<std::ptrdiff_t>(index_of(a->dependent)));
      state.window = li - 1;
    } else if (std::holds_alternative<rules::Swap>(action)) {
      content(Window::Left, "SWAP");
      content(Window::Right, "SWAP");
      std::swap(state.nodes[state.window], state.nodes[state.window + 1]);
    } else if (const auto* a = std::get_if<rules::Insert>(&action)) {
      auto matches = lexicon_.lookup(a->headword);
      if (matches.size() != 1) {
        fail(state, AnalysisError::Kind::InvalidAction,
             "INSERT(\"" + a->headword + "\") in rule '" + rule.display_name() + "': " +
                 (matches.empty() ? "headword not in lexicon" : "headword is ambiguous"));
      }
      const LexEntry& entry = lexicon_.entries()[matches.front()];
      Node node;
      node.morphemes = {entry.headword};
      node.entry = &entry;
      node.uw = entry.uw;
      node.attributes = entry.attribute_set();
      node.instance_id = state.next_id++;
      node.explored = true;
      if (a->side == Window::Left) {
        content(Window::Left, "INSERT");
        state.nodes.insert(state.nodes.begin() + static_cast<std::ptrdiff_t>(state.window), std::move(node));
        ++state.window;
      } else {
        content(Window::Right, "INSERT");
        state.nodes.insert(state.nodes.begin() + static_cast<std::ptrdiff_t>(state.window + 2),
                           std::move(node));
      }
    } else if (const auto* a = std::get_if<rules::Refer>(&action)) {
      Node& node = content(a->window, "REFER");
      auto key = antecedent_key(node);
      auto it = state.antecedents.find(key);
      if (it == state.antecedents.end()) {
        fail(state, AnalysisError::Kind::InvalidAction,
             "REFER in rule '" + rule.display_name() + "': no antecedent for '" + node.surface() + "'");
      }
      node.uw = it->second.uw;
      node.instance_id = it->second.instance_id;
      state.linked_ids.insert(node.instance_id);
    }
  }

  switch (rule.movement) {
    case rules::Movement::Stay:
      break;
    case rules::Movement::ShiftRight:
      if (state.window + 2 >= state.nodes.size()) {
        fail(state, AnalysisError::Kind::InvalidAction,
             "rule '" + rule.display_name() + "' shifts right past STAIL");
      }
      ++state.window;
      break;
    case rules::Movement::ShiftLeft:
      if (state.window == 0) {
        fail(state, AnalysisError::Kind::InvalidAction,
             "rule '" + rule.display_name() + "' shifts left past SHEAD");
      }
      --state.window;
      break;
  }
}

AnalysisResult Analyzer::finish(MachineState state) const {
  if (!is_final(state)) {
    fail(state, AnalysisError::Kind::DeadEnd, "analysis stopped before a final state");
  }
  const Node& survivor = state.nodes[1];
  if (survivor.uw.empty()) {
    fail(state, AnalysisError::Kind::DeadEnd, "final node '" + survivor.surface() + "' has no universal word");
  }
  unl::UwInstance entry = instance_of(survivor);
  entry.attributes = {"@entry"};
  for (const auto& p : survivor.pending) add_unique(entry.attributes, p);
  state.instances[survivor.instance_id] = entry;

  // Which instances carry a rendered ":NN".
  std::map<int, int> dependent_uses;
  for (const auto& rel : state.emitted) ++dependent_uses[rel.dependent_id];
  std::map<std::string, std::set<int>> ids_by_uw;
  for (const auto& rel : state.emitted) {
    for (int id : {rel.head_id, rel.dependent_id}) {
      ids_by_uw[unl::render(state.instances.at(id).uw)].insert(id);
    }
  }
  auto tagged = [&](int id) {
    if (options_.ids == IdPolicy::Always) return true;
    return state.linked_ids.contains(id) || dependent_uses[id] >= 2 ||
           ids_by_uw[unl::render(state.instances.at(id).uw)].size() > 1;
  };
  std::map<int, int> display;
  auto display_id = [&](int id) -> std::optional<int> {
    if (!tagged(id)) return std::nullopt;
    auto [it, inserted] = display.try_emplace(id, static_cast<int>(display.size()) + 1);
    return it->second;
  };

  AnalysisResult result;
  for (const auto& rel : state.emitted) {
    unl::UwInstance head = state.instances.at(rel.head_id);
    head.instance_id = display_id(rel.head_id);
    unl::UwInstance dep = state.instances.at(rel.dependent_id);
    dep.instance_id = display_id(rel.dependent_id);
    result.expression.relations.push_back({rel.label, std::move(head), std::move(dep)});
  }
  result.entry = entry;
  result.entry.instance_id = display_id(survivor.instance_id);
  if (state.emitted.empty() && options_.ids == IdPolicy::Minimal) result.entry.instance_id.reset();
  result.trace = std::move(state.trace);
  return result;
}

AnalysisResult Analyzer::run(std::string_view sentence) const {
  MachineState state = init(sentence);
  while (step(state)) {
  }
  return finish(std::move(state));
}

std::string render_state(const MachineState& state) {
  std::vector<std::string> items;
  std::string unexplored;
  auto flush = [&] {
    if (!unexplored.empty()) items.push_back("\"" + unexplored + "\"");
    unexplored.clear();
  };
  for (std::size_t i = 0; i < state.nodes.size(); ++i) {
    const Node& n = state.nodes[i];
    if (n.is_marker()) continue;
    if (i == state.window || i == state.window + 1) {
      flush();
      items.push_back("[" + n.surface() + "]");
    } else if (n.explored) {
      flush();
      items.push_back(n.surface());
    } else {
      if (!unexplored.empty()) unexplored += " ";
      unexplored += n.surface();
    }
  }
  flush();
  std::string out = "/<</ ";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += " / ";
    out += items[i];
  }
  out += items.empty() ? "/>>/" : " />>/";
  return out;
}

std::string render_trace(std::span<const TraceRecord> trace) {
  std::vector<std::string> lines;
  for (const auto& record : trace) {
    if (record.movement_only) continue;
    if (lines.empty()) lines.push_back(record.before);
    if (lines.back() != record.rendered) lines.push_back(record.rendered);
  }
  if (!trace.empty() && (lines.empty() || lines.back() != trace.back().rendered)) {
    lines.push_back(trace.back().rendered);
  }
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

std::string render_records(std::span<const TraceRecord> trace) {
  std::string out;
  for (const auto& record : trace) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : record.nodes) {
      nodes.push_back({{"surface", n.surface}, {"attributes", n.attributes}, {"pending", n.pending}});
    }
    nlohmann::json j = {{"step", record.step},
                        {"rule", record.rule},
                        {"window", record.window},
                        {"before", record.before},
                        {"after", record.rendered},
                        {"nodes", std::move(nodes)}};
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace enconv
