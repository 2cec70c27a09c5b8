#include <doctest.h>

#include <random>

#include "enconv/error.hpp"
#include "enconv/ruleset.hpp"
#include "support.hpp"

using namespace enconv;
using namespace enconv::rules;

namespace {

Node node(std::string surface, AttributeSet attributes) {
  Node n;
  n.morphemes = {std::move(surface)};
  n.attributes = std::move(attributes);
  return n;
}

Node marker(Marker m) {
  Node n;
  n.marker = m;
  return n;
}

// SHEAD, content..., STAIL with LAW at `window`.
MachineState state_of(std::vector<Node> content, std::size_t window) {
  MachineState s;
  s.nodes.push_back(marker(Marker::SentenceHead));
  for (auto& n : content) s.nodes.push_back(std::move(n));
  s.nodes.push_back(marker(Marker::SentenceTail));
  s.window = window;
  return s;
}

std::string selected(const RuleSet& rules, const MachineState& s) {
  auto m = select_rule(rules, s);
  return m ? m->rule->display_name() : "<none>";
}

}  // namespace

TEST_CASE("parse_rules reads the rule line grammar") {
  auto rs = parse_rules(R"(210: "noun-case" L{N,PLACE} R{CASE} => ADD_ATTR(L,PLC); MERGE(L) ; STAY)", "t");
  REQUIRE(rs.size() == 1);
  const auto& r = rs.rules()[0];
  CHECK(r.name == "noun-case");
  CHECK(r.priority == 210);
  CHECK(r.left.tests.size() == 2);
  CHECK(r.right.tests == std::vector<Condition>{{Condition::Kind::Attribute, "CASE", false}});
  REQUIRE(r.actions.size() == 2);
  CHECK(std::get<AddAttr>(r.actions[0]) == AddAttr{Window::Left, "PLC"});
  CHECK(std::get<Merge>(r.actions[1]) == Merge{Window::Left});
  CHECK(r.movement == Movement::Stay);

  auto rel = parse_rules("90: L{ADV} R{PRED} => REL(man,R,L) ; STAY", "t");
  REQUIRE(rel.size() == 1);
  CHECK(rel.rules()[0].name.empty());
  CHECK(rel.rules()[0].display_name() == "line 1");
  CHECK(std::get<Rel>(rel.rules()[0].actions[0]) == Rel{"man", Window::Right, Window::Left});

  CHECK(parse_rules("", "t").empty());
  CHECK(parse_rules("# only a comment\n\n", "t").empty());
}

TEST_CASE("parse_rules accepts every condition and action form") {
  auto rs = parse_rules(
      R"(150: "all" L{!N,HW="আজ",SHEAD} R{ANY} LL{STAIL} RR{!STAIL} => DEL_ATTR(R,X); UNL_ATTR(L,@pl); SWAP; INSERT("আমি",R); REFER(L); NOP; SHIFT_R)",
      "t");
  REQUIRE(rs.size() == 1);
  const auto& r = rs.rules()[0];
  CHECK(r.left.tests[0] == Condition{Condition::Kind::Attribute, "N", true});
  CHECK(r.left.tests[1] == Condition{Condition::Kind::Headword, "আজ", false});
  CHECK(r.left.tests[2].kind == Condition::Kind::SentenceHead);
  CHECK(r.right.any());
  REQUIRE(r.left_context);
  REQUIRE(r.right_context);
  CHECK(r.right_context->tests[0] == Condition{Condition::Kind::SentenceTail, "", true});
  CHECK(r.actions.size() == 6);
  CHECK(std::get<Insert>(r.actions[3]) == Insert{"আমি", Window::Right});
  CHECK(r.movement == Movement::ShiftRight);
}

TEST_CASE("rule syntax errors are positioned") {
  auto fails = [](std::string_view source, std::size_t line) {
    try {
      parse_rules(source, "bad.rules");
    } catch (const ParseError& e) {
      CHECK(e.origin() == "bad.rules");
      CHECK(e.line() == line);
      return;
    }
    FAIL("accepted: " << source);
  };
  fails("x: L{N} R{N} => NOP; STAY", 1);
  fails("1: L{N} R{N} NOP; STAY", 1);
  fails("\n1: L{N} R{N} => FROB(L); STAY", 2);
  fails("1: L{ANY} R{ANY} => NOP; SHIFT_R", 1);
  fails("60: L{N} R{V} => REL(agt,R,L); SHIFT_L", 1);
  fails("60: L{N} R{V} => MERGE(L); SHIFT_L", 1);
  fails("60: L{N} R{V} => REL(agt,R,R); STAY", 1);
  fails("60: L{N} R{V} => UNL_ATTR(L,pl); STAY", 1);
  fails("60: L{N} R{V} => NOP; JUMP", 1);
  fails("60: L{N} R{V} => NOP", 1);
  fails("60: L{n} R{V} => NOP; STAY", 1);
  fails("60: \"unterminated L{N} R{V} => NOP; STAY", 1);
}

TEST_CASE("strict mode checks REL labels against the registry") {
  auto registry = unl::RelationRegistry::builtin();
  std::string_view src = "60: L{N} R{V} => REL(aoj,R,L); STAY";
  CHECK_NOTHROW(parse_rules(src, "t"));
  CHECK_THROWS_AS(parse_rules(src, "t", &registry), ParseError);

  auto rs = parse_rules(src, "t");
  auto unknown = unknown_labels(rs, registry);
  REQUIRE(unknown.size() == 1);
  CHECK(unknown[0].second == "aoj");
  CHECK(unknown_labels(testing::reference_rules(), registry).empty());
}

TEST_CASE("render is the inverse of parse_rules") {
  const auto& reference = testing::reference_rules();
  CHECK(parse_rules(render(reference), "again") == reference);
  for (const auto& rule : reference.rules()) {
    auto line = render(rule);
    auto again = parse_rules(line, "line");
    REQUIRE(again.size() == 1);
    CHECK(render(again.rules()[0]) == line);
  }
  CHECK(render(reference.rules()[0]) ==
        R"(220: "verb-inflection" L{ROOT} R{VI,!PRED} => ADD_ATTR(L,PRED); MERGE(L); STAY)");
}

TEST_CASE("render round-trips generated rules") {
  std::mt19937 rng(17);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<std::string> attrs = {"N", "V", "ADJ", "#AGT", "PLC", "X_1"};
  auto conds = [&] {
    ConditionSet set;
    for (int i = pick(0, 3); i > 0; --i) {
      switch (pick(0, 3)) {
        case 0: set.tests.push_back({Condition::Kind::Headword, pick(0, 1) ? "আজ" : "x y", pick(0, 1) == 1}); break;
        case 1: set.tests.push_back({Condition::Kind::SentenceHead, "", pick(0, 1) == 1}); break;
        case 2: set.tests.push_back({Condition::Kind::SentenceTail, "", pick(0, 1) == 1}); break;
        default: set.tests.push_back({Condition::Kind::Attribute, attrs[pick(0, 5)], pick(0, 1) == 1}); break;
      }
    }
    return set;
  };
  auto window = [&] { return pick(0, 1) ? Window::Left : Window::Right; };
  for (int i = 0; i < 300; ++i) {
    Rule r;
    r.name = pick(0, 2) ? "rule-" + std::to_string(i) : "";
    r.priority = pick(0, 300);
    do {
      r.left = conds();
      r.right = conds();
    } while (r.left.any() && r.right.any());
    if (pick(0, 1)) r.left_context = conds();
    if (pick(0, 1)) r.right_context = conds();
    bool deletes = false;
    for (int a = pick(1, 3); a > 0; --a) {
      switch (pick(0, 8)) {
        case 0: r.actions.push_back(AddAttr{window(), attrs[pick(0, 5)]}); break;
        case 1: r.actions.push_back(DelAttr{window(), attrs[pick(0, 5)]}); break;
        case 2: r.actions.push_back(Merge{window()}); deletes = true; break;
        case 3: r.actions.push_back(Rel{"agt", Window::Right, Window::Left}); deletes = true; break;
        case 4: r.actions.push_back(UnlAttr{window(), "@past"}); break;
        case 5: r.actions.push_back(Swap{}); break;
        case 6: r.actions.push_back(Insert{"আমি", window()}); break;
        case 7: r.actions.push_back(Refer{window()}); break;
        default: r.actions.push_back(Nop{}); break;
      }
    }
    r.movement = static_cast<Movement>(pick(0, deletes ? 1 : 2));
    auto parsed = parse_rules(render(r), "gen");
    REQUIRE(parsed.size() == 1);
    CHECK(parsed.rules()[0] == r);
  }
}

TEST_CASE("select_rule prefers priority, then file order") {
  auto rules = parse_rules(
      "60: \"compose\" L{ADV} R{PRED} => REL(man,R,L); STAY\n"
      "210: \"morph\" L{ADV} R{PRED} => MERGE(L); STAY\n"
      "0: \"shift\" L{ANY} R{!STAIL} => NOP; SHIFT_R\n"
      "210: \"morph-late\" L{ADV} R{PRED} => MERGE(R); STAY\n",
      "t");
  auto s = state_of({node("a", {"ADV"}), node("b", {"PRED"})}, 1);
  CHECK(selected(rules, s) == "morph");

  auto bare = state_of({node("n", {"N"})}, 0);
  CHECK(selected(rules, bare) == "shift");

  auto end = state_of({node("n", {"N"})}, 1);
  CHECK_FALSE(select_rule(rules, end));
}

TEST_CASE("conditions see markers, headwords and context windows") {
  auto rules = parse_rules(
      "120: \"ctx\" L{ANY} R{ADJ} RR{STAIL} => NOP; STAY\n"
      "110: \"head\" L{SHEAD} R{HW=\"আজ\"} => NOP; STAY\n"
      "100: \"left\" L{N} R{!N} LL{SHEAD} => NOP; STAY\n",
      "t");
  auto adj_last = state_of({node("x", {"ADV"}), node("y", {"ADJ"})}, 1);
  CHECK(selected(rules, adj_last) == "ctx");
  auto adj_mid = state_of({node("x", {"ADV"}), node("y", {"ADJ"}), node("z", {"N"})}, 1);
  CHECK(selected(rules, adj_mid) == "<none>");

  auto today = state_of({node("আজ", {"ADV"})}, 0);
  CHECK(selected(rules, today) == "head");

  auto first = state_of({node("n", {"N"}), node("v", {"V"})}, 1);
  CHECK(selected(rules, first) == "left");
  auto second = state_of({node("m", {"N"}), node("n", {"N"}), node("v", {"V"})}, 2);
  CHECK(selected(rules, second) == "<none>");

  // Missing context windows only satisfy ANY.
  auto lc = parse_rules("1: L{SHEAD} R{N} LL{ANY} => NOP; STAY\n2: L{SHEAD} R{N} LL{!N} => NOP; STAY", "t");
  auto at_head = state_of({node("n", {"N"})}, 0);
  REQUIRE(select_rule(lc, at_head));
  CHECK(select_rule(lc, at_head)->rule->priority == 1);
}

TEST_CASE("priority bands") {
  CHECK(check_bands(testing::reference_rules()).empty());

  auto bad = parse_rules("210: \"rel-too-high\" L{ADV} R{PRED} => REL(man,R,L); STAY", "t");
  auto violations = check_bands(bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == RuleKind::Composition);
  CHECK(violations[0].rule->name == "rel-too-high");

  auto kinds = parse_rules(
      "200: L{A} R{B} => MERGE(L); STAY\n"
      "150: L{A} R{B} => SWAP; STAY\n"
      "100: L{A} R{B} => ADD_ATTR(L,X); STAY\n"
      "50: L{A} R{B} => REL(agt,R,L); STAY\n"
      "0: L{A} R{B} => NOP; SHIFT_R\n",
      "t");
  std::vector<RuleKind> expected = {RuleKind::Morphological, RuleKind::SpecificConstruct,
                                    RuleKind::Modification, RuleKind::Composition, RuleKind::Shift};
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(classify(kinds.rules()[i]) == expected[i]);
  CHECK(check_bands(kinds).empty());
  CHECK(band(RuleKind::SpecificConstruct) == std::pair{150, 199});
  CHECK(kind_name(RuleKind::Shift) == "shift");
}
