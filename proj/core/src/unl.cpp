#include "enconv/unl.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "enconv/error.hpp"
#include "enconv/text.hpp"

namespace enconv::unl {
namespace {

bool is_lower_ident(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::string two_digit(int id) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", id);
  return buf;
}

// Recursive-descent reader shared by the UW and expression grammars.
class Reader {
 public:
  Reader(std::string_view src, std::string_view origin) : src_(src), origin_(origin) {}

  [[noreturn]] void fail(const std::string& element, const std::string& detail = {}) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw ParseError(std::string(origin_), line, col, element, detail);
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                  src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  bool consume(std::string_view lit) {
    skip_ws();
    if (src_.substr(pos_).starts_with(lit)) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& element) {
    skip_ws();
    if (peek() != c) fail(element, at_end() ? "end of input" : std::string("found '") + peek() + "'");
    ++pos_;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && ((peek() >= 'a' && peek() <= 'z') || (peek() >= '0' && peek() <= '9') ||
                         peek() == '_')) {
      ++pos_;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  int number(const std::string& element) {
    std::size_t start = pos_;
    while (!at_end() && peek() >= '0' && peek() <= '9') ++pos_;
    if (start == pos_) fail(element);
    return std::stoi(std::string(src_.substr(start, pos_ - start)));
  }

  UniversalWord universal_word() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::string_view("(),.:").find(peek()) == std::string_view::npos) ++pos_;
    UniversalWord uw;
    uw.head = text::collapse_spaces(src_.substr(start, pos_ - start));
    if (uw.head.empty()) {
      pos_ = start;
      fail("universal word head");
    }
    skip_ws();
    if (peek() != '(') return uw;
    ++pos_;
    skip_ws();
    if (peek() == ')') {
      ++pos_;
      return uw;
    }
    while (true) {
      std::size_t item_start = pos_;
      while (!at_end() && peek() != ',' && peek() != ')') {
        if (peek() == '(') fail("closing ')' of restriction list", "unexpected '('");
        ++pos_;
      }
      if (at_end()) fail("closing ')' of restriction list", "end of input");
      std::string item = text::collapse_spaces(src_.substr(item_start, pos_ - item_start));
      Restriction r;
      if (auto gt = item.find('>'); gt != std::string::npos) {
        r.tag = std::string(text::trim(std::string_view(item).substr(0, gt)));
        r.target = std::string(text::trim(std::string_view(item).substr(gt + 1)));
        if (r.target.empty()) {
          pos_ = item_start;
          fail("restriction target");
        }
      } else {
        r.tag = item;
      }
      if (!is_lower_ident(r.tag)) {
        pos_ = item_start;
        fail("restriction tag", "'" + r.tag + "'");
      }
      uw.restrictions.push_back(std::move(r));
      char c = peek();
      ++pos_;
      if (c == ')') break;
      skip_ws();
    }
    return uw;
  }

  UwInstance instance() {
    UwInstance inst;
    inst.uw = universal_word();
    while (true) {
      skip_ws();
      if (peek() != '.') break;
      ++pos_;
      skip_ws();
      if (peek() != '@') fail("attribute label", "expected '@'");
      ++pos_;
      std::string name = ident();
      if (name.empty()) fail("attribute label");
      std::string label = "@" + name;
      if (std::find(inst.attributes.begin(), inst.attributes.end(), label) != inst.attributes.end()) {
        fail("attribute label", "duplicate " + label);
      }
      inst.attributes.push_back(std::move(label));
    }
    skip_ws();
    if (peek() == ':') {
      ++pos_;
      inst.instance_id = number("instance id");
    }
    return inst;
  }

  Endpoint endpoint() {
    skip_ws();
    if (peek() == ':') {
      ++pos_;
      return ScopeRef{number("scope id")};
    }
    return instance();
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view src_;
  std::string_view origin_;
  std::size_t pos_ = 0;
};

bool same_instance(const Endpoint& a, const Endpoint& b) {
  if (a.index() != b.index()) return false;
  if (const auto* sa = std::get_if<ScopeRef>(&a)) return sa->id == std::get<ScopeRef>(b).id;
  const auto& ia = std::get<UwInstance>(a);
  const auto& ib = std::get<UwInstance>(b);
  return ia.uw == ib.uw && ia.instance_id == ib.instance_id;
}

std::string relation_line(const Relation& rel, std::optional<int> scope) {
  std::string out = rel.label;
  if (scope) out += ":" + two_digit(*scope);
  out += "(" + render(rel.head) + ", " + render(rel.dependent) + ")";
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

UniversalWord parse_universal_word(std::string_view text, std::string_view origin) {
  if (text::trim(text).empty()) return {};
  Reader reader(text, origin);
  UniversalWord uw = reader.universal_word();
  reader.skip_ws();
  if (!reader.at_end()) reader.fail("end of universal word", "trailing text");
  return uw;
}

std::string render(const UniversalWord& uw) {
  std::string out = uw.head;
  if (uw.restrictions.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < uw.restrictions.size(); ++i) {
    if (i > 0) out += ",";
    out += uw.restrictions[i].tag;
    if (!uw.restrictions[i].target.empty()) out += ">" + uw.restrictions[i].target;
  }
  out += ")";
  return out;
}

bool is_attribute_label(std::string_view label) {
  return label.size() >= 2 && label[0] == '@' &&
         std::all_of(label.begin() + 1, label.end(), [](char c) {
           return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
         });
}

RelationRegistry RelationRegistry::builtin() {
  RelationRegistry registry;
  for (const char* label : {"agt", "obj", "plc", "plt", "plf", "pur", "met", "man", "tim", "pos", "ben"}) {
    registry.add(label);
  }
  return registry;
}

bool RelationRegistry::contains(std::string_view label) const { return labels_.contains(label); }

void RelationRegistry::add(std::string label) {
  if (!is_relation_label(label)) throw std::invalid_argument("bad relation label '" + label + "'");
  labels_.insert(std::move(label));
}

bool is_relation_label(std::string_view label) { return is_lower_ident(label); }

void validate(const UnlExpression& expr, const RelationRegistry* strict) {
  auto check_fragment = [&](const std::vector<Relation>& relations, const std::string& where) {
    std::optional<Endpoint> entry;
    for (const auto& rel : relations) {
      if (!is_relation_label(rel.label)) throw std::invalid_argument("bad relation label '" + rel.label + "'");
      if (strict && !strict->contains(rel.label)) {
        throw std::invalid_argument("unknown relation label '" + rel.label + "'");
      }
      if (same_instance(rel.head, rel.dependent)) {
        throw std::invalid_argument("self loop in " + rel.label + " relation" + where);
      }
      for (const Endpoint* ep : {&rel.head, &rel.dependent}) {
        if (const auto* ref = std::get_if<ScopeRef>(ep)) {
          if (!expr.scopes.contains(ref->id)) {
            throw std::invalid_argument("unresolved scope :" + two_digit(ref->id));
          }
          continue;
        }
        const auto& inst = std::get<UwInstance>(*ep);
        std::set<std::string_view> seen;
        for (const auto& attr : inst.attributes) {
          if (!is_attribute_label(attr)) throw std::invalid_argument("bad attribute '" + attr + "'");
          if (!seen.insert(attr).second) throw std::invalid_argument("duplicate attribute '" + attr + "'");
        }
        if (std::find(inst.attributes.begin(), inst.attributes.end(), "@entry") != inst.attributes.end()) {
          if (entry && !same_instance(*entry, *ep)) {
            throw std::invalid_argument("more than one @entry instance" + where);
          }
          entry = *ep;
        }
      }
    }
  };
  check_fragment(expr.relations, "");
  for (const auto& [id, relations] : expr.scopes) check_fragment(relations, " in scope :" + two_digit(id));
}

std::string render(const UwInstance& instance) {
  std::string out = render(instance.uw);
  for (const auto& attr : instance.attributes) out += "." + attr;
  if (instance.instance_id) out += ":" + two_digit(*instance.instance_id);
  return out;
}

std::string render(const Endpoint& endpoint) {
  if (const auto* ref = std::get_if<ScopeRef>(&endpoint)) return ":" + two_digit(ref->id);
  return render(std::get<UwInstance>(endpoint));
}

std::string serialize(const UnlExpression& expr, BracketStyle style, const RelationRegistry* strict) {
  auto check = [&](const Relation& rel) {
    if (strict && !strict->contains(rel.label)) {
      throw std::invalid_argument("unknown relation label '" + rel.label + "'");
    }
  };
  std::string out = style == BracketStyle::S ? "[S]\n" : "{unl}\n";
  for (const auto& rel : expr.relations) {
    check(rel);
    out += relation_line(rel, std::nullopt) + "\n";
  }
  for (const auto& [id, relations] : expr.scopes) {
    for (const auto& rel : relations) {
      check(rel);
      out += relation_line(rel, id) + "\n";
    }
  }
  out += style == BracketStyle::S ? "[/S]\n" : "{/unl}\n";
  return out;
}

UnlExpression parse_expression(std::string_view text, std::string_view origin) {
  Reader reader(text, origin);
  std::string_view close;
  if (reader.consume("[S]")) {
    close = "[/S]";
  } else if (reader.consume("{unl}")) {
    close = "{/unl}";
  } else {
    reader.fail("opening delimiter [S] or {unl}");
  }
  UnlExpression expr;
  while (true) {
    if (reader.consume(close)) break;
    reader.skip_ws();
    if (reader.at_end()) reader.fail("closing delimiter " + std::string(close));
    Relation rel;
    rel.label = reader.ident();
    if (rel.label.empty() || !is_relation_label(rel.label)) reader.fail("relation label");
    std::optional<int> scope;
    if (reader.peek() == ':') {
      reader.consume(":");
      scope = reader.number("scope id");
    }
    reader.expect('(', "'(' after relation label");
    rel.head = reader.endpoint();
    reader.expect(',', "',' between relation arguments");
    rel.dependent = reader.endpoint();
    reader.expect(')', "')' closing relation");
    if (scope) {
      expr.scopes[*scope].push_back(std::move(rel));
    } else {
      expr.relations.push_back(std::move(rel));
    }
  }
  reader.skip_ws();
  if (!reader.at_end()) reader.fail("end of document", "text after closing delimiter");
  return expr;
}

std::string to_dot(const UnlExpression& expr) {
  struct DotNode {
    std::string id;
    std::string label;
    int scope;
  };
  std::map<std::string, std::size_t> index;
  std::vector<DotNode> nodes;
  std::vector<std::string> edges;

  auto key_of = [](const UwInstance& inst) {
    return render(inst.uw) + "#" + (inst.instance_id ? std::to_string(*inst.instance_id) : "");
  };
  auto node_for = [&](const UwInstance& inst, int scope) -> const DotNode& {
    auto key = key_of(inst);
    auto it = index.find(key);
    if (it == index.end()) {
      std::string label = inst.uw.head;
      if (!inst.attributes.empty()) {
        label += "\\n";
        for (std::size_t i = 0; i < inst.attributes.size(); ++i) {
          if (i > 0) label += ".";
          label += dot_escape(inst.attributes[i]);
        }
      }
      nodes.push_back({"n" + std::to_string(nodes.size() + 1), label, scope});
      it = index.emplace(key, nodes.size() - 1).first;
    }
    return nodes[it->second];
  };

  // Scope nodes are registered first so edges into a scope can target them.
  auto first_node_of_scope = [&](int id) -> std::string {
    auto it = expr.scopes.find(id);
    if (it == expr.scopes.end() || it->second.empty()) return "scope_" + two_digit(id);
    const auto& rel = it->second.front();
    if (const auto* inst = std::get_if<UwInstance>(&rel.head)) return node_for(*inst, id).id;
    return "scope_" + two_digit(id);
  };

  auto add_relations = [&](const std::vector<Relation>& relations, int scope) {
    for (const auto& rel : relations) {
      std::string from;
      std::string to;
      std::string extra;
      if (const auto* inst = std::get_if<UwInstance>(&rel.head)) {
        from = node_for(*inst, scope).id;
      } else {
        int id = std::get<ScopeRef>(rel.head).id;
        from = first_node_of_scope(id);
        extra += ", ltail=cluster_" + two_digit(id);
      }
      if (const auto* inst = std::get_if<UwInstance>(&rel.dependent)) {
        to = node_for(*inst, scope).id;
      } else {
        int id = std::get<ScopeRef>(rel.dependent).id;
        to = first_node_of_scope(id);
        extra += ", lhead=cluster_" + two_digit(id);
      }
      edges.push_back("  " + from + " -> " + to + " [label=\"" + dot_escape(rel.label) + "\"" + extra + "];");
    }
  };
  add_relations(expr.relations, 0);
  for (const auto& [id, relations] : expr.scopes) add_relations(relations, id);

  std::string out = "digraph unl {\n";
  if (!expr.scopes.empty()) out += "  compound=true;\n";
  for (const auto& n : nodes) {
    if (n.scope == 0) out += "  " + n.id + " [label=\"" + n.label + "\"];\n";
  }
  for (const auto& [id, relations] : expr.scopes) {
    out += "  subgraph cluster_" + two_digit(id) + " {\n";
    out += "    label=\":" + two_digit(id) + "\";\n";
    bool any = false;
    for (const auto& n : nodes) {
      if (n.scope == id) {
        out += "    " + n.id + " [label=\"" + n.label + "\"];\n";
        any = true;
      }
    }
    if (!any) out += "    scope_" + two_digit(id) + " [shape=point];\n";
    out += "  }\n";
  }
  for (const auto& e : edges) out += e + "\n";
  out += "}\n";
  return out;
}

NormalForm normalize(const UnlExpression& expr) {
  NormalForm form;
  auto text_of = [](const Endpoint& ep) {
    if (const auto* ref = std::get_if<ScopeRef>(&ep)) return ":" + two_digit(ref->id);
    return std::get<UwInstance>(ep).uw.head;
  };
  auto attrs_of = [](const Endpoint& ep) {
    std::vector<std::string> attrs;
    if (const auto* inst = std::get_if<UwInstance>(&ep)) attrs = inst->attributes;
    std::sort(attrs.begin(), attrs.end());
    return attrs;
  };
  auto add = [&](const std::vector<Relation>& relations, int scope) {
    for (const auto& rel : relations) {
      form.push_back({scope, rel.label, text_of(rel.head), attrs_of(rel.head),
                      text_of(rel.dependent), attrs_of(rel.dependent)});
    }
  };
  add(expr.relations, 0);
  for (const auto& [id, relations] : expr.scopes) add(relations, id);
  std::sort(form.begin(), form.end());
  return form;
}

}  // namespace enconv::unl
