#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "enconv/error.hpp"
#include "enconv/lexicon.hpp"
#include "enconv/ruleset.hpp"
#include "enconv/text.hpp"

namespace enconv::cli {

namespace {

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

struct Packs {
  Lexicon lexicon;
  rules::RuleSet rules;
};

std::optional<Packs> load(const RunConfig& config, std::ostream& err) {
  if (config.dictionaries.empty() || config.rules.empty()) {
    err << "error: at least one --dict and one --rules path is required\n";
    return std::nullopt;
  }
  auto registry = unl::RelationRegistry::builtin();
  std::vector<Lexicon> lexicons;
  std::vector<rules::RuleSet> rule_sets;
  try {
    for (const auto& path : config.dictionaries) {
      auto source = read_file(path, err);
      if (!source) return std::nullopt;
      lexicons.push_back(parse_dictionary(*source, path));
    }
    for (const auto& path : config.rules) {
      auto source = read_file(path, err);
      if (!source) return std::nullopt;
      rule_sets.push_back(rules::parse_rules(*source, path, config.strict_registry ? &registry : nullptr));
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  return Packs{Lexicon::concat(lexicons), rules::RuleSet::concat(rule_sets)};
}

EngineOptions engine_options(const RunConfig& config) {
  EngineOptions options;
  options.budget = config.budget;
  options.ids = config.ids;
  return options;
}

std::string expression_text(const RunConfig& config, const AnalysisResult& result) {
  auto registry = unl::RelationRegistry::builtin();
  return unl::serialize(result.expression, config.style, config.strict_registry ? &registry : nullptr);
}

void write_result(const RunConfig& config, std::size_t number, const AnalysisResult& result,
                  std::ostream& out) {
  switch (config.format) {
    case Format::Unl:
      out << expression_text(config, result);
      break;
    case Format::Dot:
      out << unl::to_dot(result.expression);
      break;
    case Format::Trace:
      out << render_trace(result.trace) << expression_text(config, result)
          << "entry: " << unl::render(result.entry) << "\n";
      break;
    case Format::Records: {
      out << render_records(result.trace);
      nlohmann::json summary = {{"sentence", number},
                                {"unl", expression_text(config, result)},
                                {"entry", unl::render(result.entry)}};
      out << summary.dump() << "\n";
      break;
    }
  }
}

}  // namespace

int cmd_convert(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  auto packs = load(config, err);
  if (!packs) return kConfigError;
  Analyzer analyzer(packs->lexicon, packs->rules, engine_options(config));

  bool failed = false;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (text::trim(line).empty()) continue;
    try {
      write_result(config, number, analyzer.run(line), out);
    } catch (const AnalysisError& e) {
      err << "sentence " << number << ": " << kind_name(e.kind()) << ": " << e.what() << "\n";
      failed = true;
    } catch (const std::exception& e) {
      err << "sentence " << number << ": " << e.what() << "\n";
      failed = true;
    }
  }
  return failed ? kFailures : kOk;
}

int cmd_check(const std::vector<std::string>& dictionaries, const std::vector<std::string>& rule_paths,
              std::ostream& out, std::ostream& err) {
  std::size_t errors = 0;
  bool parse_failed = false;
  std::vector<Lexicon> lexicons;
  std::vector<rules::RuleSet> rule_sets;
  for (const auto& path : dictionaries) {
    auto source = read_file(path, err);
    if (!source) {
      parse_failed = true;
      continue;
    }
    try {
      lexicons.push_back(parse_dictionary(*source, path));
    } catch (const ParseError& e) {
      out << "error: " << e.what() << "\n";
      ++errors;
      parse_failed = true;
    }
  }
  for (const auto& path : rule_paths) {
    auto source = read_file(path, err);
    if (!source) {
      parse_failed = true;
      continue;
    }
    try {
      rule_sets.push_back(rules::parse_rules(*source, path));
    } catch (const ParseError& e) {
      out << "error: " << e.what() << "\n";
      ++errors;
      parse_failed = true;
    }
  }

  Lexicon lexicon = Lexicon::concat(lexicons);
  rules::RuleSet rules = rules::RuleSet::concat(rule_sets);

  out << "entries: " << lexicon.size() << "\n";
  std::map<std::string, std::size_t> counts;
  std::vector<std::string> order;
  for (const auto& entry : lexicon.entries()) {
    if (counts[entry.headword]++ == 0) order.push_back(entry.headword);
  }
  for (const auto& headword : order) {
    if (counts[headword] > 1) {
      out << "duplicate headword: " << headword << " (" << counts[headword] << " entries)\n";
    }
  }

  out << "rules: " << rules.size() << "\n";
  for (const auto& [rule, label] : rules::unknown_labels(rules, unl::RelationRegistry::builtin())) {
    out << "error: rule '" << rule->display_name() << "': unknown relation label '" << label << "'\n";
    ++errors;
  }
  for (const auto& violation : rules::check_bands(rules)) {
    out << "error: rule '" << violation.rule->display_name() << "': " << violation.message << "\n";
    ++errors;
  }
  out << "errors: " << errors << "\n";
  if (parse_failed) return kConfigError;
  return errors == 0 ? kOk : kFailures;
}

int cmd_trace(const RunConfig& config, const std::string& sentence, std::ostream& out,
              std::ostream& err) {
  auto packs = load(config, err);
  if (!packs) return kConfigError;
  Analyzer analyzer(packs->lexicon, packs->rules, engine_options(config));
  try {
    auto result = analyzer.run(sentence);
    if (config.format == Format::Records) {
      write_result(config, 1, result, out);
    } else {
      RunConfig text = config;
      text.format = Format::Trace;
      write_result(text, 1, result, out);
    }
  } catch (const AnalysisError& e) {
    if (config.format == Format::Records) {
      out << render_records(e.trace());
    } else {
      out << render_trace(e.trace());
    }
    err << kind_name(e.kind()) << ": " << e.what() << "\n";
    return kFailures;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kFailures;
  }
  return kOk;
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bangla to UNL enconverter"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "unl";
  std::string style = "s";
  std::string ids = "minimal";
  std::string sentence;

  auto shared = [&](CLI::App* sub) {
    sub->add_option("--dict", config.dictionaries, "dictionary file (repeatable)");
    sub->add_option("--rules", config.rules, "rule file (repeatable)");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"unl", "dot", "trace", "records"}));
    sub->add_option("--style", style, "delimiter style")->check(CLI::IsMember({"s", "unl"}));
    sub->add_flag("--strict-registry", config.strict_registry, "reject unregistered relation labels");
    sub->add_option("--budget", config.budget, "step budget per sentence")->check(CLI::PositiveNumber);
    sub->add_option("--ids", ids, "instance id policy")->check(CLI::IsMember({"minimal", "always"}));
  };

  auto* convert = app.add_subcommand("convert", "convert sentences, one per line");
  shared(convert);
  convert->add_option("input", config.input, "input file, - or absent for standard input");

  auto* check = app.add_subcommand("check", "validate dictionaries and rules");
  check->add_option("--dict", config.dictionaries, "dictionary file (repeatable)");
  check->add_option("--rules", config.rules, "rule file (repeatable)");

  auto* trace = app.add_subcommand("trace", "print the step listing for one sentence");
  shared(trace);
  trace->add_option("sentence", sentence, "sentence")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  config.format = format == "dot"       ? Format::Dot
                  : format == "trace"   ? Format::Trace
                  : format == "records" ? Format::Records
                                        : Format::Unl;
  config.style = style == "unl" ? unl::BracketStyle::Unl : unl::BracketStyle::S;
  config.ids = ids == "always" ? IdPolicy::Always : IdPolicy::Minimal;

  if (check->parsed()) return cmd_check(config.dictionaries, config.rules, out, err);
  if (trace->parsed()) return cmd_trace(config, sentence, out, err);
  if (config.input.empty() || config.input == "-") return cmd_convert(config, in, out, err);
  std::ifstream file(config.input, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << config.input << "\n";
    return kConfigError;
  }
  return cmd_convert(config, file, out, err);
}

}  // namespace enconv::cli
