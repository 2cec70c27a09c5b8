#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "enconv/engine.hpp"
#include "enconv/morphology.hpp"
#include "enconv/text.hpp"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream file(std::string(ENCONV_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

const enconv::Lexicon& lexicon() {
  static const auto lex = enconv::parse_dictionary(slurp("bangla.dict"), "bangla.dict");
  return lex;
}

const enconv::rules::RuleSet& rules() {
  static const auto rs = enconv::rules::parse_rules(slurp("bangla.rules"), "bangla.rules");
  return rs;
}

void BM_PrefixLookup(benchmark::State& state) {
  std::string input = enconv::text::nfc("ঢাকায় আজ খুব গরম");
  for (auto _ : state) benchmark::DoNotOptimize(lexicon().longest_prefix_candidates(input, 0));
}
BENCHMARK(BM_PrefixLookup);

void BM_Segment(benchmark::State& state) {
  std::string input = enconv::text::nfc("যাইতেছে");
  for (auto _ : state) benchmark::DoNotOptimize(enconv::morphology::segment(lexicon(), input, 0));
}
BENCHMARK(BM_Segment);

void BM_ParseDictionary(benchmark::State& state) {
  std::string source = slurp("bangla.dict");
  for (auto _ : state) benchmark::DoNotOptimize(enconv::parse_dictionary(source, "bench"));
}
BENCHMARK(BM_ParseDictionary);

void BM_Run(benchmark::State& state, const char* sentence) {
  enconv::Analyzer analyzer(lexicon(), rules());
  for (auto _ : state) benchmark::DoNotOptimize(analyzer.run(sentence));
}
BENCHMARK_CAPTURE(BM_Run, locative, "ঢাকায় আজ খুব গরম");
BENCHMARK_CAPTURE(BM_Run, anaphora, "রোজী তার বইটি শহিদাকে দিয়েছে");

void BM_SerializeParse(benchmark::State& state) {
  enconv::Analyzer analyzer(lexicon(), rules());
  auto expr = analyzer.run("রোজী তার বইটি শহিদাকে দিয়েছে").expression;
  for (auto _ : state) {
    auto text = enconv::unl::serialize(expr);
    benchmark::DoNotOptimize(enconv::unl::parse_expression(text));
  }
}
BENCHMARK(BM_SerializeParse);

}  // namespace

BENCHMARK_MAIN();
