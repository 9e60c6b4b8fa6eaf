#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ontoform/axiom.hpp"
#include "ontoform/export.hpp"
#include "ontoform/form_json.hpp"
#include "ontoform/session.hpp"
#include "ontoform/thesaurus.hpp"
#include "ontoform/turtle.hpp"

namespace of = ontoform;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(ONTOFORM_BENCH_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Random DAG over n classes, about `fanout` superclasses per class, edges
// always pointing to a higher index.
of::Hierarchy layered_dag(int n, int fanout, unsigned seed) {
  std::mt19937 rng(seed);
  of::Hierarchy h;
  auto id = [](int i) { return "urn:bench:c" + std::to_string(i); };
  for (int i = 0; i < n; ++i) h.classes[id(i)] = {"c" + std::to_string(i), ""};
  for (int i = 0; i + 1 < n; ++i) {
    std::uniform_int_distribution<int> up(i + 1, std::min(n - 1, i + 20));
    for (int k = 0; k < fanout; ++k) h.edges.insert({id(i), id(up(rng))});
  }
  return h;
}

void BM_TransitiveReduction(benchmark::State& state) {
  auto h = layered_dag(static_cast<int>(state.range(0)), 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(of::transitive_reduction(h));
  state.counters["edges"] = static_cast<double>(h.edges.size());
}
BENCHMARK(BM_TransitiveReduction)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_ParseFixture(benchmark::State& state) {
  auto text = read_data("pv_ontology.ttl");
  for (auto _ : state) benchmark::DoNotOptimize(of::parse_turtle(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseFixture);

void BM_ParseHierarchy(benchmark::State& state) {
  auto text = of::serialize_turtle(of::hierarchy_to_graph(layered_dag(static_cast<int>(state.range(0)), 2, 11)));
  for (auto _ : state) benchmark::DoNotOptimize(of::parse_turtle(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseHierarchy)->Range(256, 8192)->Unit(benchmark::kMillisecond);

void BM_SerializeHierarchy(benchmark::State& state) {
  auto g = of::hierarchy_to_graph(layered_dag(static_cast<int>(state.range(0)), 2, 11));
  for (auto _ : state) benchmark::DoNotOptimize(of::serialize_turtle(g));
}
BENCHMARK(BM_SerializeHierarchy)->Range(256, 8192)->Unit(benchmark::kMillisecond);

void BM_ComponentsOf(benchmark::State& state) {
  auto g = of::parse_turtle(read_data("pv_ontology.ttl"));
  const std::string cls = "http://www.cstb.fr/ontodt#VerrePolymere";
  for (auto _ : state) benchmark::DoNotOptimize(of::components_of(g, cls));
}
BENCHMARK(BM_ComponentsOf);

void BM_SessionWalk(benchmark::State& state) {
  auto ontology = of::Ontology::load(of::parse_turtle(read_data("pv_ontology.ttl")));
  auto script = nlohmann::json::parse(read_data("verre_polymere_answers.json"));
  for (auto _ : state) {
    auto s = of::start_session(ontology, "http://www.cstb.fr/ontodt#VerrePolymere", "bench");
    for (const auto& step : script) {
      auto form = of::current_form(s);
      s = of::submit_form(s, of::answer_from_json(form, form.form_id, step.at("values")));
    }
    benchmark::DoNotOptimize(of::to_rdf(s));
  }
}
BENCHMARK(BM_SessionWalk)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
