#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "graft/bench.hpp"
#include "graft/errors.hpp"
#include "graft/graph.hpp"

using namespace graft;
using bench::BenchResult;
using bench::BenchScenario;
using bench::Workload;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

BenchResult row(const std::string& name, int files, long long graph_size, double direct,
                double reusable) {
  BenchResult r;
  r.scenario = name;
  r.files = files;
  r.graph_size = graph_size;
  r.direct_median_ms = direct;
  r.reusable_median_ms = reusable;
  r.overhead_pct = bench::overhead_pct(direct, reusable);
  return r;
}

}  // namespace

TEST_CASE("corpus generation is deterministic per seed") {
  const std::string a = bench::generate_state_machine_text(100, 0.05, 42);
  const std::string b = bench::generate_state_machine_text(100, 0.05, 42);
  CHECK(a == b);
  CHECK(a != bench::generate_state_machine_text(100, 0.05, 43));

  const auto u1 = bench::generate_java_units(Workload::JavaTypeCycles, 60, 4.0, 7);
  const auto u2 = bench::generate_java_units(Workload::JavaTypeCycles, 60, 4.0, 7);
  CHECK(u1 == u2);
}

TEST_CASE("infeasible generator parameters are rejected") {
  CHECK_THROWS_AS(bench::generate_state_machine_text(100, 1.5, 1), Error);
  CHECK_THROWS_AS(bench::generate_state_machine_text(100, -0.1, 1), Error);
  CHECK_THROWS_AS(bench::generate_state_machine_text(0, 0.5, 1), Error);
  CHECK_THROWS_AS(bench::generate_java_units(Workload::JavaTypeCycles, -1, 1.0, 1),
                  Error);
}

TEST_CASE("an empty java corpus degenerates gracefully") {
  BenchScenario scenario{"empty", Workload::JavaTypeCycles, 0, 1.0, 5, 3};
  const BenchResult result = bench::measure(scenario);
  CHECK(result.files == 0);
  CHECK(result.graph_size == 0);
  CHECK(result.raw_direct_ns.size() == 3);
}

TEST_CASE("median is an order statistic of the samples") {
  CHECK(bench::median({5, 1, 9}) == 5);
  CHECK(bench::median({4, 2, 8, 6}) == 4);  // lower middle
  CHECK(bench::median({7}) == 7);
  CHECK(bench::median({}) == 0);
}

TEST_CASE("overhead follows the percentage formula") {
  CHECK(bench::overhead_pct(100.0, 100.0) == 0.0);
  CHECK(bench::overhead_pct(200.0, 220.0) == doctest::Approx(10.0));
  CHECK(bench::overhead_pct(3195.0, 3167.0) == doctest::Approx(-0.8764).epsilon(1e-3));
  CHECK(bench::overhead_pct(0.0, 0.0) == 0.0);
}

TEST_CASE("emit_table renders the eight-project package measurements") {
  // Files / graph sizes / medians from the large-corpus package analysis.
  const std::vector<BenchResult> rows = {
      row("Lucene", 3036, 1555, 3195, 3167),
      row("Azureus", 3319, 4347, 3464, 3437),
      row("Spring Framework", 4202, 2484, 3121, 3171),
      row("Hibernate", 6230, 4607, 3604, 3519),
      row("JBoss", 6809, 2868, 4077, 4013),
      row("GeoTools", 7134, 3815, 5952, 6033),
      row("Eclipse", 22634, 22784, 29333, 28456),
      row("NetBeans", 32647, 38330, 51968, 51590),
  };
  const auto lines = split_lines(bench::emit_table(rows, bench::TableFormat::Csv));
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] ==
        "Scenario,Files,Graph Size,Direct Median (ms),Reusable Median (ms),Overhead (%)");
  CHECK(lines[1] == "Lucene,3036,1555,3195.000,3167.000,-0.88");
  CHECK(lines[8].rfind("NetBeans,32647,38330,51968.000,51590.000,", 0) == 0);
}

TEST_CASE("emit_table handles an empty result list") {
  const auto lines = split_lines(bench::emit_table({}, bench::TableFormat::Csv));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("Scenario,", 0) == 0);
}

TEST_CASE("csv and markdown tables carry identical numeric fields") {
  const std::vector<BenchResult> rows = {row("t", 10, 20, 1.2345, 1.3456)};
  const std::string csv = bench::emit_table(rows, bench::TableFormat::Csv);
  const std::string md = bench::emit_table(rows, bench::TableFormat::Markdown);
  for (const std::string& field : {"10", "20", "1.234", "1.346", "9.00"}) {
    CHECK(csv.find(field) != std::string::npos);
    CHECK(md.find(field) != std::string::npos);
  }
}

TEST_CASE("measure collects one sample per repetition and variant") {
  BenchScenario scenario{"tiny", Workload::SmCycles, 40, 0.05, 11, 7};
  const BenchResult result = bench::measure(scenario);
  CHECK(result.scenario == "tiny");
  CHECK(result.files == 1);
  CHECK(result.graph_size > 40);
  CHECK(result.raw_direct_ns.size() == 7);
  CHECK(result.raw_reusable_ns.size() == 7);
  CHECK(result.direct_median_ms > 0.0);
  CHECK(result.reusable_median_ms > 0.0);
}

TEST_CASE("the overlay cache is cold on every repetition") {
  BenchScenario scenario{"tiny", Workload::SmCycles, 30, 0.05, 11, 1};
  const bench::GeneratedCorpus gen = bench::generate_corpus(scenario);
  REQUIRE(gen.machine.has_value());
  for (int rep = 1; rep <= 5; ++rep) {
    gen.machine->reset_overlay_cache();
    (void)gen.machine->dependency_graph();
    CHECK(gen.machine->dependency_graph_build_count() == rep);
  }
}

TEST_CASE("java corpus generation scales with the entity knob") {
  const auto small = bench::generate_java_units(Workload::JavaTypeCycles, 20, 3.0, 9);
  javadeps::Corpus corpus = [&] {
    std::vector<javadeps::CompilationUnitFacts> units;
    for (const auto& [path, text] : small) units.push_back(javadeps::scan_java_file(text, path));
    return javadeps::Corpus(std::move(units));
  }();
  CHECK(corpus.type_count() == 20);

  const auto pkg = bench::generate_java_units(Workload::JavaPackageCycles, 15, 2.0, 9);
  javadeps::Corpus pkg_corpus = [&] {
    std::vector<javadeps::CompilationUnitFacts> units;
    for (const auto& [path, text] : pkg) units.push_back(javadeps::scan_java_file(text, path));
    return javadeps::Corpus(std::move(units));
  }();
  CHECK(pkg_corpus.packages().size() == 15);
}

TEST_CASE("medians grow with the size sweep") {
  double previous = -1.0;
  for (const int entities : {100, 1000, 10000}) {
    BenchScenario scenario{"sweep", Workload::JavaTypeCycles, entities, 5.0, 21, 3};
    const BenchResult result = bench::measure(scenario);
    CHECK(result.direct_median_ms >= previous);
    previous = result.direct_median_ms;
  }
}

TEST_CASE("builtin scenarios include the large corpora") {
  CHECK(bench::find_scenario("java-types-10k") != nullptr);
  CHECK(bench::find_scenario("java-packages-10k") != nullptr);
  CHECK(bench::find_scenario("absent") == nullptr);
  for (const BenchScenario& s : bench::builtin_scenarios()) {
    CHECK(s.repetitions == 101);
  }
}
