#ifndef GRAFT_BENCH_HPP
#define GRAFT_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graft/javadeps.hpp"
#include "graft/statemachine.hpp"

namespace graft::bench {

enum class Workload { SmCycles, JavaTypeCycles, JavaPackageCycles };

std::string_view to_string(Workload workload);

/// Generator and measurement parameters. `density` is workload-specific:
/// for state machines it is the probability of each ordered state pair being
/// an edge; for the Java workloads it is the expected number of type
/// references emitted per declared type.
struct BenchScenario {
  std::string name;
  Workload workload = Workload::SmCycles;
  int entities = 0;  // states, declared types, or packages
  double density = 0.0;
  std::uint64_t seed = 0;
  int repetitions = 101;
};

struct BenchResult {
  std::string scenario;
  int files = 0;
  long long graph_size = 0;  // overlay nodes + edges
  double direct_median_ms = 0.0;
  double reusable_median_ms = 0.0;
  double overhead_pct = 0.0;  // 100 * (reusable - direct) / direct
  std::vector<long long> raw_direct_ns;
  std::vector<long long> raw_reusable_ns;
};

/// Parsed input ready for analysis. Generation and parsing happen here, ahead
/// of any timed region.
struct GeneratedCorpus {
  std::optional<sm::StateMachine> machine;
  std::optional<javadeps::Corpus> corpus;
  int files = 0;
};

std::string generate_state_machine_text(int states, double density, std::uint64_t seed);

/// (path, text) pairs for a synthetic Java-like corpus. For the type workload
/// `entities` counts declared types; for the package workload it counts
/// packages.
std::vector<std::pair<std::string, std::string>> generate_java_units(Workload workload,
                                                                     int entities,
                                                                     double density,
                                                                     std::uint64_t seed);

/// Throws Error on infeasible parameters (negative sizes, state-machine
/// density outside [0, 1], zero states for the state-machine workload).
GeneratedCorpus generate_corpus(const BenchScenario& scenario);

/// Runs the direct and the reusable variant `repetitions` times each,
/// alternating, with every overlay cache reset before each reusable run so
/// the transformation is rebuilt and measured every repetition. Timing uses
/// the monotonic clock at nanosecond capture; medians are order statistics
/// of the raw samples.
BenchResult measure(const BenchScenario& scenario);

double overhead_pct(double direct, double reusable);
long long median(std::vector<long long> samples);

enum class TableFormat { Csv, Markdown };

/// Columns: Scenario, Files, Graph Size, Direct Median (ms), Reusable
/// Median (ms), Overhead (%).
std::string emit_table(const std::vector<BenchResult>& results, TableFormat format);

const std::vector<BenchScenario>& builtin_scenarios();
const BenchScenario* find_scenario(std::string_view name);

}  // namespace graft::bench

#endif
