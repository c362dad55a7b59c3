#include "graft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "graft/errors.hpp"
#include "graft/graph.hpp"
#include "graft/rng.hpp"

namespace graft::bench {

std::string_view to_string(Workload workload) {
  switch (workload) {
    case Workload::SmCycles: return "sm";
    case Workload::JavaTypeCycles: return "java-types";
    case Workload::JavaPackageCycles: return "java-packages";
  }
  return "?";
}

std::string generate_state_machine_text(int states, double density, std::uint64_t seed) {
  if (states <= 0) throw Error("state machine workload needs at least one state");
  if (density < 0.0 || density > 1.0) {
    throw Error("state machine density must be within [0, 1]");
  }
  Rng rng(seed);
  std::ostringstream out;
  for (int i = 0; i < states; ++i) {
    if (rng.chance(0.1)) out << "final ";
    out << "state s" << i << "\n";
  }
  const long long edges = std::llround(density * static_cast<double>(states) *
                                       static_cast<double>(states));
  for (long long e = 0; e < edges; ++e) {
    out << "s" << rng.below(states) << "->s" << rng.below(states) << ":e"
        << rng.below(8) << "\n";
  }
  out << "initial s0\n";
  return out.str();
}

std::vector<std::pair<std::string, std::string>> generate_java_units(Workload workload,
                                                                     int entities,
                                                                     double density,
                                                                     std::uint64_t seed) {
  if (entities < 0) throw Error("entity count must be non-negative");
  if (density < 0.0) throw Error("density must be non-negative");
  Rng rng(seed);

  // Layout: for the type workload, pack several types per unit and two units
  // per package; for the package workload, one unit with two types each.
  int types_total = 0, types_per_unit = 0, units_per_package = 0;
  if (workload == Workload::JavaTypeCycles) {
    types_per_unit = 4;
    units_per_package = 2;
    types_total = entities;
  } else {
    types_per_unit = 2;
    units_per_package = 1;
    types_total = entities * types_per_unit;
  }

  const int units_total =
      (types_total + types_per_unit - 1) / std::max(types_per_unit, 1);
  struct TypeInfo {
    int package;
    std::string name;
  };
  std::vector<TypeInfo> types;
  types.reserve(types_total);
  for (int t = 0; t < types_total; ++t) {
    const int unit = t / types_per_unit;
    const int package = unit / units_per_package;
    types.push_back(TypeInfo{package, "C" + std::to_string(t)});
  }

  std::vector<std::pair<std::string, std::string>> files;
  files.reserve(units_total);
  for (int u = 0; u < units_total; ++u) {
    const int package = u / units_per_package;
    const std::string pkg = "p" + std::to_string(package);
    std::ostringstream text;
    text << "package " << pkg << ";\n";

    std::ostringstream body;
    std::vector<std::string> imports;
    const int first_type = u * types_per_unit;
    const int last_type = std::min(types_total, first_type + types_per_unit);
    for (int t = first_type; t < last_type; ++t) {
      body << "public class " << types[t].name << " {\n";
      const int refs = static_cast<int>(density) +
                       (rng.unit() < (density - static_cast<int>(density)) ? 1 : 0);
      for (int r = 0; r < refs && types_total > 1; ++r) {
        int target = rng.below(types_total);
        if (target == t) target = (target + 1) % types_total;
        const TypeInfo& dep = types[target];
        if (dep.package == types[t].package) {
          body << "  " << dep.name << " f" << r << ";\n";
        } else if (rng.chance(0.5)) {
          imports.push_back("p" + std::to_string(dep.package) + "." + dep.name);
          body << "  " << dep.name << " f" << r << ";\n";
        } else {
          body << "  p" << dep.package << "." << dep.name << " f" << r << ";\n";
        }
      }
      body << "  void run() { int n = 0; n = n + 1; }\n";
      body << "}\n";
    }

    std::sort(imports.begin(), imports.end());
    imports.erase(std::unique(imports.begin(), imports.end()), imports.end());
    for (const std::string& imp : imports) text << "import " << imp << ";\n";
    text << body.str();

    files.emplace_back(pkg + "/u" + std::to_string(u % units_per_package) + ".java",
                       text.str());
  }
  return files;
}

GeneratedCorpus generate_corpus(const BenchScenario& scenario) {
  GeneratedCorpus out;
  if (scenario.workload == Workload::SmCycles) {
    const std::string text =
        generate_state_machine_text(scenario.entities, scenario.density, scenario.seed);
    out.machine = sm::parse_state_machine(text, "bench.sm");
    out.files = 1;
  } else {
    const auto units = generate_java_units(scenario.workload, scenario.entities,
                                           scenario.density, scenario.seed);
    std::vector<javadeps::CompilationUnitFacts> facts;
    facts.reserve(units.size());
    for (const auto& [path, text] : units) {
      facts.push_back(javadeps::scan_java_file(text, path));
    }
    out.corpus.emplace(std::move(facts));
    out.files = static_cast<int>(units.size());
  }
  return out;
}

namespace {

/// Checksum over nontrivial groups; compared across the two variants each
/// repetition to catch divergence.
long long partition_checksum(const std::vector<std::vector<std::string>>& partition) {
  long long nontrivial = 0, members = 0;
  for (const auto& group : partition) {
    if (group.size() > 1) {
      ++nontrivial;
      members += static_cast<long long>(group.size());
    }
  }
  return nontrivial * 1000003 + members;
}

long long run_direct(const GeneratedCorpus& gen, Workload workload) {
  if (workload == Workload::SmCycles) {
    const sm::StateMachine& machine = *gen.machine;
    const auto partition = sm::direct_scc(machine);
    long long nontrivial = 0, members = 0;
    for (const auto& group : partition) {
      bool cyclic = group.size() > 1;
      if (!cyclic) {
        for (const int tid : machine.states()[group.front()].outgoing) {
          if (machine.transitions()[tid].to == group.front()) {
            cyclic = true;
            break;
          }
        }
      }
      if (cyclic) {
        ++nontrivial;
        members += static_cast<long long>(group.size());
      }
    }
    return nontrivial * 1000003 + members;
  }
  if (workload == Workload::JavaTypeCycles) {
    return partition_checksum(gen.corpus->direct_type_scc());
  }
  return partition_checksum(gen.corpus->direct_package_scc());
}

long long run_reusable(const GeneratedCorpus& gen, Workload workload) {
  const graph::DependencyGraph* overlay = nullptr;
  if (workload == Workload::SmCycles) {
    overlay = &gen.machine->dependency_graph();
  } else if (workload == Workload::JavaTypeCycles) {
    overlay = &gen.corpus->type_dependency_graph();
  } else {
    overlay = &gen.corpus->package_dependency_graph();
  }
  const auto partition = graph::scc(*overlay);
  long long nontrivial = 0, members = 0;
  for (const auto& group : graph::nontrivial_sccs(partition, *overlay)) {
    ++nontrivial;
    members += static_cast<long long>(group.size());
  }
  return nontrivial * 1000003 + members;
}

void reset_caches(const GeneratedCorpus& gen) {
  if (gen.machine) gen.machine->reset_overlay_cache();
  if (gen.corpus) gen.corpus->reset_overlay_caches();
}

long long now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format_fixed(double value, int decimals) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << value;
  return out.str();
}

}  // namespace

double overhead_pct(double direct, double reusable) {
  if (direct == 0.0) {
    return reusable == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return 100.0 * (reusable - direct) / direct;
}

long long median(std::vector<long long> samples) {
  if (samples.empty()) return 0;
  std::sort(samples.begin(), samples.end());
  return samples[(samples.size() - 1) / 2];
}

BenchResult measure(const BenchScenario& scenario) {
  if (scenario.repetitions <= 0) throw Error("repetitions must be positive");
  GeneratedCorpus gen = generate_corpus(scenario);

  BenchResult result;
  result.scenario = scenario.name;
  result.files = gen.files;

  // Overlay size for the Graph Size column; rebuilt cold afterwards.
  {
    const graph::DependencyGraph* overlay = nullptr;
    if (scenario.workload == Workload::SmCycles) {
      overlay = &gen.machine->dependency_graph();
    } else if (scenario.workload == Workload::JavaTypeCycles) {
      overlay = &gen.corpus->type_dependency_graph();
    } else {
      overlay = &gen.corpus->package_dependency_graph();
    }
    result.graph_size = overlay->size() + overlay->edge_count();
    reset_caches(gen);
  }

  result.raw_direct_ns.reserve(scenario.repetitions);
  result.raw_reusable_ns.reserve(scenario.repetitions);
  for (int rep = 0; rep < scenario.repetitions; ++rep) {
    const long long d0 = now_ns();
    const long long direct_checksum = run_direct(gen, scenario.workload);
    const long long d1 = now_ns();
    result.raw_direct_ns.push_back(d1 - d0);

    reset_caches(gen);
    const long long r0 = now_ns();
    const long long reusable_checksum = run_reusable(gen, scenario.workload);
    const long long r1 = now_ns();
    result.raw_reusable_ns.push_back(r1 - r0);

    if (direct_checksum != reusable_checksum) {
      throw Error("direct and reusable analyses disagree in scenario " + scenario.name);
    }
  }

  result.direct_median_ms = static_cast<double>(median(result.raw_direct_ns)) / 1e6;
  result.reusable_median_ms = static_cast<double>(median(result.raw_reusable_ns)) / 1e6;
  result.overhead_pct = overhead_pct(result.direct_median_ms, result.reusable_median_ms);
  return result;
}

std::string emit_table(const std::vector<BenchResult>& results, TableFormat format) {
  static const char* columns[] = {
      "Scenario", "Files", "Graph Size", "Direct Median (ms)", "Reusable Median (ms)",
      "Overhead (%)",
  };
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << columns[0];
    for (int i = 1; i < 6; ++i) out << "," << columns[i];
    out << "\n";
    for (const BenchResult& r : results) {
      out << r.scenario << "," << r.files << "," << r.graph_size << ","
          << format_fixed(r.direct_median_ms, 3) << ","
          << format_fixed(r.reusable_median_ms, 3) << ","
          << format_fixed(r.overhead_pct, 2) << "\n";
    }
  } else {
    out << "|";
    for (const char* col : columns) out << " " << col << " |";
    out << "\n|";
    for (int i = 0; i < 6; ++i) out << " --- |";
    out << "\n";
    for (const BenchResult& r : results) {
      out << "| " << r.scenario << " | " << r.files << " | " << r.graph_size << " | "
          << format_fixed(r.direct_median_ms, 3) << " | "
          << format_fixed(r.reusable_median_ms, 3) << " | "
          << format_fixed(r.overhead_pct, 2) << " |\n";
    }
  }
  return out.str();
}

const std::vector<BenchScenario>& builtin_scenarios() {
  static const std::vector<BenchScenario> scenarios = {
      {"sm-100", Workload::SmCycles, 100, 0.05, 42, 101},
      {"sm-1k", Workload::SmCycles, 1000, 0.004, 43, 101},
      {"java-types-100", Workload::JavaTypeCycles, 100, 5.0, 44, 101},
      {"java-types-1k", Workload::JavaTypeCycles, 1000, 5.0, 45, 101},
      {"java-types-10k", Workload::JavaTypeCycles, 10000, 5.0, 46, 101},
      {"java-packages-1k", Workload::JavaPackageCycles, 1000, 3.0, 47, 101},
      {"java-packages-10k", Workload::JavaPackageCycles, 10000, 3.0, 48, 101},
  };
  return scenarios;
}

const BenchScenario* find_scenario(std::string_view name) {
  for (const BenchScenario& s : builtin_scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace graft::bench
