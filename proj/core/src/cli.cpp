#include "graft/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "graft/bench.hpp"
#include "graft/errors.hpp"
#include "graft/graph.hpp"
#include "graft/javadeps.hpp"
#include "graft/minijava.hpp"
#include "graft/mlite.hpp"
#include "graft/report.hpp"
#include "graft/scope.hpp"
#include "graft/statemachine.hpp"

namespace graft::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct InputFile {
  std::string path;
  bool from_directory = false;
};

/// Explicit files pass through; directories are walked recursively for the
/// extension, in sorted order.
std::vector<InputFile> expand_inputs(const std::vector<std::string>& paths,
                                     const std::string& extension) {
  std::vector<InputFile> files;
  for (const std::string& path : paths) {
    if (fs::is_directory(path)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      for (std::string& f : found) files.push_back(InputFile{std::move(f), true});
    } else {
      files.push_back(InputFile{path, false});
    }
  }
  return files;
}

void emit_report(const report::AnalysisReport& rep, const std::string& format,
                 std::ostream& out) {
  out << (format == "json" ? report::to_json(rep) : report::to_text(rep));
}

int run_cycles(const std::string& lang, const std::string& format,
               const std::vector<std::string>& paths, std::ostream& out) {
  report::AnalysisReport rep;
  rep.analysis = "cycles";
  rep.frontend = lang;
  rep.inputs = paths;

  if (lang == "sm") {
    std::vector<sm::StateMachine> machines;
    for (const InputFile& input : expand_inputs(paths, ".sm")) {
      machines.push_back(sm::parse_state_machine(read_file(input.path), input.path));
    }
    if (format == "dot") {
      if (machines.size() != 1) {
        throw Error("dot output supports exactly one state machine input");
      }
      const graph::DependencyGraph& g = machines.front().dependency_graph();
      const graph::SccPartition partition = graph::scc(g);
      out << graph::render_dot(g, &partition);
      return graph::nontrivial_sccs(partition, g).empty() ? 0 : 1;
    }
    long long components = 0, edges = 0;
    for (const sm::StateMachine& machine : machines) {
      const graph::DependencyGraph& g = machine.dependency_graph();
      const graph::SccPartition partition = graph::scc(g);
      for (graph::CycleFinding& f : graph::cycle_findings(g, partition)) {
        rep.cycles.push_back(std::move(f));
      }
      components += g.size();
      edges += g.edge_count();
    }
    rep.stats = {{"files", static_cast<long long>(machines.size())},
                 {"components", components},
                 {"edges", edges}};
    emit_report(rep, format, out);
    return rep.cycles.empty() ? 0 : 1;
  }

  const javadeps::Corpus corpus = javadeps::load_corpus(paths);
  const graph::DependencyGraph& g = lang == "java-types"
                                        ? corpus.type_dependency_graph()
                                        : corpus.package_dependency_graph();
  const graph::SccPartition partition = graph::scc(g);
  if (format == "dot") {
    out << graph::render_dot(g, &partition);
    return graph::nontrivial_sccs(partition, g).empty() ? 0 : 1;
  }
  rep.cycles = graph::cycle_findings(g, partition);
  rep.stats = {{"files", static_cast<long long>(corpus.units().size())},
               {"components", static_cast<long long>(g.size())},
               {"edges", g.edge_count()}};
  emit_report(rep, format, out);
  return rep.cycles.empty() ? 0 : 1;
}

void append_shadow_findings(const scope::ScopeTree& tree, report::AnalysisReport& rep) {
  for (const scope::ShadowFinding& f : tree.variable_shadowings()) {
    const scope::Declaration& shadower = tree.declaration(f.shadower);
    const scope::Declaration& shadowed = tree.declaration(f.shadowed);
    rep.shadows.push_back(report::ShadowReportEntry{
        shadower.name, shadower.backlink, shadowed.backlink, f.same_scope});
  }
}

int run_shadowing(const std::string& lang, const std::string& format,
                  const std::vector<std::string>& paths, std::ostream& out,
                  std::ostream& err) {
  report::AnalysisReport rep;
  rep.analysis = "shadowing";
  rep.frontend = lang;
  rep.inputs = paths;

  long long files = 0, scopes = 0, declarations = 0;
  if (lang == "minijava") {
    std::vector<minijava::MjClass> classes;
    for (const InputFile& input : expand_inputs(paths, ".java")) {
      try {
        auto parsed = minijava::parse_minijava(read_file(input.path), input.path);
        for (auto& cls : parsed) classes.push_back(std::move(cls));
        ++files;
      } catch (const ParseError& e) {
        if (!input.from_directory) throw;
        err << "warning: skipping " << input.path << ": " << e.what() << "\n";
      }
    }
    const minijava::MjProgram program(std::move(classes));
    const scope::ScopeTree& tree = program.scope_tree();
    append_shadow_findings(tree, rep);
    scopes = tree.scope_count();
    declarations = tree.declaration_count();
  } else {
    for (const InputFile& input : expand_inputs(paths, ".mo")) {
      const mlite::MlProgram program = mlite::load_mlite_file(input.path);
      const scope::ScopeTree& tree = program.scope_tree();
      append_shadow_findings(tree, rep);
      ++files;
      scopes += tree.scope_count();
      declarations += tree.declaration_count();
    }
  }
  rep.stats = {{"files", files}, {"scopes", scopes}, {"declarations", declarations}};
  emit_report(rep, format, out);
  return rep.shadows.empty() ? 0 : 1;
}

int run_bench(const std::vector<std::string>& scenario_names, bool list, int reps,
              bool have_seed, std::uint64_t seed, const std::string& format,
              const std::string& raw_out, std::ostream& out) {
  if (list) {
    for (const bench::BenchScenario& s : bench::builtin_scenarios()) {
      out << s.name << " (" << bench::to_string(s.workload) << ", entities=" << s.entities
          << ", density=" << s.density << ", seed=" << s.seed << ")\n";
    }
    return 0;
  }
  if (scenario_names.empty()) {
    throw Error("no scenario selected; use --scenario <name> or --list");
  }

  std::vector<std::string> names;
  for (const std::string& name : scenario_names) {
    if (name == "all") {
      for (const bench::BenchScenario& s : bench::builtin_scenarios()) {
        names.push_back(s.name);
      }
    } else {
      names.push_back(name);
    }
  }

  std::vector<bench::BenchResult> results;
  for (const std::string& name : names) {
    const bench::BenchScenario* found = bench::find_scenario(name);
    if (found == nullptr) {
      throw Error("unknown scenario '" + name + "'; use --list to see the builtins");
    }
    bench::BenchScenario scenario = *found;
    if (reps > 0) scenario.repetitions = reps;
    if (have_seed) scenario.seed = seed;
    results.push_back(bench::measure(scenario));
  }

  out << bench::emit_table(results, format == "markdown" ? bench::TableFormat::Markdown
                                                         : bench::TableFormat::Csv);

  if (!raw_out.empty()) {
    std::ofstream raw(raw_out);
    if (!raw) throw Error("cannot write " + raw_out);
    raw << "scenario,repetition,variant,ns\n";
    for (const bench::BenchResult& r : results) {
      for (std::size_t i = 0; i < r.raw_direct_ns.size(); ++i) {
        raw << r.scenario << "," << i << ",direct," << r.raw_direct_ns[i] << "\n";
        raw << r.scenario << "," << i << ",reusable," << r.raw_reusable_ns[i] << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reusable static-analysis kernels with language frontends", "graft"};
  app.require_subcommand(1);

  auto* cycles = app.add_subcommand("cycles", "Detect dependency cycles");
  std::string cy_lang, cy_format = "text";
  std::vector<std::string> cy_paths;
  cycles->add_option("--lang", cy_lang, "Frontend: sm, java-types, java-packages")
      ->required()
      ->check(CLI::IsMember({"sm", "java-types", "java-packages"}));
  cycles->add_option("--format", cy_format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  cycles->add_option("paths", cy_paths, "Input files or directories")->required();

  auto* shadowing = app.add_subcommand("shadowing", "Detect variable shadowing");
  std::string sh_lang, sh_format = "text";
  std::vector<std::string> sh_paths;
  shadowing->add_option("--lang", sh_lang, "Frontend: minijava, mlite")
      ->required()
      ->check(CLI::IsMember({"minijava", "mlite"}));
  shadowing->add_option("--format", sh_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  shadowing->add_option("paths", sh_paths, "Input files or directories")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Compare direct and reusable analysis");
  std::vector<std::string> scenario_names;
  int reps = 0;
  std::uint64_t seed = 0;
  std::string b_format = "csv", raw_out;
  bool list = false;
  bench_cmd->add_option("--scenario", scenario_names,
                        "Builtin scenario name (repeatable; 'all' runs every one)");
  bench_cmd->add_option("--reps", reps, "Repetitions per variant (default 101)")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = bench_cmd->add_option("--seed", seed, "Override the scenario seed");
  bench_cmd->add_option("--format", b_format, "Table format")
      ->check(CLI::IsMember({"csv", "markdown"}));
  bench_cmd->add_option("--raw-out", raw_out, "Write raw samples to this CSV file");
  bench_cmd->add_flag("--list", list, "List builtin scenarios");

  std::vector<std::string> argv_like;
  argv_like.reserve(args.size() + 1);
  argv_like.push_back("graft");
  argv_like.insert(argv_like.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_like.size());
  for (const std::string& a : argv_like) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cycles)) {
      return run_cycles(cy_lang, cy_format, cy_paths, out);
    }
    if (app.got_subcommand(shadowing)) {
      return run_shadowing(sh_lang, sh_format, sh_paths, out, err);
    }
    return run_bench(scenario_names, list, reps, seed_opt->count() > 0, seed, b_format,
                     raw_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace graft::cli
