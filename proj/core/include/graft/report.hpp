#ifndef GRAFT_REPORT_HPP
#define GRAFT_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "graft/graph.hpp"
#include "graft/source_ref.hpp"

namespace graft::report {

struct ShadowReportEntry {
  std::string name;
  SourceRef shadower;
  SourceRef shadowed;
  bool same_scope = false;
};

/// Findings of one CLI invocation, in frontend terms. Serialization is
/// byte-deterministic; every back-reference comes from an overlay back-link.
struct AnalysisReport {
  std::string analysis;  // "cycles" | "shadowing"
  std::string frontend;  // "sm" | "java-types" | "java-packages" | "minijava" | "mlite"
  std::vector<std::string> inputs;
  std::vector<graph::CycleFinding> cycles;
  std::vector<ShadowReportEntry> shadows;
  std::vector<std::pair<std::string, long long>> stats;  // emitted in order

  std::size_t finding_count() const { return cycles.size() + shadows.size(); }
};

std::string to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

}  // namespace graft::report

#endif
