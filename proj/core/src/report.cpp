#include "graft/report.hpp"

#include <sstream>

#include <json.hpp>

namespace graft::report {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json span_json(const Span& span) {
  return ordered_json{{"file", span.file},
                      {"line_start", span.line_start},
                      {"col_start", span.col_start},
                      {"line_end", span.line_end},
                      {"col_end", span.col_end}};
}

ordered_json ref_json(const SourceRef& ref) {
  return ordered_json{{"key", ref.key}, {"span", span_json(ref.span)}};
}

std::string span_text(const Span& span) {
  return span.file + ":" + std::to_string(span.line_start) + ":" +
         std::to_string(span.col_start);
}

}  // namespace

std::string to_json(const AnalysisReport& report) {
  ordered_json doc;
  doc["analysis"] = report.analysis;
  doc["frontend"] = report.frontend;
  doc["inputs"] = report.inputs;

  ordered_json findings = ordered_json::array();
  for (const graph::CycleFinding& cycle : report.cycles) {
    ordered_json members = ordered_json::array();
    for (const graph::CycleMember& m : cycle.members) {
      ordered_json member;
      member["name"] = m.name;
      member["ref"] = m.ref ? ref_json(*m.ref) : ordered_json(nullptr);
      members.push_back(std::move(member));
    }
    findings.push_back(ordered_json{{"kind", "cycle"}, {"members", std::move(members)}});
  }
  for (const ShadowReportEntry& shadow : report.shadows) {
    findings.push_back(ordered_json{{"kind", "shadowing"},
                                    {"name", shadow.name},
                                    {"shadower", ref_json(shadow.shadower)},
                                    {"shadowed", ref_json(shadow.shadowed)},
                                    {"same_scope", shadow.same_scope}});
  }
  doc["findings"] = std::move(findings);

  ordered_json stats;
  for (const auto& [key, value] : report.stats) stats[key] = value;
  doc["stats"] = std::move(stats);

  return doc.dump(2) + "\n";
}

std::string to_text(const AnalysisReport& report) {
  std::ostringstream out;
  for (const graph::CycleFinding& cycle : report.cycles) {
    out << "cycle:";
    bool first = true;
    for (const graph::CycleMember& m : cycle.members) {
      out << (first ? " " : ", ") << m.name;
      if (m.ref) out << " (" << span_text(m.ref->span) << ")";
      first = false;
    }
    out << "\n";
  }
  for (const ShadowReportEntry& shadow : report.shadows) {
    out << "shadowing: " << shadow.name << " (" << span_text(shadow.shadower.span)
        << ") shadows " << shadow.name << " (" << span_text(shadow.shadowed.span) << ")";
    if (shadow.same_scope) out << " [same scope]";
    out << "\n";
  }
  out << report.finding_count() << " finding(s)\n";
  return out.str();
}

}  // namespace graft::report
