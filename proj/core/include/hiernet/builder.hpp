#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hiernet/extraction.hpp"
#include "hiernet/graph.hpp"

namespace hiernet {

struct DocumentRecord {
  std::string doc_id;
  std::string title;
};

// A statute target named the way running text names it, before resolution
// against the ingested acts.
struct StatuteRef {
  std::string act_name;
  UnitKind unit_kind = UnitKind::None;
  std::optional<std::string> unit_number;
};

// One citation to ingest. Either dst_id names a node directly (resolved
// precedent citations, pre-resolved statute ids) or statute describes the
// target by act name and unit number. A record with neither is itself an
// unresolved citation and comes back as a diagnostic.
struct CitationRecord {
  std::string src_id;
  std::optional<std::string> dst_id;
  std::optional<StatuteRef> statute;
  std::string note;
};

struct BuildDiagnostic {
  CitationRecord record;
  std::string reason;
};

struct BuildResult {
  HeteroGraph graph;
  std::vector<BuildDiagnostic> diagnostics;
};

// Canonical node id for a statute unit: "<act_id>/<level>:<ordinal>" with
// the level name in lower case. Act nodes use the act_id alone.
std::string statute_node_id(std::string_view act_id, NodeKind level,
                            int ordinal);

// Assembles the full heterogeneous network: one node per document and per
// statute unit, hierarchy edges along each tree, citation edges per record.
// Citations that cannot be resolved (or that the edge rules reject) are
// collected as diagnostics instead of aborting the build.
BuildResult build_graph(const std::vector<StatuteTree>& statute_trees,
                        const std::vector<DocumentRecord>& doc_records,
                        const std::vector<CitationRecord>& citations);

}  // namespace hiernet
