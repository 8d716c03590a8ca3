#pragma once

#include <filesystem>
#include <vector>

#include "hiernet/builder.hpp"
#include "hiernet/graph.hpp"

namespace hiernet {

// nodes.tsv: id<TAB>kind<TAB>label, sorted by id.
// edges.tsv: src<TAB>dst<TAB>kind, sorted by (src, dst, kind).
// Tabs and newlines inside labels are flattened to spaces on write.
void save_nodes_tsv(const HeteroGraph& g, const std::filesystem::path& path);
void save_edges_tsv(const HeteroGraph& g, const std::filesystem::path& path);
HeteroGraph load_graph_tsv(const std::filesystem::path& nodes_path,
                           const std::filesystem::path& edges_path);

// statutes.json holds an array of acts. Units may carry a "cites" array
// ({act, unit_kind, unit_number}) describing statute-to-statute citations;
// those come back as CitationRecords with src_id already resolved.
struct StatutesFile {
  std::vector<StatuteTree> trees;
  std::vector<CitationRecord> statute_citations;
};
StatutesFile load_statutes_json(const std::filesystem::path& path);

void save_stats_json(const GraphStats& s, const std::filesystem::path& path);

}  // namespace hiernet
