#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiernet/graph.hpp"

namespace hiernet {

struct WalkConfig {
  int walk_length = 5;
  int walks_per_node = 2000;
  double return_param_p = 1.0;
  double inout_param_q = 1.0;
  uint64_t rng_seed = 0;
};

struct MetapathSchema {
  std::string name;
  std::vector<NodeKind> kinds;
};

struct Walk {
  std::vector<std::string> nodes;
  int schema_index = -1;  // -1 for homogeneous walks and loaded corpora
};

struct WalkProvenance {
  std::string generator;
  WalkConfig config;
  std::vector<std::string> schema_names;
};

struct WalkCorpus {
  std::vector<Walk> walks;
  WalkProvenance provenance;
};

// Merged out- and in-adjacency, deduplicated, each peer list sorted by node
// id. Shared read-only across walk workers.
class UndirectedIndex {
 public:
  explicit UndirectedIndex(const HeteroGraph& g);
  std::span<const HeteroGraph::NodeIndex> peers(
      HeteroGraph::NodeIndex i) const {
    return peers_[i];
  }
  bool adjacent(HeteroGraph::NodeIndex a, HeteroGraph::NodeIndex b) const;

 private:
  std::vector<std::vector<HeteroGraph::NodeIndex>> peers_;
  std::vector<std::vector<HeteroGraph::NodeIndex>> by_index_;
};

// Unnormalized second-order weight: 1/p to return to prev, 1 to a node
// adjacent to prev, 1/q otherwise.
double transition_weight(const HeteroGraph& g, std::string_view prev,
                         std::string_view cur, std::string_view next,
                         double p, double q);

struct StepDistribution {
  std::vector<HeteroGraph::NodeIndex> candidates;
  std::vector<double> weights;
};

// Candidates (cur's undirected peers, id order) and their unnormalized
// weights for the step after (prev, cur).
StepDistribution node2vec_distribution(const HeteroGraph& g,
                                       const UndirectedIndex& idx,
                                       HeteroGraph::NodeIndex prev,
                                       HeteroGraph::NodeIndex cur, double p,
                                       double q);

// Second-order biased walks from every node, kinds ignored. Deterministic
// for a fixed (graph, config): each (root, repetition) pair has its own RNG
// stream and walks come out in (root id, repetition) order whatever the
// thread count.
WalkCorpus node2vec_walks(const HeteroGraph& g, const WalkConfig& config,
                          int threads = 1);

struct SchemaViolation {
  std::size_t position = 0;  // index into kinds, 0 for whole-schema issues
  std::string message;
};

// Checks the schema invariants: Document endpoints, length >= 3, every
// consecutive kind pair connectable by some allowed edge triple in either
// direction. Returns the first violation, if any.
std::optional<SchemaViolation> validate_schema(const MetapathSchema& schema);

// Kind required at walk position j when the schema interior repeats after
// the schema is exhausted.
NodeKind schema_kind_at(const MetapathSchema& schema, std::size_t j);

// Schema-constrained uniform walks from every Document root. walks_per_node
// is a per-root total, split evenly across schemas with the remainder going
// to earlier ones. Truncates when no neighbor has the required kind.
WalkCorpus metapath_walks(const HeteroGraph& g,
                          const std::vector<MetapathSchema>& schemas,
                          const WalkConfig& config, int threads = 1);

// The built-in schema set used when no metapaths file is supplied.
std::vector<MetapathSchema> default_metapaths();

std::vector<MetapathSchema> load_metapaths_json(
    const std::filesystem::path& path);

// One walk per line, ids space-separated; provenance and any extra fields
// go to "<path>.meta.json".
void save_walks(const WalkCorpus& corpus, const std::filesystem::path& path,
                const std::map<std::string, std::string>& extra = {});
WalkCorpus load_walks(const std::filesystem::path& path);

}  // namespace hiernet
