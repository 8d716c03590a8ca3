#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hiernet/errors.hpp"

namespace hiernet {

// The network has six node kinds: case documents plus the five levels of
// the statute hierarchy.
enum class NodeKind : uint8_t { Document, Act, Part, Chapter, Topic, Section };

enum class EdgeKind : uint8_t { Citation, Hierarchy };

inline constexpr int kNodeKindCount = 6;
inline constexpr int kEdgeKindCount = 2;

std::string_view to_string(NodeKind k);
std::string_view to_string(EdgeKind k);

// Accepts the canonical names plus common short aliases ("doc", "sec",
// "chap", ...), case-insensitively.
std::optional<NodeKind> parse_node_kind(std::string_view name);
std::optional<EdgeKind> parse_edge_kind(std::string_view name);

// Depth in the statute hierarchy: Act=0 .. Section=4; -1 for Document.
int hierarchy_level(NodeKind k);

// Citation edges connect documents to documents/statutes and statutes to
// statutes; no statute ever cites a document. Hierarchy edges run from a
// containing statute level to a deeper one (skipping levels is legal).
bool citation_allowed(NodeKind src, NodeKind dst);
bool hierarchy_allowed(NodeKind src, NodeKind dst);
bool edge_allowed(NodeKind src, NodeKind dst, EdgeKind kind);

enum class Direction { Out, In };

struct GraphStats {
  std::array<std::size_t, kNodeKindCount> node_counts{};
  std::map<std::tuple<NodeKind, NodeKind, EdgeKind>, std::size_t> edge_counts;
  std::size_t total_nodes = 0;
  std::size_t total_edges = 0;
};

// Simple typed digraph over string node ids. Construction is single-writer;
// once built the graph is immutable by convention and safe to share across
// reader threads.
class HeteroGraph {
 public:
  using NodeIndex = uint32_t;

  struct Node {
    std::string id;
    NodeKind kind;
    std::string label;
  };

  struct HalfEdge {
    NodeIndex peer;
    EdgeKind kind;
  };

  struct Edge {
    std::string src;
    std::string dst;
    EdgeKind kind;
  };

  // Idempotent for an existing (id, kind); throws KindConflictError if the
  // id already exists with a different kind.
  NodeIndex add_node(std::string_view id, NodeKind kind,
                     std::string_view label = {});

  // Enforces the allowed-triple table and the hierarchy-forest constraints.
  // Re-adding an existing (src, dst, kind) triple is a no-op.
  void add_edge(std::string_view src, std::string_view dst, EdgeKind kind);

  bool has_node(std::string_view id) const;
  NodeIndex index_of(std::string_view id) const;  // UnknownNodeError
  const Node& node(NodeIndex i) const { return nodes_[i]; }
  const Node& node(std::string_view id) const { return nodes_[index_of(id)]; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Node indices ordered by ascending node id.
  std::vector<NodeIndex> sorted_indices() const;

  // All edges, ordered by (src id, dst id, kind).
  std::vector<Edge> edges() const;

  // Adjacent node ids satisfying the filters, deduplicated and sorted
  // ascending by id.
  std::vector<std::string> neighbors(
      std::string_view id, Direction dir,
      std::optional<NodeKind> node_filter = std::nullopt,
      std::optional<EdgeKind> edge_filter = std::nullopt) const;

  // Index-level adjacency, sorted by (peer id, kind); for inner loops.
  std::span<const HalfEdge> out_edges(NodeIndex i) const { return out_[i]; }
  std::span<const HalfEdge> in_edges(NodeIndex i) const { return in_[i]; }

  // Hierarchy parent of a statute node, if one has been attached.
  std::optional<NodeIndex> hierarchy_parent(NodeIndex i) const;

 private:
  bool insert_half(std::vector<HalfEdge>& list, NodeIndex peer, EdgeKind kind);

  std::vector<Node> nodes_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<HalfEdge>> out_;
  std::vector<std::vector<HalfEdge>> in_;
  std::vector<NodeIndex> hier_parent_;  // kNoParent when absent
  std::size_t edge_count_ = 0;

  static constexpr NodeIndex kNoParent = static_cast<NodeIndex>(-1);
};

// Subgraph with all Document nodes and only document->document citation
// edges; the input graph is left untouched.
HeteroGraph pcnet_view(const HeteroGraph& g);

GraphStats stats(const HeteroGraph& g);

}  // namespace hiernet
