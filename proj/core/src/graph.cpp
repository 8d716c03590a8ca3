#include "hiernet/graph.hpp"

#include <algorithm>

#include "hiernet/util.hpp"

namespace hiernet {

namespace {

constexpr std::string_view kNodeKindNames[kNodeKindCount] = {
    "Document", "Act", "Part", "Chapter", "Topic", "Section"};

constexpr std::string_view kEdgeKindNames[kEdgeKindCount] = {"citation",
                                                             "hierarchy"};

}  // namespace

std::string_view to_string(NodeKind k) {
  return kNodeKindNames[static_cast<int>(k)];
}

std::string_view to_string(EdgeKind k) {
  return kEdgeKindNames[static_cast<int>(k)];
}

std::optional<NodeKind> parse_node_kind(std::string_view name) {
  std::string s = to_lower(name);
  if (s == "document" || s == "doc") return NodeKind::Document;
  if (s == "act") return NodeKind::Act;
  if (s == "part") return NodeKind::Part;
  if (s == "chapter" || s == "chap") return NodeKind::Chapter;
  if (s == "topic") return NodeKind::Topic;
  if (s == "section" || s == "sec") return NodeKind::Section;
  return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view name) {
  std::string s = to_lower(name);
  if (s == "citation") return EdgeKind::Citation;
  if (s == "hierarchy") return EdgeKind::Hierarchy;
  return std::nullopt;
}

int hierarchy_level(NodeKind k) {
  switch (k) {
    case NodeKind::Document: return -1;
    case NodeKind::Act: return 0;
    case NodeKind::Part: return 1;
    case NodeKind::Chapter: return 2;
    case NodeKind::Topic: return 3;
    case NodeKind::Section: return 4;
  }
  return -1;
}

bool citation_allowed(NodeKind src, NodeKind dst) {
  using K = NodeKind;
  if (src == K::Document)
    return dst == K::Document || dst == K::Section || dst == K::Act;
  if (src == K::Section) return dst == K::Section || dst == K::Act;
  if (src == K::Act) return dst == K::Section || dst == K::Act;
  return false;
}

bool hierarchy_allowed(NodeKind src, NodeKind dst) {
  int ls = hierarchy_level(src);
  int ld = hierarchy_level(dst);
  return ls >= 0 && ld >= 0 && ls < ld;
}

bool edge_allowed(NodeKind src, NodeKind dst, EdgeKind kind) {
  return kind == EdgeKind::Citation ? citation_allowed(src, dst)
                                    : hierarchy_allowed(src, dst);
}

HeteroGraph::NodeIndex HeteroGraph::add_node(std::string_view id,
                                             NodeKind kind,
                                             std::string_view label) {
  if (id.empty()) throw Error("node id must be nonempty");
  auto it = index_.find(std::string(id));
  if (it != index_.end()) {
    const Node& existing = nodes_[it->second];
    if (existing.kind != kind) {
      throw KindConflictError("node '" + std::string(id) + "' already exists as " +
                              std::string(to_string(existing.kind)));
    }
    return it->second;
  }
  NodeIndex idx = static_cast<NodeIndex>(nodes_.size());
  nodes_.push_back(Node{std::string(id), kind, std::string(label)});
  index_.emplace(std::string(id), idx);
  out_.emplace_back();
  in_.emplace_back();
  hier_parent_.push_back(kNoParent);
  return idx;
}

bool HeteroGraph::insert_half(std::vector<HalfEdge>& list, NodeIndex peer,
                              EdgeKind kind) {
  auto cmp = [this](const HalfEdge& a, const HalfEdge& b) {
    const std::string& ia = nodes_[a.peer].id;
    const std::string& ib = nodes_[b.peer].id;
    if (ia != ib) return ia < ib;
    return a.kind < b.kind;
  };
  HalfEdge he{peer, kind};
  auto pos = std::lower_bound(list.begin(), list.end(), he, cmp);
  if (pos != list.end() && pos->peer == peer && pos->kind == kind)
    return false;  // duplicate
  list.insert(pos, he);
  return true;
}

void HeteroGraph::add_edge(std::string_view src, std::string_view dst,
                           EdgeKind kind) {
  NodeIndex s = index_of(src);
  NodeIndex d = index_of(dst);
  NodeKind ks = nodes_[s].kind;
  NodeKind kd = nodes_[d].kind;
  if (!edge_allowed(ks, kd, kind)) {
    throw IllegalEdgeError(std::string(to_string(ks)) + " -(" +
                           std::string(to_string(kind)) + ")-> " +
                           std::string(to_string(kd)) + " is not a legal edge (" +
                           std::string(src) + " -> " + std::string(dst) + ")");
  }
  // Duplicate insertion is idempotent; check before the hierarchy rules so
  // re-adding an existing parent link is not reported as a violation.
  auto exists = [this](NodeIndex from, NodeIndex to, EdgeKind k) {
    for (const HalfEdge& he : out_[from])
      if (he.peer == to && he.kind == k) return true;
    return false;
  };
  if (exists(s, d, kind)) return;

  if (kind == EdgeKind::Hierarchy) {
    if (hier_parent_[d] != kNoParent) {
      throw HierarchyViolationError("node '" + nodes_[d].id +
                                    "' already has hierarchy parent '" +
                                    nodes_[hier_parent_[d]].id + "'");
    }
    // Cycles cannot arise while the level ordering holds, but the walk is
    // cheap and keeps the invariant independent of the triple table.
    for (NodeIndex cur = s; cur != kNoParent; cur = hier_parent_[cur]) {
      if (cur == d) {
        throw HierarchyViolationError("hierarchy edge '" + std::string(src) +
                                      "' -> '" + std::string(dst) +
                                      "' would close a cycle");
      }
    }
    hier_parent_[d] = s;
  }

  insert_half(out_[s], d, kind);
  insert_half(in_[d], s, kind);
  ++edge_count_;
}

bool HeteroGraph::has_node(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

HeteroGraph::NodeIndex HeteroGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw UnknownNodeError(std::string(id));
  return it->second;
}

std::vector<HeteroGraph::NodeIndex> HeteroGraph::sorted_indices() const {
  std::vector<NodeIndex> order(nodes_.size());
  for (NodeIndex i = 0; i < nodes_.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [this](NodeIndex a, NodeIndex b) {
    return nodes_[a].id < nodes_[b].id;
  });
  return order;
}

std::vector<HeteroGraph::Edge> HeteroGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (NodeIndex i : sorted_indices()) {
    for (const HalfEdge& he : out_[i]) {
      result.push_back(Edge{nodes_[i].id, nodes_[he.peer].id, he.kind});
    }
  }
  return result;
}

std::vector<std::string> HeteroGraph::neighbors(
    std::string_view id, Direction dir, std::optional<NodeKind> node_filter,
    std::optional<EdgeKind> edge_filter) const {
  NodeIndex i = index_of(id);
  const std::vector<HalfEdge>& list = dir == Direction::Out ? out_[i] : in_[i];
  std::vector<std::string> result;
  for (const HalfEdge& he : list) {
    if (edge_filter && he.kind != *edge_filter) continue;
    if (node_filter && nodes_[he.peer].kind != *node_filter) continue;
    if (!result.empty() && result.back() == nodes_[he.peer].id) continue;
    result.push_back(nodes_[he.peer].id);
  }
  // Half-edge lists are sorted by peer id, so result is already ordered;
  // consecutive duplicates (same peer via two edge kinds) were skipped.
  return result;
}

std::optional<HeteroGraph::NodeIndex> HeteroGraph::hierarchy_parent(
    NodeIndex i) const {
  if (hier_parent_[i] == kNoParent) return std::nullopt;
  return hier_parent_[i];
}

HeteroGraph pcnet_view(const HeteroGraph& g) {
  HeteroGraph view;
  auto order = g.sorted_indices();
  for (auto i : order) {
    const auto& n = g.node(i);
    if (n.kind == NodeKind::Document) view.add_node(n.id, n.kind, n.label);
  }
  for (auto i : order) {
    const auto& n = g.node(i);
    if (n.kind != NodeKind::Document) continue;
    for (const auto& he : g.out_edges(i)) {
      const auto& peer = g.node(he.peer);
      if (he.kind == EdgeKind::Citation && peer.kind == NodeKind::Document) {
        view.add_edge(n.id, peer.id, EdgeKind::Citation);
      }
    }
  }
  return view;
}

GraphStats stats(const HeteroGraph& g) {
  GraphStats s;
  s.total_nodes = g.node_count();
  s.total_edges = g.edge_count();
  for (const auto& n : g.nodes()) {
    s.node_counts[static_cast<int>(n.kind)]++;
  }
  for (HeteroGraph::NodeIndex i = 0; i < g.node_count(); ++i) {
    NodeKind src = g.node(i).kind;
    for (const auto& he : g.out_edges(i)) {
      s.edge_counts[{src, g.node(he.peer).kind, he.kind}]++;
    }
  }
  return s;
}

}  // namespace hiernet
