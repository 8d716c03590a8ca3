#include "hiernet/graph_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "hiernet/util.hpp"

namespace hiernet {

namespace {

using nlohmann::json;

std::string flatten(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  return f;
}

StatuteUnit parse_unit_json(const json& j, std::array<int, kNodeKindCount>& counters,
                            const std::filesystem::path& path) {
  if (!j.is_object())
    throw ParseError(path.string() + ": statute unit is not an object");
  StatuteUnit u;
  std::string level = j.value("level", std::string());
  auto kind = parse_node_kind(level);
  if (!kind || hierarchy_level(*kind) < 1)
    throw ParseError(path.string() + ": bad statute unit level '" + level + "'");
  u.level = *kind;
  u.ordinal = ++counters[static_cast<int>(u.level)];
  if (u.level == NodeKind::Topic)
    u.id = j.value("id", std::to_string(u.ordinal));
  else if (!j.contains("id") || !j["id"].is_string())
    throw ParseError(path.string() + ": statute unit missing id");
  else
    u.id = j["id"].get<std::string>();
  u.title = j.value("title", std::string());
  if (j.contains("children")) {
    for (const json& c : j["children"])
      u.children.push_back(parse_unit_json(c, counters, path));
  }
  return u;
}

void collect_unit_citations(const json& j, const std::string& act_id,
                            std::array<int, kNodeKindCount>& counters,
                            std::vector<CitationRecord>& out,
                            const std::filesystem::path& path) {
  auto kind = parse_node_kind(j.value("level", std::string()));
  int ordinal = ++counters[static_cast<int>(*kind)];
  std::string node_id = statute_node_id(act_id, *kind, ordinal);
  if (j.contains("cites")) {
    for (const json& c : j["cites"]) {
      CitationRecord rec;
      rec.src_id = node_id;
      StatuteRef ref;
      ref.act_name = c.value("act", std::string());
      if (ref.act_name.empty())
        throw ParseError(path.string() + ": cites entry missing act");
      auto uk = parse_unit_kind(c.value("unit_kind", std::string("none")));
      if (!uk)
        throw ParseError(path.string() + ": bad unit_kind in cites entry");
      ref.unit_kind = *uk;
      if (c.contains("unit_number"))
        ref.unit_number = c["unit_number"].get<std::string>();
      rec.statute = std::move(ref);
      out.push_back(std::move(rec));
    }
  }
  if (j.contains("children")) {
    for (const json& c : j["children"])
      collect_unit_citations(c, act_id, counters, out, path);
  }
}

}  // namespace

void save_nodes_tsv(const HeteroGraph& g, const std::filesystem::path& path) {
  auto f = open_out(path);
  for (auto i : g.sorted_indices()) {
    const auto& n = g.node(i);
    f << n.id << '\t' << to_string(n.kind) << '\t' << flatten(n.label) << '\n';
  }
}

void save_edges_tsv(const HeteroGraph& g, const std::filesystem::path& path) {
  auto f = open_out(path);
  for (const auto& e : g.edges()) {
    f << e.src << '\t' << e.dst << '\t' << to_string(e.kind) << '\n';
  }
}

HeteroGraph load_graph_tsv(const std::filesystem::path& nodes_path,
                           const std::filesystem::path& edges_path) {
  HeteroGraph g;
  {
    auto f = open_in(nodes_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto fields = split(line, '\t');
      if (fields.size() != 3)
        throw ParseError(line_no, nodes_path.string() +
                                      ": expected 3 tab-separated fields");
      auto kind = parse_node_kind(fields[1]);
      if (!kind)
        throw ParseError(line_no, nodes_path.string() + ": unknown node kind '" +
                                      fields[1] + "'");
      g.add_node(fields[0], *kind, fields[2]);
    }
  }
  {
    auto f = open_in(edges_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto fields = split(line, '\t');
      if (fields.size() != 3)
        throw ParseError(line_no, edges_path.string() +
                                      ": expected 3 tab-separated fields");
      auto kind = parse_edge_kind(fields[2]);
      if (!kind)
        throw ParseError(line_no, edges_path.string() + ": unknown edge kind '" +
                                      fields[2] + "'");
      g.add_edge(fields[0], fields[1], *kind);
    }
  }
  return g;
}

StatutesFile load_statutes_json(const std::filesystem::path& path) {
  auto f = open_in(path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_array())
    throw ParseError(path.string() + ": top level must be an array of acts");

  StatutesFile out;
  for (const json& a : doc) {
    if (!a.is_object() || !a.contains("title") || !a["title"].is_string())
      throw ParseError(path.string() + ": act entry missing title");
    StatuteTree tree;
    tree.title = a["title"].get<std::string>();
    tree.act_id = a.value("act_id", slugify(tree.title));
    std::array<int, kNodeKindCount> counters{};
    if (a.contains("children")) {
      for (const json& c : a["children"])
        tree.children.push_back(parse_unit_json(c, counters, path));
    }
    counters = {};
    if (a.contains("children")) {
      for (const json& c : a["children"])
        collect_unit_citations(c, tree.act_id, counters, out.statute_citations,
                               path);
    }
    out.trees.push_back(std::move(tree));
  }
  return out;
}

void save_stats_json(const GraphStats& s, const std::filesystem::path& path) {
  json j;
  j["total_nodes"] = s.total_nodes;
  j["total_edges"] = s.total_edges;
  json nodes = json::object();
  for (int k = 0; k < kNodeKindCount; ++k)
    nodes[std::string(to_string(static_cast<NodeKind>(k)))] = s.node_counts[k];
  j["node_counts"] = nodes;
  json edges = json::array();
  for (const auto& [key, count] : s.edge_counts) {
    const auto& [src, dst, kind] = key;
    edges.push_back({{"src_kind", std::string(to_string(src))},
                     {"dst_kind", std::string(to_string(dst))},
                     {"edge_kind", std::string(to_string(kind))},
                     {"count", count}});
  }
  j["edge_counts"] = edges;
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

}  // namespace hiernet
