#include "support.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <vector>

namespace hiernet::testsupport {

namespace fs = std::filesystem;

DemoGraph make_demo_graph() {
  DemoGraph d;
  HeteroGraph& g = d.g;

  g.add_node(d.d1, NodeKind::Document, "Arjun Prasad v. State of Examplia");
  g.add_node(d.d2, NodeKind::Document, "Meera Devi v. Union of Examplia");
  g.add_node(d.d3, NodeKind::Document, "Kishore Textiles Ltd. v. Labour Board");
  g.add_node(d.d4, NodeKind::Document, "Harbans Singh v. State of Examplia");
  g.add_node(d.d5, NodeKind::Document, "Nand Kumar v. Registrar of Marriages");

  g.add_node(d.act1, NodeKind::Act, "Constitution of Examplia, 1950");
  g.add_node(d.part1, NodeKind::Part, "Part VI");
  g.add_node(d.chap1, NodeKind::Chapter, "Chapter III");
  g.add_node(d.topic1, NodeKind::Topic, "Legislative Procedure");
  g.add_node(d.topic2, NodeKind::Topic, "Offences Relating to Marriage");
  g.add_node(d.s1, NodeKind::Section, "Article 190");
  g.add_node(d.s2, NodeKind::Section, "Article 192");
  g.add_node(d.s3, NodeKind::Section, "Article 195");

  g.add_node(d.act2, NodeKind::Act, "Dowry Prohibition Act, 1961");
  g.add_node(d.part2, NodeKind::Part, "Part II");
  g.add_node(d.s4, NodeKind::Section, "Section 3");
  g.add_node(d.s5, NodeKind::Section, "Section 4");

  g.add_edge(d.act1, d.part1, EdgeKind::Hierarchy);
  g.add_edge(d.part1, d.chap1, EdgeKind::Hierarchy);
  g.add_edge(d.chap1, d.topic1, EdgeKind::Hierarchy);
  g.add_edge(d.chap1, d.topic2, EdgeKind::Hierarchy);
  g.add_edge(d.topic1, d.s1, EdgeKind::Hierarchy);
  g.add_edge(d.topic1, d.s2, EdgeKind::Hierarchy);
  g.add_edge(d.topic2, d.s3, EdgeKind::Hierarchy);
  g.add_edge(d.act2, d.part2, EdgeKind::Hierarchy);
  g.add_edge(d.part2, d.s4, EdgeKind::Hierarchy);
  g.add_edge(d.part2, d.s5, EdgeKind::Hierarchy);

  g.add_edge(d.d1, d.s1, EdgeKind::Citation);
  g.add_edge(d.d1, d.s2, EdgeKind::Citation);
  g.add_edge(d.d2, d.s1, EdgeKind::Citation);
  g.add_edge(d.d3, d.s2, EdgeKind::Citation);
  g.add_edge(d.d3, d.s3, EdgeKind::Citation);
  g.add_edge(d.d5, d.act2, EdgeKind::Citation);
  g.add_edge(d.s3, d.s5, EdgeKind::Citation);
  g.add_edge(d.d1, d.d4, EdgeKind::Citation);
  g.add_edge(d.d3, d.d4, EdgeKind::Citation);
  g.add_edge(d.d2, d.d5, EdgeKind::Citation);

  return d;
}

HeteroGraph random_legal_graph(std::mt19937_64& rng, std::size_t max_nodes) {
  HeteroGraph g;
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::size_t n_docs = 2 + pick(max_nodes / 2 - 1);
  std::vector<std::string> docs;
  for (std::size_t i = 0; i < n_docs; ++i) {
    docs.push_back("d" + std::to_string(i));
    g.add_node(docs.back(), NodeKind::Document);
  }

  std::size_t budget = max_nodes - n_docs;
  std::size_t n_acts = budget == 0 ? 0 : 1 + pick(std::min<std::size_t>(3, budget));
  std::vector<std::string> acts, sections;
  // per act, nodes at each statute depth, for parent selection
  std::vector<std::vector<std::vector<std::string>>> tiers;
  for (std::size_t i = 0; i < n_acts; ++i) {
    acts.push_back("a" + std::to_string(i));
    g.add_node(acts.back(), NodeKind::Act);
    tiers.push_back({{acts.back()}, {}, {}, {}, {}});
  }
  budget -= n_acts;

  const NodeKind depth_kind[5] = {NodeKind::Act, NodeKind::Part,
                                  NodeKind::Chapter, NodeKind::Topic,
                                  NodeKind::Section};
  std::size_t serial = 0;
  while (budget > 0 && !acts.empty()) {
    // skew toward sections so most graphs have leaves to cite
    std::size_t depth = 1 + pick(6);
    if (depth > 4) depth = 4;
    std::size_t act = pick(acts.size());

    std::vector<std::string> parents;
    for (std::size_t d = 0; d < depth; ++d)
      parents.insert(parents.end(), tiers[act][d].begin(),
                     tiers[act][d].end());
    const std::string& parent = parents[pick(parents.size())];

    std::string id =
        acts[act] + "/" + std::string(to_string(depth_kind[depth])) + ":" +
        std::to_string(++serial);
    g.add_node(id, depth_kind[depth]);
    g.add_edge(parent, id, EdgeKind::Hierarchy);
    tiers[act][depth].push_back(id);
    if (depth == 4) sections.push_back(id);
    --budget;
  }

  std::vector<std::string> citers = docs;
  citers.insert(citers.end(), sections.begin(), sections.end());
  citers.insert(citers.end(), acts.begin(), acts.end());

  std::size_t attempts = 2 * g.node_count() + pick(3 * g.node_count() + 1);
  for (std::size_t k = 0; k < attempts; ++k) {
    const std::string& src = citers[pick(citers.size())];
    bool from_doc = g.node(src).kind == NodeKind::Document;

    std::vector<const std::vector<std::string>*> pools;
    if (from_doc) pools.push_back(&docs);
    pools.push_back(&sections);
    pools.push_back(&acts);
    const std::vector<std::string>& pool = *pools[pick(pools.size())];
    if (pool.empty()) continue;
    const std::string& dst = pool[pick(pool.size())];
    if (src == dst) continue;
    g.add_edge(src, dst, EdgeKind::Citation);
  }
  return g;
}

AdjacencyMap citation_out_map(const HeteroGraph& g) {
  AdjacencyMap m;
  for (const auto& n : g.nodes()) m[n.id];
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::Citation) m[e.src].insert(e.dst);
  return m;
}

AdjacencyMap citation_in_map(const HeteroGraph& g) {
  AdjacencyMap m;
  for (const auto& n : g.nodes()) m[n.id];
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::Citation) m[e.dst].insert(e.src);
  return m;
}

AdjacencyMap undirected_map(const HeteroGraph& g) {
  AdjacencyMap m;
  for (const auto& n : g.nodes()) m[n.id];
  for (const auto& e : g.edges()) {
    m[e.src].insert(e.dst);
    m[e.dst].insert(e.src);
  }
  return m;
}

double oracle_jaccard(const std::set<std::string>& a,
                      const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  return static_cast<double>(inter) /
         static_cast<double>(a.size() + b.size() - inter);
}

double oracle_coupling(const HeteroGraph& g, const std::string& u,
                       const std::string& v) {
  AdjacencyMap m = citation_out_map(g);
  return oracle_jaccard(m[u], m[v]);
}

double oracle_cocitation(const HeteroGraph& g, const std::string& u,
                         const std::string& v) {
  AdjacencyMap m = citation_in_map(g);
  return oracle_jaccard(m[u], m[v]);
}

double oracle_dispersion(const HeteroGraph& g, const std::string& u_in,
                         const std::string& v_in, bool normalized) {
  std::string u = u_in, v = v_in;
  if (v < u) std::swap(u, v);

  AdjacencyMap adj = undirected_map(g);
  const std::set<std::string>& nu = adj[u];
  const std::set<std::string>& nv = adj[v];

  std::vector<std::string> common;
  for (const auto& x : nu)
    if (nv.count(x) && x != u && x != v) common.push_back(x);

  long raw = 0;
  for (std::size_t i = 0; i < common.size(); ++i) {
    std::set<std::string> nbrs_s;
    for (const auto& w : adj[common[i]])
      if (nu.count(w) && w != u && w != v) nbrs_s.insert(w);
    for (std::size_t j = i + 1; j < common.size(); ++j) {
      if (nbrs_s.count(common[j])) continue;
      bool shared = false;
      for (const auto& w : nbrs_s)
        if (adj[common[j]].count(w)) {
          shared = true;
          break;
        }
      if (!shared) ++raw;
    }
  }

  if (!normalized) return static_cast<double>(raw);
  if (common.empty()) return 0.0;
  return static_cast<double>(raw) / static_cast<double>(common.size());
}

NodeKind oracle_schema_kind(const MetapathSchema& schema, std::size_t j) {
  if (j == 0) return schema.kinds[0];
  std::size_t interior = schema.kinds.size() - 1;
  return schema.kinds[1 + (j - 1) % interior];
}

bool walk_matches_schema(const HeteroGraph& g, const MetapathSchema& schema,
                         const Walk& walk) {
  if (walk.nodes.empty()) return false;
  AdjacencyMap adj = undirected_map(g);
  for (std::size_t j = 0; j < walk.nodes.size(); ++j) {
    if (!g.has_node(walk.nodes[j])) return false;
    if (g.node(walk.nodes[j]).kind != oracle_schema_kind(schema, j))
      return false;
    if (j > 0 && !adj[walk.nodes[j - 1]].count(walk.nodes[j])) return false;
  }
  return true;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  path_ = fs::temp_directory_path() /
          ("hiernet_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter.fetch_add(1)));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string{std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>()};
}

void spit(const fs::path& path, const std::string& content) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << content;
}

}  // namespace hiernet::testsupport
