#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>

#include "hiernet/graph.hpp"
#include "hiernet/walks.hpp"

namespace hiernet::testsupport {

// Hand-built copy of the demo fixture network: five judgments, a
// constitution-like act with a part/chapter/topic spine, and a second flat
// act. 17 nodes, 20 edges.
struct DemoGraph {
  HeteroGraph g;

  std::string d1 = "1972_31";
  std::string d2 = "1984_115";
  std::string d3 = "1990_55";
  std::string d4 = "1965_12";
  std::string d5 = "2001_87";

  std::string act1 = "constitution-of-examplia-1950";
  std::string part1 = "constitution-of-examplia-1950/part:1";
  std::string chap1 = "constitution-of-examplia-1950/chapter:1";
  std::string topic1 = "constitution-of-examplia-1950/topic:1";
  std::string topic2 = "constitution-of-examplia-1950/topic:2";
  std::string s1 = "constitution-of-examplia-1950/section:1";
  std::string s2 = "constitution-of-examplia-1950/section:2";
  std::string s3 = "constitution-of-examplia-1950/section:3";

  std::string act2 = "dowry-prohibition-act-1961";
  std::string part2 = "dowry-prohibition-act-1961/part:1";
  std::string s4 = "dowry-prohibition-act-1961/section:1";
  std::string s5 = "dowry-prohibition-act-1961/section:2";
};

DemoGraph make_demo_graph();

// Random graph that respects the typed-edge rules: a forest of statute
// nodes under 1-3 acts plus documents, with random legal citation edges.
// At least two documents; node count <= max_nodes.
HeteroGraph random_legal_graph(std::mt19937_64& rng, std::size_t max_nodes);

// ---- brute-force reference implementations, string/set based ----

using AdjacencyMap = std::map<std::string, std::set<std::string>>;

AdjacencyMap citation_out_map(const HeteroGraph& g);
AdjacencyMap citation_in_map(const HeteroGraph& g);
AdjacencyMap undirected_map(const HeteroGraph& g);  // both edge kinds

double oracle_jaccard(const std::set<std::string>& a,
                      const std::set<std::string>& b);
double oracle_coupling(const HeteroGraph& g, const std::string& u,
                       const std::string& v);
double oracle_cocitation(const HeteroGraph& g, const std::string& u,
                         const std::string& v);
double oracle_dispersion(const HeteroGraph& g, const std::string& u,
                         const std::string& v, bool normalized);

// Re-derives the kind demanded at walk position j (head once, interior
// cycled); independent of schema_kind_at.
NodeKind oracle_schema_kind(const MetapathSchema& schema, std::size_t j);

// True when every node exists, kinds follow the cycled schema and
// consecutive nodes are adjacent in the undirected view.
bool walk_matches_schema(const HeteroGraph& g, const MetapathSchema& schema,
                         const Walk& walk);

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& path);
void spit(const std::filesystem::path& path, const std::string& content);

}  // namespace hiernet::testsupport
