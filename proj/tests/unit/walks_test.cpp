#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "hiernet/walks.hpp"
#include "support.hpp"

using namespace hiernet;
using namespace hiernet::testsupport;

namespace {

HeteroGraph path_graph() {
  // x - y - z plus a triangle y - w - z
  HeteroGraph g;
  for (const char* id : {"w", "x", "y", "z"}) g.add_node(id, NodeKind::Document);
  g.add_edge("x", "y", EdgeKind::Citation);
  g.add_edge("y", "z", EdgeKind::Citation);
  g.add_edge("y", "w", EdgeKind::Citation);
  g.add_edge("w", "z", EdgeKind::Citation);
  return g;
}

}  // namespace

TEST_CASE("second-order weights follow the p/q rules") {
  HeteroGraph g = path_graph();
  const double p = 4.0, q = 0.25;
  // walking x -> y, the options are w, x, z
  CHECK(transition_weight(g, "x", "y", "x", p, q) == 1.0 / p);   // return
  CHECK(transition_weight(g, "x", "y", "w", p, q) == 1.0 / q);   // outward
  CHECK(transition_weight(g, "x", "y", "z", p, q) == 1.0 / q);   // outward
  // walking w -> y: z stays adjacent to the previous node
  CHECK(transition_weight(g, "w", "y", "z", p, q) == 1.0);
  CHECK(transition_weight(g, "w", "y", "x", p, q) == 1.0 / q);
  CHECK(transition_weight(g, "w", "y", "w", p, q) == 1.0 / p);
  CHECK_THROWS_AS(transition_weight(g, "x", "y", "y", p, q), NotAdjacentError);
  CHECK_THROWS_AS(transition_weight(g, "z", "x", "y", p, q), NotAdjacentError);
}

TEST_CASE("the step distribution lists candidates in id order with weights") {
  HeteroGraph g = path_graph();
  UndirectedIndex idx(g);
  auto prev = g.index_of("x");
  auto cur = g.index_of("y");
  StepDistribution d = node2vec_distribution(g, idx, prev, cur, 4.0, 0.25);
  REQUIRE(d.candidates.size() == 3);
  REQUIRE(d.weights.size() == 3);
  CHECK(g.node(d.candidates[0]).id == "w");
  CHECK(g.node(d.candidates[1]).id == "x");
  CHECK(g.node(d.candidates[2]).id == "z");
  CHECK(d.weights[0] == 4.0);   // 1/q
  CHECK(d.weights[1] == 0.25);  // 1/p
  CHECK(d.weights[2] == 4.0);   // 1/q
}

TEST_CASE("walks start everywhere, respect adjacency and the length cap") {
  DemoGraph demo = make_demo_graph();
  WalkConfig wc;
  wc.walk_length = 6;
  wc.walks_per_node = 3;
  wc.rng_seed = 5;
  WalkCorpus corpus = node2vec_walks(demo.g, wc);

  CHECK(corpus.walks.size() == demo.g.node_count() * 3);
  CHECK(corpus.provenance.generator == "node2vec");

  UndirectedIndex idx(demo.g);
  std::map<std::string, int> starts;
  for (const Walk& w : corpus.walks) {
    REQUIRE(!w.nodes.empty());
    CHECK(w.nodes.size() <= 6);
    CHECK(w.schema_index == -1);
    ++starts[w.nodes.front()];
    for (std::size_t i = 1; i < w.nodes.size(); ++i)
      CHECK(idx.adjacent(demo.g.index_of(w.nodes[i - 1]),
                         demo.g.index_of(w.nodes[i])));
  }
  for (const auto& n : demo.g.nodes()) CHECK(starts[n.id] == 3);

  // canonical emission order: roots ascending by id, repetitions in order
  auto sorted = demo.g.sorted_indices();
  for (std::size_t r = 0; r < sorted.size(); ++r)
    for (int rep = 0; rep < 3; ++rep)
      CHECK(corpus.walks[r * 3 + rep].nodes.front() ==
            demo.g.node(sorted[r]).id);
}

TEST_CASE("an isolated node walks in place") {
  HeteroGraph g;
  g.add_node("alone", NodeKind::Document);
  WalkConfig wc;
  wc.walk_length = 5;
  wc.walks_per_node = 2;
  WalkCorpus corpus = node2vec_walks(g, wc);
  REQUIRE(corpus.walks.size() == 2);
  for (const Walk& w : corpus.walks)
    CHECK(w.nodes == std::vector<std::string>{"alone"});
}

TEST_CASE("seeded walks reproduce and are thread-count independent") {
  DemoGraph demo = make_demo_graph();
  WalkConfig wc;
  wc.walk_length = 8;
  wc.walks_per_node = 10;
  wc.rng_seed = 99;

  WalkCorpus a = node2vec_walks(demo.g, wc, 1);
  WalkCorpus b = node2vec_walks(demo.g, wc, 1);
  WalkCorpus c = node2vec_walks(demo.g, wc, 4);
  REQUIRE(a.walks.size() == b.walks.size());
  REQUIRE(a.walks.size() == c.walks.size());
  for (std::size_t i = 0; i < a.walks.size(); ++i) {
    CHECK(a.walks[i].nodes == b.walks[i].nodes);
    CHECK(a.walks[i].nodes == c.walks[i].nodes);
  }

  wc.rng_seed = 100;
  WalkCorpus d = node2vec_walks(demo.g, wc);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.walks.size() && !any_diff; ++i)
    any_diff = a.walks[i].nodes != d.walks[i].nodes;
  CHECK(any_diff);
}

TEST_CASE("schema validation catches the contract violations") {
  MetapathSchema ok;
  ok.name = "doc-sec-doc";
  ok.kinds = {NodeKind::Document, NodeKind::Section, NodeKind::Document};
  CHECK_FALSE(validate_schema(ok).has_value());

  MetapathSchema bad_end;
  bad_end.kinds = {NodeKind::Section, NodeKind::Document, NodeKind::Section};
  auto v = validate_schema(bad_end);
  REQUIRE(v.has_value());

  MetapathSchema too_short;
  too_short.kinds = {NodeKind::Document, NodeKind::Document};
  CHECK(validate_schema(too_short).has_value());

  MetapathSchema no_edge;
  no_edge.kinds = {NodeKind::Document, NodeKind::Part, NodeKind::Document};
  v = validate_schema(no_edge);
  REQUIRE(v.has_value());
  CHECK(v->position == 1);
}

TEST_CASE("the cycled kind sequence repeats the schema interior") {
  MetapathSchema s;
  s.name = "doc-sec-topic-sec-doc";
  s.kinds = {NodeKind::Document, NodeKind::Section, NodeKind::Topic,
             NodeKind::Section, NodeKind::Document};
  for (std::size_t j = 0; j < 16; ++j)
    CHECK(schema_kind_at(s, j) == oracle_schema_kind(s, j));
  CHECK(schema_kind_at(s, 0) == NodeKind::Document);
  CHECK(schema_kind_at(s, 4) == NodeKind::Document);
  CHECK(schema_kind_at(s, 5) == NodeKind::Section);  // interior wraps
  CHECK(schema_kind_at(s, 6) == NodeKind::Topic);
}

TEST_CASE("metapath walks conform to their schema and split the budget") {
  DemoGraph demo = make_demo_graph();
  MetapathSchema dsd;
  dsd.name = "doc-sec-doc";
  dsd.kinds = {NodeKind::Document, NodeKind::Section, NodeKind::Document};
  MetapathSchema dad;
  dad.name = "doc-act-doc";
  dad.kinds = {NodeKind::Document, NodeKind::Act, NodeKind::Document};
  MetapathSchema ddd;
  ddd.name = "doc-doc-doc";
  ddd.kinds = {NodeKind::Document, NodeKind::Document, NodeKind::Document};
  std::vector<MetapathSchema> schemas = {dsd, dad, ddd};

  WalkConfig wc;
  wc.walk_length = 5;
  wc.walks_per_node = 8;  // 3 schemas: reps 3, 3, 2
  wc.rng_seed = 17;
  WalkCorpus corpus = metapath_walks(demo.g, schemas, wc);

  // five document roots, eight walks each
  CHECK(corpus.walks.size() == 40);
  CHECK(corpus.provenance.generator == "metapath");
  REQUIRE(corpus.provenance.schema_names.size() == 3);

  std::map<std::pair<std::string, int>, int> by_root_schema;
  for (const Walk& w : corpus.walks) {
    REQUIRE(w.schema_index >= 0);
    REQUIRE(w.schema_index < 3);
    CHECK(walk_matches_schema(demo.g, schemas[w.schema_index], w));
    CHECK(demo.g.node(w.nodes.front()).kind == NodeKind::Document);
    ++by_root_schema[{w.nodes.front(), w.schema_index}];
  }
  for (const auto& d : {demo.d1, demo.d2, demo.d3, demo.d4, demo.d5}) {
    CHECK(by_root_schema[{d, 0}] == 3);
    CHECK(by_root_schema[{d, 1}] == 3);
    CHECK(by_root_schema[{d, 2}] == 2);
  }
}

TEST_CASE("metapath walks truncate at dead ends instead of inventing steps") {
  DemoGraph demo = make_demo_graph();
  MetapathSchema dad;
  dad.name = "doc-act-doc";
  dad.kinds = {NodeKind::Document, NodeKind::Act, NodeKind::Document};
  WalkConfig wc;
  wc.walk_length = 3;
  wc.walks_per_node = 4;
  wc.rng_seed = 2;
  WalkCorpus corpus = metapath_walks(demo.g, {dad}, wc);
  for (const Walk& w : corpus.walks) {
    if (w.nodes.front() == demo.d5) {
      // d5 is the only judgment touching an act, so the walk bounces back
      CHECK(w.nodes ==
            std::vector<std::string>{demo.d5, demo.act2, demo.d5});
    } else {
      // no act in reach: the walk stops at its root
      CHECK(w.nodes == std::vector<std::string>{w.nodes.front()});
    }
  }
}

TEST_CASE("invalid schemas are rejected before any walking") {
  DemoGraph demo = make_demo_graph();
  MetapathSchema bad;
  bad.name = "sec-doc-sec";
  bad.kinds = {NodeKind::Section, NodeKind::Document, NodeKind::Section};
  WalkConfig wc;
  CHECK_THROWS_AS(metapath_walks(demo.g, {bad}, wc), InvalidSchemaError);
  CHECK_THROWS_AS(metapath_walks(demo.g, {}, wc), InvalidSchemaError);
}

TEST_CASE("the built-in schema set is valid and document-anchored") {
  auto schemas = default_metapaths();
  CHECK(schemas.size() == 14);
  std::set<std::string> names;
  for (const auto& s : schemas) {
    CHECK_FALSE(validate_schema(s).has_value());
    CHECK(s.kinds.front() == NodeKind::Document);
    CHECK(s.kinds.back() == NodeKind::Document);
    names.insert(s.name);
  }
  CHECK(names.size() == 14);
  CHECK(names.count("doc-doc-doc") == 1);
  CHECK(names.count("doc-sec-doc") == 1);
}

TEST_CASE("metapath schema files load with defaulted names") {
  TempDir dir("schemas");
  auto path = dir.path() / "metapaths.json";
  spit(path,
       R"([{"name": "cited-section", "kinds": ["document", "section", "document"]},)"
       R"( {"kinds": ["doc", "act", "doc"]}])");
  auto schemas = load_metapaths_json(path);
  REQUIRE(schemas.size() == 2);
  CHECK(schemas[0].name == "cited-section");
  CHECK(schemas[0].kinds[1] == NodeKind::Section);
  CHECK(schemas[1].name == "document-act-document");
  CHECK(schemas[1].kinds[1] == NodeKind::Act);

  spit(path, R"([{"kinds": ["document", "nonsense", "document"]}])");
  CHECK_THROWS_AS(load_metapaths_json(path), ParseError);
}

TEST_CASE("walk corpora round-trip through their text format") {
  DemoGraph demo = make_demo_graph();
  WalkConfig wc;
  wc.walk_length = 5;
  wc.walks_per_node = 4;
  wc.rng_seed = 31;
  WalkCorpus corpus = node2vec_walks(demo.g, wc);

  TempDir dir("walkio");
  auto path = dir.path() / "walks.txt";
  save_walks(corpus, path, {{"network", "hier"}});
  CHECK(std::filesystem::exists(dir.path() / "walks.txt.meta.json"));

  WalkCorpus back = load_walks(path);
  REQUIRE(back.walks.size() == corpus.walks.size());
  for (std::size_t i = 0; i < corpus.walks.size(); ++i)
    CHECK(back.walks[i].nodes == corpus.walks[i].nodes);
  CHECK(back.provenance.generator == "node2vec");
  CHECK(back.provenance.config.walk_length == 5);
  CHECK(back.provenance.config.walks_per_node == 4);
  CHECK(back.provenance.config.rng_seed == 31);
}
