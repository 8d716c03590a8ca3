#include <random>
#include <vector>

#include "doctest.h"
#include "hiernet/graph.hpp"
#include "hiernet/measures.hpp"
#include "support.hpp"

using namespace hiernet;
using namespace hiernet::testsupport;

namespace {

// six documents, nine mutual citations; dispersion reference values below
// were cross-checked against networkx on the same undirected graph
HeteroGraph ring_graph() {
  HeteroGraph g;
  for (const char* id : {"a", "b", "c", "d", "e", "f"})
    g.add_node(id, NodeKind::Document);
  for (auto [s, d] : std::vector<std::pair<const char*, const char*>>{
           {"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"},
           {"c", "e"}, {"d", "e"}, {"e", "f"}, {"a", "f"}})
    g.add_edge(s, d, EdgeKind::Citation);
  return g;
}

}  // namespace

TEST_CASE("coupling and co-citation on the demo network by hand") {
  DemoGraph demo = make_demo_graph();
  const HeteroGraph& g = demo.g;

  // out(d1) = {s1, s2, d4}, out(d3) = {s2, s3, d4}: two shared of four
  CHECK(bibliographic_coupling(g, demo.d1, demo.d3).value == 0.5);
  // out(d2) = {s1, d5}: one shared of four
  CHECK(bibliographic_coupling(g, demo.d1, demo.d2).value == 0.25);
  // d4 cites nothing at all
  CHECK(bibliographic_coupling(g, demo.d4, demo.d5).value == 0.0);

  // in(d4) = {d1, d3}, in(d5) = {d2}: disjoint
  CHECK(co_citation(g, demo.d4, demo.d5).value == 0.0);
  // nothing cites d1 or d3
  CHECK(co_citation(g, demo.d1, demo.d3).value == 0.0);

  SimilarityScore s = bibliographic_coupling(g, demo.d1, demo.d3);
  CHECK(s.method == SimilarityMethod::BibliographicCoupling);
  CHECK(s.doc_a == demo.d1);
  CHECK(s.doc_b == demo.d3);
}

TEST_CASE("non-documents and unknown ids are rejected") {
  DemoGraph demo = make_demo_graph();
  CHECK_THROWS_AS(bibliographic_coupling(demo.g, demo.s1, demo.d1),
                  NotADocumentError);
  CHECK_THROWS_AS(co_citation(demo.g, demo.d1, demo.act1), NotADocumentError);
  CHECK_THROWS_AS(dispersion(demo.g, demo.d1, demo.topic1), NotADocumentError);
  CHECK_THROWS_AS(co_citation(demo.g, demo.d1, "ghost"), UnknownNodeError);
}

TEST_CASE("statute neighbors count toward coupling") {
  DemoGraph demo = make_demo_graph();
  HeteroGraph view = pcnet_view(demo.g);
  // on the full graph the shared section s2 dominates; on the document-only
  // view d1 and d3 still share d4
  CHECK(bibliographic_coupling(demo.g, demo.d1, demo.d3).value == 0.5);
  CHECK(bibliographic_coupling(view, demo.d1, demo.d3).value == 1.0);
}

TEST_CASE("co-citation ignores the statute side entirely") {
  DemoGraph demo = make_demo_graph();
  HeteroGraph view = pcnet_view(demo.g);
  std::vector<std::string> docs = {demo.d1, demo.d2, demo.d3, demo.d4, demo.d5};
  for (std::size_t i = 0; i < docs.size(); ++i)
    for (std::size_t j = i + 1; j < docs.size(); ++j)
      CHECK(co_citation(demo.g, docs[i], docs[j]).value ==
            co_citation(view, docs[i], docs[j]).value);
}

TEST_CASE("dispersion matches hand-checked reference values") {
  HeteroGraph g = ring_graph();
  CHECK(dispersion(g, "a", "b", false).value == 1.0);
  CHECK(dispersion(g, "a", "b", true).value == 0.5);
  CHECK(dispersion(g, "a", "e", false).value == 2.0);
  CHECK(dispersion(g, "a", "e", true).value == 2.0 / 3.0);
  CHECK(dispersion(g, "b", "e", false).value == 0.0);
  CHECK(dispersion(g, "a", "f", false).value == 0.0);
  CHECK(dispersion(g, "c", "d", false).value == 2.0);
  CHECK(dispersion(g, "c", "d", true).value == 2.0 / 3.0);
}

TEST_CASE("dispersion is symmetric in its arguments") {
  HeteroGraph g = ring_graph();
  for (const char* u : {"a", "b", "c", "d", "e", "f"})
    for (const char* v : {"a", "b", "c", "d", "e", "f"}) {
      if (std::string(u) == v) continue;
      CHECK(dispersion(g, u, v, false).value == dispersion(g, v, u, false).value);
      CHECK(dispersion(g, u, v, true).value == dispersion(g, v, u, true).value);
    }
}

TEST_CASE("dispersion with no common neighbors is zero, not undefined") {
  HeteroGraph g;
  g.add_node("u", NodeKind::Document);
  g.add_node("v", NodeKind::Document);
  g.add_edge("u", "v", EdgeKind::Citation);
  CHECK(dispersion(g, "u", "v", false).value == 0.0);
  CHECK(dispersion(g, "u", "v", true).value == 0.0);
}

TEST_CASE("the four-cycle is the minimal dispersed pair") {
  HeteroGraph g;
  for (const char* id : {"u", "v", "s", "t"}) g.add_node(id, NodeKind::Document);
  g.add_edge("u", "s", EdgeKind::Citation);
  g.add_edge("u", "t", EdgeKind::Citation);
  g.add_edge("v", "s", EdgeKind::Citation);
  g.add_edge("v", "t", EdgeKind::Citation);
  CHECK(dispersion(g, "u", "v", false).value == 1.0);
  CHECK(dispersion(g, "u", "v", true).value == 0.5);
  // connecting s and t removes the dispersed pair
  g.add_edge("s", "t", EdgeKind::Citation);
  CHECK(dispersion(g, "u", "v", false).value == 0.0);
}

TEST_CASE("hierarchy edges feed dispersion neighborhoods") {
  DemoGraph demo = make_demo_graph();
  // common neighbors of d1 and d3 are {s2, d4}: not adjacent, no shared
  // connection inside d1's neighborhood, so one dispersed pair
  CHECK(dispersion(demo.g, demo.d1, demo.d3, false).value == 1.0);
  CHECK(dispersion(demo.g, demo.d1, demo.d3, true).value == 0.5);
  // d1 and d2 share only s1, too few for a pair
  CHECK(dispersion(demo.g, demo.d1, demo.d2, false).value == 0.0);
}

TEST_CASE("all three measures agree with brute-force oracles on random graphs") {
  std::mt19937_64 rng(777);
  for (int k = 0; k < 10; ++k) {
    HeteroGraph g = random_legal_graph(rng, 15);
    std::vector<std::string> docs;
    for (const auto& n : g.nodes())
      if (n.kind == NodeKind::Document) docs.push_back(n.id);
    for (std::size_t i = 0; i < docs.size(); ++i)
      for (std::size_t j = i + 1; j < docs.size(); ++j) {
        CAPTURE(k);
        CAPTURE(docs[i]);
        CAPTURE(docs[j]);
        CHECK(bibliographic_coupling(g, docs[i], docs[j]).value ==
              oracle_coupling(g, docs[i], docs[j]));
        CHECK(co_citation(g, docs[i], docs[j]).value ==
              oracle_cocitation(g, docs[i], docs[j]));
        CHECK(dispersion(g, docs[i], docs[j], false).value ==
              oracle_dispersion(g, docs[i], docs[j], false));
        CHECK(dispersion(g, docs[i], docs[j], true).value ==
              oracle_dispersion(g, docs[i], docs[j], true));
      }
  }
}

TEST_CASE("method names render for reports") {
  CHECK(to_string(SimilarityMethod::BibliographicCoupling) ==
        "bibliographic_coupling");
  CHECK(to_string(SimilarityMethod::CoCitation) == "co_citation");
  CHECK(to_string(SimilarityMethod::Dispersion) == "dispersion");
}
