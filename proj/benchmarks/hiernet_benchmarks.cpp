#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "hiernet/embedding.hpp"
#include "hiernet/graph.hpp"
#include "hiernet/measures.hpp"
#include "hiernet/util.hpp"
#include "hiernet/walks.hpp"

using namespace hiernet;

namespace {

// Synthetic network shaped like the real corpora: a few acts with sections
// under them, documents citing a handful of sections and other documents.
HeteroGraph synthetic_graph(std::size_t docs, std::size_t acts,
                            std::size_t sections_per_act) {
  HeteroGraph g;
  std::mt19937_64 rng(12345);
  std::vector<std::string> doc_ids, sec_ids;

  for (std::size_t a = 0; a < acts; ++a) {
    std::string act = "act-" + std::to_string(a);
    g.add_node(act, NodeKind::Act);
    std::string part = act + "/part:1";
    g.add_node(part, NodeKind::Part);
    g.add_edge(act, part, EdgeKind::Hierarchy);
    for (std::size_t s = 0; s < sections_per_act; ++s) {
      std::string sec = act + "/section:" + std::to_string(s + 1);
      g.add_node(sec, NodeKind::Section);
      g.add_edge(part, sec, EdgeKind::Hierarchy);
      sec_ids.push_back(sec);
    }
  }
  for (std::size_t d = 0; d < docs; ++d) {
    std::string id = "doc_" + std::to_string(1900 + d % 100) + "_" +
                     std::to_string(d);
    g.add_node(id, NodeKind::Document);
    doc_ids.push_back(id);
  }
  for (const std::string& id : doc_ids) {
    for (int k = 0; k < 4; ++k)
      g.add_edge(id, sec_ids[uniform_index(rng, sec_ids.size())],
                 EdgeKind::Citation);
    for (int k = 0; k < 2; ++k) {
      const std::string& peer = doc_ids[uniform_index(rng, doc_ids.size())];
      if (peer != id) g.add_edge(id, peer, EdgeKind::Citation);
    }
  }
  return g;
}

void BM_Node2vecWalks(benchmark::State& state) {
  HeteroGraph g = synthetic_graph(static_cast<std::size_t>(state.range(0)), 4, 40);
  WalkConfig wc;
  wc.walk_length = 20;
  wc.walks_per_node = 5;
  wc.return_param_p = 4.0;
  wc.inout_param_q = 0.25;
  wc.rng_seed = 1;
  for (auto _ : state) {
    WalkCorpus corpus = node2vec_walks(g, wc);
    benchmark::DoNotOptimize(corpus.walks.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g.node_count()) * 5);
}

void BM_MetapathWalks(benchmark::State& state) {
  HeteroGraph g = synthetic_graph(static_cast<std::size_t>(state.range(0)), 4, 40);
  auto schemas = default_metapaths();
  WalkConfig wc;
  wc.walk_length = 20;
  wc.walks_per_node = 14;
  wc.rng_seed = 1;
  for (auto _ : state) {
    WalkCorpus corpus = metapath_walks(g, schemas, wc);
    benchmark::DoNotOptimize(corpus.walks.data());
  }
}

void BM_SgnsStep(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  WalkCorpus corpus;
  for (int i = 0; i < 64; ++i)
    corpus.walks.push_back(Walk{{"n" + std::to_string(i)}, -1});
  EmbeddingTable table;
  table.vocab = build_vocab(corpus);
  table.dimension = static_cast<int>(dim);
  table.input.resize(64 * dim, 0.01);
  table.output.resize(64 * dim, 0.02);

  std::mt19937_64 rng(7);
  std::vector<std::size_t> negatives = {3, 17, 42, 55, 60};
  std::size_t center = 0;
  for (auto _ : state) {
    center = (center + 1) % 64;
    double obj = sgns_step(table, center, (center + 7) % 64, negatives, 0.025);
    benchmark::DoNotOptimize(obj);
  }
}

void BM_Train(benchmark::State& state) {
  HeteroGraph g = synthetic_graph(200, 2, 30);
  WalkConfig wc;
  wc.walk_length = 10;
  wc.walks_per_node = 3;
  wc.rng_seed = 2;
  WalkCorpus corpus = node2vec_walks(g, wc);
  TrainConfig tc;
  tc.dimension = static_cast<int>(state.range(0));
  tc.epochs = 1;
  tc.rng_seed = 2;
  for (auto _ : state) {
    EmbeddingTable t = train(corpus, tc);
    benchmark::DoNotOptimize(t.input.data());
  }
}

void BM_ClassicalMeasures(benchmark::State& state) {
  HeteroGraph g = synthetic_graph(static_cast<std::size_t>(state.range(0)), 4, 40);
  std::vector<std::string> docs;
  for (const auto& n : g.nodes())
    if (n.kind == NodeKind::Document) docs.push_back(n.id);
  std::mt19937_64 rng(3);
  for (auto _ : state) {
    const std::string& u = docs[uniform_index(rng, docs.size())];
    const std::string& v = docs[uniform_index(rng, docs.size())];
    if (u == v) continue;
    benchmark::DoNotOptimize(bibliographic_coupling(g, u, v).value);
    benchmark::DoNotOptimize(co_citation(g, u, v).value);
    benchmark::DoNotOptimize(dispersion(g, u, v).value);
  }
}

BENCHMARK(BM_Node2vecWalks)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MetapathWalks)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SgnsStep)->Arg(32)->Arg(128)->Arg(200);
BENCHMARK(BM_Train)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalMeasures)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
