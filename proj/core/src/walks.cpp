#include "hiernet/walks.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <thread>

#include <nlohmann/json.hpp>

#include "hiernet/util.hpp"

namespace hiernet {

namespace {

using nlohmann::json;
using NodeIndex = HeteroGraph::NodeIndex;

uint64_t stream_seed(uint64_t base, std::string_view root_id,
                     std::string_view tag, uint64_t rep) {
  uint64_t h = hash_combine(base, fnv1a64(root_id));
  h = hash_combine(h, fnv1a64(tag));
  return hash_combine(h, rep);
}

void check_config(const WalkConfig& c) {
  if (c.walk_length < 2) throw Error("walk_length must be at least 2");
  if (c.walks_per_node < 1) throw Error("walks_per_node must be positive");
  if (!(c.return_param_p > 0.0) || !(c.inout_param_q > 0.0))
    throw Error("walk bias parameters p and q must be positive");
}

// Runs job(i) for i in [0, n) across the requested number of threads. Every
// job writes only its own slot, so the result is schedule-independent.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& job) {
  int workers = std::max(1, threads);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

json config_to_json(const WalkConfig& c) {
  return json{{"walk_length", c.walk_length},
              {"walks_per_node", c.walks_per_node},
              {"return_param_p", c.return_param_p},
              {"inout_param_q", c.inout_param_q},
              {"rng_seed", c.rng_seed}};
}

WalkConfig config_from_json(const json& j) {
  WalkConfig c;
  c.walk_length = j.value("walk_length", c.walk_length);
  c.walks_per_node = j.value("walks_per_node", c.walks_per_node);
  c.return_param_p = j.value("return_param_p", c.return_param_p);
  c.inout_param_q = j.value("inout_param_q", c.inout_param_q);
  c.rng_seed = j.value("rng_seed", c.rng_seed);
  return c;
}

}  // namespace

UndirectedIndex::UndirectedIndex(const HeteroGraph& g) {
  peers_.resize(g.node_count());
  by_index_.resize(g.node_count());
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    auto& list = peers_[i];
    for (const auto& he : g.out_edges(i)) list.push_back(he.peer);
    for (const auto& he : g.in_edges(i)) list.push_back(he.peer);
    std::sort(list.begin(), list.end(), [&g](NodeIndex a, NodeIndex b) {
      return g.node(a).id < g.node(b).id;
    });
    list.erase(std::unique(list.begin(), list.end()), list.end());
    by_index_[i] = list;
    std::sort(by_index_[i].begin(), by_index_[i].end());
  }
}

bool UndirectedIndex::adjacent(NodeIndex a, NodeIndex b) const {
  return std::binary_search(by_index_[a].begin(), by_index_[a].end(), b);
}

double transition_weight(const HeteroGraph& g, std::string_view prev,
                         std::string_view cur, std::string_view next,
                         double p, double q) {
  UndirectedIndex idx(g);
  NodeIndex ip = g.index_of(prev);
  NodeIndex ic = g.index_of(cur);
  NodeIndex in = g.index_of(next);
  if (!idx.adjacent(ic, ip))
    throw NotAdjacentError("'" + std::string(cur) + "' is not adjacent to '" +
                           std::string(prev) + "'");
  if (!idx.adjacent(ic, in))
    throw NotAdjacentError("'" + std::string(cur) + "' is not adjacent to '" +
                           std::string(next) + "'");
  if (in == ip) return 1.0 / p;
  if (idx.adjacent(in, ip)) return 1.0;
  return 1.0 / q;
}

StepDistribution node2vec_distribution(const HeteroGraph& g,
                                       const UndirectedIndex& idx,
                                       NodeIndex prev, NodeIndex cur, double p,
                                       double q) {
  (void)g;
  StepDistribution dist;
  auto cands = idx.peers(cur);
  dist.candidates.assign(cands.begin(), cands.end());
  dist.weights.reserve(cands.size());
  for (NodeIndex next : cands) {
    double w;
    if (next == prev) w = 1.0 / p;
    else if (idx.adjacent(next, prev)) w = 1.0;
    else w = 1.0 / q;
    dist.weights.push_back(w);
  }
  return dist;
}

WalkCorpus node2vec_walks(const HeteroGraph& g, const WalkConfig& config,
                          int threads) {
  check_config(config);
  WalkCorpus corpus;
  corpus.provenance.generator = "node2vec";
  corpus.provenance.config = config;

  UndirectedIndex idx(g);
  auto roots = g.sorted_indices();
  std::size_t reps = static_cast<std::size_t>(config.walks_per_node);
  corpus.walks.resize(roots.size() * reps);

  parallel_for(corpus.walks.size(), threads, [&](std::size_t slot) {
    NodeIndex root = roots[slot / reps];
    uint64_t rep = slot % reps;
    std::mt19937_64 rng(
        stream_seed(config.rng_seed, g.node(root).id, "node2vec", rep));

    std::vector<NodeIndex> path{root};
    auto first = idx.peers(root);
    if (!first.empty() && config.walk_length > 1) {
      path.push_back(first[uniform_index(rng, first.size())]);
      while (path.size() < static_cast<std::size_t>(config.walk_length)) {
        NodeIndex prev = path[path.size() - 2];
        NodeIndex cur = path.back();
        auto dist = node2vec_distribution(g, idx, prev, cur,
                                          config.return_param_p,
                                          config.inout_param_q);
        if (dist.candidates.empty()) break;
        path.push_back(dist.candidates[sample_weighted(rng, dist.weights)]);
      }
    }
    Walk& w = corpus.walks[slot];
    w.nodes.reserve(path.size());
    for (NodeIndex n : path) w.nodes.push_back(g.node(n).id);
  });
  return corpus;
}

std::optional<SchemaViolation> validate_schema(const MetapathSchema& schema) {
  const auto& kinds = schema.kinds;
  if (kinds.size() < 3)
    return SchemaViolation{0, "schema must name at least three kinds"};
  if (kinds.front() != NodeKind::Document)
    return SchemaViolation{0, "schema must start with Document"};
  if (kinds.back() != NodeKind::Document)
    return SchemaViolation{kinds.size() - 1, "schema must end with Document"};
  for (std::size_t i = 0; i + 1 < kinds.size(); ++i) {
    NodeKind a = kinds[i];
    NodeKind b = kinds[i + 1];
    bool ok = false;
    for (int e = 0; e < kEdgeKindCount && !ok; ++e) {
      EdgeKind k = static_cast<EdgeKind>(e);
      ok = edge_allowed(a, b, k) || edge_allowed(b, a, k);
    }
    if (!ok) {
      return SchemaViolation{
          i + 1, "no edge kind connects " + std::string(to_string(a)) +
                     " and " + std::string(to_string(b))};
    }
  }
  return std::nullopt;
}

NodeKind schema_kind_at(const MetapathSchema& schema, std::size_t j) {
  if (j == 0) return schema.kinds[0];
  std::size_t interior = schema.kinds.size() - 1;
  return schema.kinds[1 + (j - 1) % interior];
}

WalkCorpus metapath_walks(const HeteroGraph& g,
                          const std::vector<MetapathSchema>& schemas,
                          const WalkConfig& config, int threads) {
  check_config(config);
  if (schemas.empty()) throw InvalidSchemaError("no metapath schemas given");
  for (const auto& s : schemas) {
    if (auto v = validate_schema(s)) {
      throw InvalidSchemaError("schema '" + s.name + "': " + v->message);
    }
  }

  WalkCorpus corpus;
  corpus.provenance.generator = "metapath";
  corpus.provenance.config = config;
  for (const auto& s : schemas) corpus.provenance.schema_names.push_back(s.name);

  UndirectedIndex idx(g);
  std::vector<NodeIndex> roots;
  for (NodeIndex i : g.sorted_indices())
    if (g.node(i).kind == NodeKind::Document) roots.push_back(i);

  // walks_per_node is a per-root total; earlier schemas absorb the remainder
  std::size_t n_schemas = schemas.size();
  std::size_t budget = static_cast<std::size_t>(config.walks_per_node);
  std::vector<std::size_t> reps(n_schemas);
  for (std::size_t s = 0; s < n_schemas; ++s) {
    reps[s] = budget / n_schemas + (s < budget % n_schemas ? 1 : 0);
  }

  struct Task {
    NodeIndex root;
    std::size_t schema;
    uint64_t rep;
  };
  std::vector<Task> tasks;
  for (NodeIndex root : roots)
    for (std::size_t s = 0; s < n_schemas; ++s)
      for (uint64_t r = 0; r < reps[s]; ++r) tasks.push_back(Task{root, s, r});

  corpus.walks.resize(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t slot) {
    const Task& task = tasks[slot];
    const MetapathSchema& schema = schemas[task.schema];
    std::mt19937_64 rng(stream_seed(config.rng_seed, g.node(task.root).id,
                                    schema.name, task.rep));

    std::vector<NodeIndex> path{task.root};
    std::vector<NodeIndex> eligible;
    for (std::size_t j = 1;
         path.size() < static_cast<std::size_t>(config.walk_length); ++j) {
      NodeKind want = schema_kind_at(schema, j);
      eligible.clear();
      for (NodeIndex peer : idx.peers(path.back()))
        if (g.node(peer).kind == want) eligible.push_back(peer);
      if (eligible.empty()) break;
      path.push_back(eligible[uniform_index(rng, eligible.size())]);
    }
    Walk& w = corpus.walks[slot];
    w.schema_index = static_cast<int>(task.schema);
    w.nodes.reserve(path.size());
    for (NodeIndex n : path) w.nodes.push_back(g.node(n).id);
  });
  return corpus;
}

std::vector<MetapathSchema> default_metapaths() {
  using K = NodeKind;
  auto make = [](std::initializer_list<K> kinds) {
    MetapathSchema s;
    s.kinds = kinds;
    std::string name;
    static constexpr std::string_view kShort[] = {"doc",  "act",   "part",
                                                  "chap", "topic", "sec"};
    for (K k : kinds) {
      if (!name.empty()) name += '-';
      name += kShort[static_cast<int>(k)];
    }
    s.name = name;
    return s;
  };
  return {
      make({K::Document, K::Section, K::Document}),
      make({K::Document, K::Section, K::Topic, K::Section, K::Document}),
      make({K::Document, K::Section, K::Topic, K::Chapter, K::Topic,
            K::Section, K::Document}),
      make({K::Document, K::Document, K::Document}),
      make({K::Document, K::Act, K::Section, K::Document}),
      make({K::Document, K::Section, K::Part, K::Section, K::Document}),
      make({K::Document, K::Section, K::Act, K::Section, K::Document}),
      make({K::Document, K::Act, K::Document}),
      make({K::Document, K::Section, K::Chapter, K::Section, K::Document}),
      make({K::Document, K::Section, K::Section, K::Document}),
      make({K::Document, K::Document, K::Section, K::Document}),
      make({K::Document, K::Section, K::Act, K::Document}),
      make({K::Document, K::Act, K::Act, K::Document}),
      make({K::Document, K::Document, K::Document, K::Document}),
  };
}

std::vector<MetapathSchema> load_metapaths_json(
    const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_array())
    throw ParseError(path.string() + ": top level must be an array");
  std::vector<MetapathSchema> schemas;
  for (const json& entry : doc) {
    MetapathSchema s;
    s.name = entry.value("name", std::string());
    if (!entry.contains("kinds") || !entry["kinds"].is_array())
      throw ParseError(path.string() + ": schema '" + s.name +
                       "' missing kinds array");
    for (const json& k : entry["kinds"]) {
      auto kind = parse_node_kind(k.get<std::string>());
      if (!kind)
        throw ParseError(path.string() + ": unknown node kind '" +
                         k.get<std::string>() + "' in schema '" + s.name + "'");
      s.kinds.push_back(*kind);
    }
    if (s.name.empty()) {
      for (NodeKind k : s.kinds) {
        if (!s.name.empty()) s.name += '-';
        s.name += to_lower(to_string(k));
      }
    }
    schemas.push_back(std::move(s));
  }
  return schemas;
}

void save_walks(const WalkCorpus& corpus, const std::filesystem::path& path,
                const std::map<std::string, std::string>& extra) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  for (const Walk& w : corpus.walks) {
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      if (i) f << ' ';
      f << w.nodes[i];
    }
    f << '\n';
  }
  f.close();

  json meta;
  meta["generator"] = corpus.provenance.generator;
  meta["config"] = config_to_json(corpus.provenance.config);
  meta["schemas"] = corpus.provenance.schema_names;
  meta["walk_count"] = corpus.walks.size();
  for (const auto& [k, v] : extra) meta[k] = v;
  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  std::ofstream mf(meta_path, std::ios::binary);
  if (!mf)
    throw Error("cannot open '" + meta_path.string() + "' for writing");
  mf << meta.dump(2) << '\n';
}

WalkCorpus load_walks(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  WalkCorpus corpus;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Walk w;
    for (auto& tok : split(line, ' '))
      if (!tok.empty()) w.nodes.push_back(std::move(tok));
    corpus.walks.push_back(std::move(w));
  }

  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  std::ifstream mf(meta_path, std::ios::binary);
  if (mf) {
    try {
      json meta = json::parse(mf);
      corpus.provenance.generator = meta.value("generator", std::string());
      if (meta.contains("config"))
        corpus.provenance.config = config_from_json(meta["config"]);
      if (meta.contains("schemas"))
        for (const json& s : meta["schemas"])
          corpus.provenance.schema_names.push_back(s.get<std::string>());
    } catch (const json::exception& e) {
      throw ParseError(meta_path.string() + ": " + e.what());
    }
  }
  return corpus;
}

}  // namespace hiernet
