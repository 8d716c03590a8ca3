#include "hiernet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>

#include <nlohmann/json.hpp>

#include "hiernet/builder.hpp"
#include "hiernet/graph_io.hpp"
#include "hiernet/measures.hpp"
#include "hiernet/util.hpp"

namespace hiernet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kClassicalMethods[] = {
    "bibliographic_coupling", "co_citation", "dispersion"};
constexpr std::string_view kEmbeddingMethods[] = {"node2vec", "metapath2vec"};

bool known_method(const std::string& m) {
  for (auto k : kClassicalMethods)
    if (m == k) return true;
  for (auto k : kEmbeddingMethods)
    if (m == k) return true;
  return false;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string hex64(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

fs::path need_input(const fs::path& p, const char* what) {
  if (p.empty())
    throw ConfigError(std::string("config does not set a ") + what + " path");
  if (!fs::exists(p))
    throw ConfigError(std::string(what) + " path '" + p.string() +
                      "' does not exist");
  return p;
}

void require_artifact(const fs::path& p) {
  if (!fs::exists(p)) throw MissingArtifactError(p.string());
}

fs::path meta_path_for(const fs::path& artifact) {
  fs::path m = artifact;
  m += ".meta.json";
  return m;
}

void write_meta(const fs::path& artifact, std::string_view stage,
                const std::string& hash,
                const std::map<std::string, std::string>& extra = {}) {
  json meta;
  meta["config_hash"] = hash;
  meta["stage"] = std::string(stage);
  for (const auto& [k, v] : extra) meta[k] = v;
  std::ofstream f(meta_path_for(artifact), std::ios::binary);
  if (!f)
    throw Error("cannot write '" + meta_path_for(artifact).string() + "'");
  f << meta.dump(2) << '\n';
}

// Artifacts written under a different configuration must not be mixed into
// this run.
void check_provenance(const fs::path& artifact, const std::string& hash) {
  require_artifact(artifact);
  fs::path mp = meta_path_for(artifact);
  if (!fs::exists(mp))
    throw ConfigError("artifact '" + artifact.string() +
                      "' has no provenance sidecar");
  std::ifstream f(mp, std::ios::binary);
  json meta;
  try {
    meta = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(mp.string() + ": " + e.what());
  }
  std::string found = meta.value("config_hash", std::string());
  if (found != hash)
    throw ConfigError("artifact '" + artifact.string() +
                      "' was produced under config " + found +
                      ", current config is " + hash);
}

int run_stage(const char* stage, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return 2;
  } catch (const MissingArtifactError& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return 3;
  }
}

// ---- corpus ingestion ----

struct CorpusDoc {
  std::string id;
  std::string title;
  std::string text;  // whole file, title line included
};

std::vector<CorpusDoc> read_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir))
    throw ConfigError("corpus path '" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<CorpusDoc> docs;
  for (const fs::path& p : files) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw Error("cannot open '" + p.string() + "'");
    CorpusDoc doc;
    doc.id = p.stem().string();
    doc.text.assign(std::istreambuf_iterator<char>(f),
                    std::istreambuf_iterator<char>());
    std::size_t eol = doc.text.find('\n');
    doc.title = std::string(
        trim(eol == std::string::npos ? doc.text : doc.text.substr(0, eol)));
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<StatuteTree> load_statute_trees(const fs::path& path,
                                            std::vector<CitationRecord>* cites) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<StatuteTree> trees;
    for (const fs::path& p : files) {
      std::ifstream f(p, std::ios::binary);
      if (!f) throw Error("cannot open '" + p.string() + "'");
      std::string text{std::istreambuf_iterator<char>(f),
                       std::istreambuf_iterator<char>()};
      try {
        trees.push_back(parse_statute_outline(text));
      } catch (const MalformedOutlineError& e) {
        throw ParseError(e.line(), p.string() + ": " + e.what());
      }
    }
    return trees;
  }
  StatutesFile sf = load_statutes_json(path);
  if (cites)
    cites->insert(cites->end(), sf.statute_citations.begin(),
                  sf.statute_citations.end());
  return sf.trees;
}

struct ExtractionResult {
  std::vector<json> citation_lines;      // citations.jsonl rows
  std::vector<CitationRecord> records;   // graph ingestion order
};

ExtractionResult run_extraction(const std::vector<CorpusDoc>& docs,
                                const std::set<std::string>& act_index,
                                const std::map<std::string, std::string>&
                                    case_index) {
  ExtractionResult out;
  for (const CorpusDoc& doc : docs) {
    auto statutes = extract_statute_citations(doc.text, act_index);
    auto precedents = extract_precedent_citations(doc.text, case_index);

    struct Tagged {
      std::size_t begin;
      int kind;  // 0 statute, 1 precedent
      std::size_t idx;
    };
    std::vector<Tagged> order;
    for (std::size_t i = 0; i < statutes.size(); ++i)
      order.push_back({statutes[i].span.begin, 0, i});
    for (std::size_t i = 0; i < precedents.size(); ++i)
      order.push_back({precedents[i].span.begin, 1, i});
    std::sort(order.begin(), order.end(), [](const Tagged& a, const Tagged& b) {
      if (a.begin != b.begin) return a.begin < b.begin;
      return a.kind < b.kind;
    });

    for (const Tagged& t : order) {
      if (t.kind == 0) {
        const StatuteCitation& c = statutes[t.idx];
        json j;
        j["doc_id"] = doc.id;
        j["type"] = "statute";
        j["unit_kind"] = std::string(to_string(c.unit_kind));
        if (c.unit_number) j["unit_number"] = *c.unit_number;
        j["act_name_raw"] = c.act_name_raw;
        j["act_name_canonical"] = c.act_name_canonical;
        j["char_span"] = {c.span.begin, c.span.end};
        out.citation_lines.push_back(std::move(j));

        CitationRecord rec;
        rec.src_id = doc.id;
        rec.statute =
            StatuteRef{c.act_name_canonical, c.unit_kind, c.unit_number};
        rec.note = std::string(
            std::string_view(doc.text).substr(c.span.begin,
                                              c.span.end - c.span.begin));
        out.records.push_back(std::move(rec));
      } else {
        const PrecedentCitation& c = precedents[t.idx];
        if (c.resolved_doc_id && *c.resolved_doc_id == doc.id)
          continue;  // document naming itself is not a citation
        json j;
        j["doc_id"] = doc.id;
        j["type"] = "precedent";
        j["matched_text"] = c.matched_text;
        if (c.resolved_doc_id) j["resolved_doc_id"] = *c.resolved_doc_id;
        j["char_span"] = {c.span.begin, c.span.end};
        out.citation_lines.push_back(std::move(j));

        CitationRecord rec;
        rec.src_id = doc.id;
        rec.dst_id = c.resolved_doc_id;
        rec.note = c.matched_text;
        out.records.push_back(std::move(rec));
      }
    }
  }
  return out;
}

void write_jsonl(const fs::path& path, const std::vector<json>& lines) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  for (const json& j : lines) f << j.dump() << '\n';
}

// ---- stage plumbing ----

fs::path artifact(const PipelineConfig& c, std::string_view name) {
  fs::path p = c.out_dir;
  p /= std::string(name);
  return p;
}

std::string walk_file_name(Generator g, Network n) {
  return "walks_" + std::string(to_string(g)) + "_" +
         std::string(to_string(n)) + ".txt";
}

std::string embedding_file_name(Generator g, Network n) {
  return "embeddings_" + std::string(to_string(g)) + "_" +
         std::string(to_string(n)) + ".txt";
}

std::string scores_file_name(Network n) {
  return "scores_" + std::string(to_string(n)) + ".csv";
}

HeteroGraph load_built_graph(const PipelineConfig& c, const std::string& hash) {
  fs::path nodes = artifact(c, "nodes.tsv");
  fs::path edges = artifact(c, "edges.tsv");
  check_provenance(nodes, hash);
  check_provenance(edges, hash);
  return load_graph_tsv(nodes, edges);
}

std::vector<Generator> generators_for(const PipelineConfig& c,
                                      std::optional<Generator> requested) {
  if (requested) return {*requested};
  std::vector<Generator> gens;
  for (const std::string& m : c.methods) {
    if (m == "node2vec") gens.push_back(Generator::Node2vec);
    if (m == "metapath2vec") gens.push_back(Generator::Metapath);
  }
  return gens;
}

std::vector<Network> networks_for(std::optional<Network> requested) {
  if (requested) return {*requested};
  return {Network::Pcnet, Network::Hier};
}

std::vector<MetapathSchema> schemas_for(const PipelineConfig& c, Network net) {
  if (net == Network::Pcnet) {
    // document-only graph: the single all-document schema
    MetapathSchema s;
    s.name = "doc-doc-doc";
    s.kinds = {NodeKind::Document, NodeKind::Document, NodeKind::Document};
    return {s};
  }
  if (c.metapaths_path.empty()) return default_metapaths();
  need_input(c.metapaths_path, "metapaths");
  return load_metapaths_json(c.metapaths_path);
}

std::vector<PairKey> load_pairs_csv(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(f, line))
    throw ParseError(1, path.string() + ": empty file");
  std::size_t line_no = 1;
  std::vector<PairKey> pairs;
  std::set<PairKey> seen;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 2)
      throw ParseError(line_no, path.string() + ": expected doc_a,doc_b");
    PairKey key = make_pair_key(trim(fields[0]), trim(fields[1]));
    if (seen.insert(key).second) pairs.push_back(std::move(key));
  }
  return pairs;
}

std::vector<PairKey> pairs_to_score(const PipelineConfig& c) {
  if (!c.pairs_path.empty()) {
    need_input(c.pairs_path, "pairs");
    return load_pairs_csv(c.pairs_path);
  }
  need_input(c.gold_path, "gold");
  std::vector<PairKey> pairs;
  std::set<PairKey> seen;
  for (const GoldPair& g : load_gold(c.gold_path)) {
    PairKey key = make_pair_key(g.doc_a, g.doc_b);
    if (seen.insert(key).second) pairs.push_back(std::move(key));
  }
  return pairs;
}

using MethodScores = std::map<std::string, std::map<PairKey, double>>;

MethodScores load_scores_csv(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(f, line))
    throw ParseError(1, path.string() + ": empty file");
  std::size_t line_no = 1;
  MethodScores scores;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 4)
      throw ParseError(line_no,
                       path.string() + ": expected doc_a,doc_b,method,score");
    try {
      scores[std::string(trim(fields[2]))][make_pair_key(
          trim(fields[0]), trim(fields[1]))] = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw ParseError(line_no, path.string() + ": bad score '" + fields[3] +
                                    "'");
    }
  }
  return scores;
}

json report_entry(const EvalReport& r, std::string_view network,
                  const std::vector<GoldPair>& gold) {
  json entry;
  entry["method"] = r.method;
  entry["network"] = std::string(network);
  entry["n_pairs"] = r.n_pairs;
  if (r.pearson_rho) entry["rho"] = *r.pearson_rho;
  else entry["rho_error"] = r.rho_error;
  json rows = json::array();
  for (std::size_t i = 0; i < r.per_pair.size(); ++i) {
    rows.push_back({{"doc_a", r.per_pair[i].first.first},
                    {"doc_b", r.per_pair[i].first.second},
                    {"predicted", r.per_pair[i].second},
                    {"gold_mean", gold[i].mean_score}});
  }
  entry["per_pair"] = rows;
  return entry;
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string_view to_string(Generator g) {
  return g == Generator::Node2vec ? "node2vec" : "metapath";
}

std::string_view to_string(Network n) {
  return n == Network::Pcnet ? "pcnet" : "hier";
}

std::optional<Generator> parse_generator(std::string_view name) {
  std::string s = to_lower(name);
  if (s == "node2vec") return Generator::Node2vec;
  if (s == "metapath" || s == "metapath2vec") return Generator::Metapath;
  return std::nullopt;
}

std::optional<Network> parse_network(std::string_view name) {
  std::string s = to_lower(name);
  if (s == "pcnet") return Network::Pcnet;
  if (s == "hier" || s == "full") return Network::Hier;
  return std::nullopt;
}

PipelineConfig default_pipeline_config() {
  PipelineConfig c;
  c.train_node2vec.dimension = 128;
  c.train_metapath.dimension = 200;
  c.walk.rng_seed = c.seed;
  c.train_node2vec.rng_seed = c.seed;
  c.train_metapath.rng_seed = c.seed;
  return c;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }

  PipelineConfig c = default_pipeline_config();
  fs::path base = path.parent_path();
  auto get_path = [&](const char* key) -> fs::path {
    if (!j.contains(key)) return {};
    fs::path p = j[key].get<std::string>();
    if (p.empty()) return {};
    return p.is_absolute() ? p : base / p;
  };
  c.corpus_dir = get_path("corpus_dir");
  c.statutes_path = get_path("statutes");
  c.metapaths_path = get_path("metapaths");
  c.gold_path = get_path("gold");
  c.text_scores_path = get_path("text_scores");
  c.pairs_path = get_path("pairs");
  if (j.contains("out_dir")) c.out_dir = get_path("out_dir");

  c.seed = j.value("seed", c.seed);
  c.threads = j.value("threads", c.threads);

  if (j.contains("walk")) {
    const json& w = j["walk"];
    c.walk.walk_length = w.value("walk_length", c.walk.walk_length);
    c.walk.walks_per_node = w.value("walks_per_node", c.walk.walks_per_node);
    c.walk.return_param_p = w.value("return_param_p", c.walk.return_param_p);
    c.walk.inout_param_q = w.value("inout_param_q", c.walk.inout_param_q);
  }
  if (j.contains("train")) {
    const json& t = j["train"];
    auto fill = [&](TrainConfig& tc) {
      tc.window = t.value("window", tc.window);
      tc.negatives_per_positive =
          t.value("negatives_per_positive", tc.negatives_per_positive);
      tc.learning_rate = t.value("learning_rate", tc.learning_rate);
      tc.learning_rate_floor =
          t.value("learning_rate_floor", tc.learning_rate_floor);
      tc.epochs = t.value("epochs", tc.epochs);
      tc.min_count = t.value("min_count", tc.min_count);
      tc.threads = t.value("threads", tc.threads);
    };
    fill(c.train_node2vec);
    fill(c.train_metapath);
    c.train_node2vec.dimension =
        t.value("dimension_node2vec", c.train_node2vec.dimension);
    c.train_metapath.dimension =
        t.value("dimension_metapath", c.train_metapath.dimension);
  }
  if (j.contains("methods")) {
    c.methods.clear();
    for (const json& m : j["methods"]) c.methods.push_back(m.get<std::string>());
  }
  c.combine_method = j.value("combine_method", c.combine_method);
  c.combine_network = j.value("combine_network", c.combine_network);

  c.walk.rng_seed = c.seed;
  c.train_node2vec.rng_seed = c.seed;
  c.train_metapath.rng_seed = c.seed;
  return c;
}

std::string config_hash(const PipelineConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["walk"] = {{"walk_length", c.walk.walk_length},
               {"walks_per_node", c.walk.walks_per_node},
               {"return_param_p", c.walk.return_param_p},
               {"inout_param_q", c.walk.inout_param_q}};
  auto train_json = [](const TrainConfig& t) {
    return json{{"dimension", t.dimension},
                {"window", t.window},
                {"negatives_per_positive", t.negatives_per_positive},
                {"learning_rate", t.learning_rate},
                {"learning_rate_floor", t.learning_rate_floor},
                {"epochs", t.epochs},
                {"min_count", t.min_count}};
  };
  j["train_node2vec"] = train_json(c.train_node2vec);
  j["train_metapath"] = train_json(c.train_metapath);
  j["methods"] = c.methods;
  j["combine"] = {{"method", c.combine_method},
                  {"network", c.combine_network}};
  if (c.metapaths_path.empty()) {
    j["metapaths"] = "builtin";
  } else {
    std::ifstream f(need_input(c.metapaths_path, "metapaths"),
                    std::ios::binary);
    std::string bytes{std::istreambuf_iterator<char>(f),
                      std::istreambuf_iterator<char>()};
    j["metapaths"] = hex64(fnv1a64(bytes));
  }
  return hex64(fnv1a64(j.dump()));
}

int cmd_build(const PipelineConfig& config) {
  return run_stage("build", [&] {
    need_input(config.corpus_dir, "corpus");
    need_input(config.statutes_path, "statutes");
    fs::create_directories(config.out_dir);
    const std::string hash = config_hash(config);

    std::vector<CitationRecord> statute_cites;
    auto trees = load_statute_trees(config.statutes_path, &statute_cites);
    auto docs = read_corpus(config.corpus_dir);

    std::set<std::string> act_index;
    for (const auto& t : trees) act_index.insert(normalize_act_name(t.title));
    std::map<std::string, std::string> case_index;
    for (const auto& d : docs) {
      if (!d.title.empty()) case_index.emplace(canonical_case_title(d.title), d.id);
    }

    auto extraction = run_extraction(docs, act_index, case_index);

    std::vector<DocumentRecord> doc_records;
    for (const auto& d : docs) doc_records.push_back({d.id, d.title});
    std::vector<CitationRecord> records = extraction.records;
    records.insert(records.end(), statute_cites.begin(), statute_cites.end());

    BuildResult built = build_graph(trees, doc_records, records);

    save_nodes_tsv(built.graph, artifact(config, "nodes.tsv"));
    write_meta(artifact(config, "nodes.tsv"), "build", hash);
    save_edges_tsv(built.graph, artifact(config, "edges.tsv"));
    write_meta(artifact(config, "edges.tsv"), "build", hash);

    GraphStats s = stats(built.graph);
    save_stats_json(s, artifact(config, "stats.json"));
    write_meta(artifact(config, "stats.json"), "build", hash);

    write_jsonl(artifact(config, "citations.jsonl"), extraction.citation_lines);
    write_meta(artifact(config, "citations.jsonl"), "build", hash);

    std::vector<json> diag_lines;
    for (const BuildDiagnostic& d : built.diagnostics) {
      json j;
      j["src_id"] = d.record.src_id;
      if (d.record.dst_id) j["dst_id"] = *d.record.dst_id;
      if (d.record.statute) {
        json ref;
        ref["act_name"] = d.record.statute->act_name;
        ref["unit_kind"] = std::string(to_string(d.record.statute->unit_kind));
        if (d.record.statute->unit_number)
          ref["unit_number"] = *d.record.statute->unit_number;
        j["statute"] = ref;
      }
      if (!d.record.note.empty()) j["note"] = d.record.note;
      j["reason"] = d.reason;
      diag_lines.push_back(std::move(j));
    }
    write_jsonl(artifact(config, "diagnostics.jsonl"), diag_lines);
    write_meta(artifact(config, "diagnostics.jsonl"), "build", hash);
  });
}

int cmd_walk(const PipelineConfig& config, std::optional<Generator> generator,
             std::optional<Network> network) {
  return run_stage("walk", [&] {
    const std::string hash = config_hash(config);
    HeteroGraph full = load_built_graph(config, hash);

    for (Generator gen : generators_for(config, generator)) {
      for (Network net : networks_for(network)) {
        const HeteroGraph* g = &full;
        HeteroGraph view;
        if (net == Network::Pcnet) {
          view = pcnet_view(full);
          g = &view;
        }
        WalkCorpus corpus;
        if (gen == Generator::Node2vec) {
          corpus = node2vec_walks(*g, config.walk, config.threads);
        } else {
          corpus = metapath_walks(*g, schemas_for(config, net), config.walk,
                                  config.threads);
        }
        fs::path out = artifact(config, walk_file_name(gen, net));
        save_walks(corpus, out,
                   {{"config_hash", hash},
                    {"stage", "walk"},
                    {"network", std::string(to_string(net))}});
      }
    }
  });
}

int cmd_train(const PipelineConfig& config, std::optional<Generator> generator,
              std::optional<Network> network) {
  return run_stage("train", [&] {
    const std::string hash = config_hash(config);
    for (Generator gen : generators_for(config, generator)) {
      for (Network net : networks_for(network)) {
        fs::path walks = artifact(config, walk_file_name(gen, net));
        check_provenance(walks, hash);
        WalkCorpus corpus = load_walks(walks);
        const TrainConfig& tc = gen == Generator::Node2vec
                                    ? config.train_node2vec
                                    : config.train_metapath;
        EmbeddingTable table = train(corpus, tc);
        fs::path out = artifact(config, embedding_file_name(gen, net));
        save_embeddings(table, out,
                        {{"config_hash", hash},
                         {"stage", "train"},
                         {"network", std::string(to_string(net))}});
      }
    }
  });
}

int cmd_score(const PipelineConfig& config) {
  return run_stage("score", [&] {
    for (const std::string& m : config.methods) {
      if (!known_method(m)) throw ConfigError("unknown method '" + m + "'");
    }
    const std::string hash = config_hash(config);
    HeteroGraph full = load_built_graph(config, hash);
    std::vector<PairKey> pairs = pairs_to_score(config);

    for (Network net : {Network::Pcnet, Network::Hier}) {
      const HeteroGraph* g = &full;
      HeteroGraph view;
      if (net == Network::Pcnet) {
        view = pcnet_view(full);
        g = &view;
      }

      std::vector<std::string> lines;
      for (const std::string& method : config.methods) {
        if (method == "node2vec" || method == "metapath2vec") {
          Generator gen = method == "node2vec" ? Generator::Node2vec
                                               : Generator::Metapath;
          fs::path emb = artifact(config, embedding_file_name(gen, net));
          check_provenance(emb, hash);
          EmbeddingTable table = load_embeddings(emb);
          for (const PairKey& pk : pairs) {
            double v = cosine(table, pk.first, pk.second);
            lines.push_back(pk.first + "," + pk.second + "," + method + "," +
                            fixed6(v));
          }
        } else {
          for (const PairKey& pk : pairs) {
            SimilarityScore s;
            if (method == "bibliographic_coupling")
              s = bibliographic_coupling(*g, pk.first, pk.second);
            else if (method == "co_citation")
              s = co_citation(*g, pk.first, pk.second);
            else
              s = dispersion(*g, pk.first, pk.second, true);
            lines.push_back(pk.first + "," + pk.second + "," + method + "," +
                            fixed6(s.value));
          }
        }
      }

      fs::path out = artifact(config, scores_file_name(net));
      std::ofstream f(out, std::ios::binary);
      if (!f) throw Error("cannot write '" + out.string() + "'");
      f << "doc_a,doc_b,method,score\n";
      for (const std::string& line : lines) f << line << '\n';
      f.close();
      write_meta(out, "score", hash,
                 {{"network", std::string(to_string(net))}});
    }
  });
}

int cmd_evaluate(const PipelineConfig& config) {
  return run_stage("evaluate", [&] {
    need_input(config.gold_path, "gold");
    const std::string hash = config_hash(config);
    std::vector<GoldPair> gold = load_gold(config.gold_path);

    fs::path pcnet_file = artifact(config, scores_file_name(Network::Pcnet));
    fs::path hier_file = artifact(config, scores_file_name(Network::Hier));
    check_provenance(pcnet_file, hash);
    check_provenance(hier_file, hash);
    MethodScores pcnet_scores = load_scores_csv(pcnet_file);
    MethodScores hier_scores = load_scores_csv(hier_file);

    json results = json::array();
    json significance = json::array();
    for (const std::string& method : config.methods) {
      auto pc = pcnet_scores.find(method);
      if (pc == pcnet_scores.end())
        throw ParseError(pcnet_file.string() + " has no rows for method '" +
                         method + "'");
      auto hi = hier_scores.find(method);
      if (hi == hier_scores.end())
        throw ParseError(hier_file.string() + " has no rows for method '" +
                         method + "'");

      EvalReport pcnet_report = evaluate(method, pc->second, gold);
      results.push_back(report_entry(pcnet_report, "pcnet", gold));

      EvalReport hier_report = evaluate(method, hi->second, gold, &pc->second);
      results.push_back(report_entry(hier_report, "hier", gold));

      if (hier_report.significance) {
        const SignificanceResult& sig = *hier_report.significance;
        significance.push_back(
            {{"method", method},
             {"network", "hier"},
             {"baseline_network", "pcnet"},
             {"test", sig.test},
             {"t_statistic", finite_or_string(sig.t_statistic)},
             {"p_value", sig.p_value},
             {"n", sig.n}});
      }
    }

    if (!config.text_scores_path.empty()) {
      need_input(config.text_scores_path, "text_scores");
      auto text = load_pair_scores(config.text_scores_path);
      EvalReport text_report = evaluate("text", text, gold);
      results.push_back(report_entry(text_report, "text", gold));
    }

    json report;
    report["config_hash"] = hash;
    report["n_pairs"] = gold.size();
    report["results"] = results;
    report["significance"] = significance;

    fs::path out = artifact(config, "report.json");
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot write '" + out.string() + "'");
    f << report.dump(2) << '\n';
    f.close();
    write_meta(out, "evaluate", hash);
  });
}

int cmd_combine(const PipelineConfig& config, CombineMode mode) {
  return run_stage("combine", [&] {
    need_input(config.gold_path, "gold");
    need_input(config.text_scores_path, "text_scores");
    auto net = parse_network(config.combine_network);
    if (!net)
      throw ConfigError("combine_network must be pcnet or hier, got '" +
                        config.combine_network + "'");
    if (!known_method(config.combine_method))
      throw ConfigError("unknown combine_method '" + config.combine_method +
                        "'");

    const std::string hash = config_hash(config);
    std::vector<GoldPair> gold = load_gold(config.gold_path);
    auto text = load_pair_scores(config.text_scores_path);

    fs::path scores_file = artifact(config, scores_file_name(*net));
    check_provenance(scores_file, hash);
    MethodScores net_scores = load_scores_csv(scores_file);
    auto ns = net_scores.find(config.combine_method);
    if (ns == net_scores.end())
      throw ParseError(scores_file.string() + " has no rows for method '" +
                       config.combine_method + "'");

    std::map<PairKey, double> combined;
    std::vector<std::string> lines;
    for (const GoldPair& g : gold) {
      PairKey key = make_pair_key(g.doc_a, g.doc_b);
      auto t = text.find(key);
      if (t == text.end()) throw MissingPredictionError(g.doc_a, g.doc_b);
      auto n = ns->second.find(key);
      if (n == ns->second.end()) throw MissingPredictionError(g.doc_a, g.doc_b);
      double v = combine(t->second, n->second, mode);
      combined[key] = v;
      lines.push_back(key.first + "," + key.second + "," + fixed6(v));
    }

    std::string mode_name(to_string(mode));
    fs::path out =
        artifact(config, "combined_scores_" + mode_name + ".csv");
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot write '" + out.string() + "'");
    f << "doc_a,doc_b,score\n";
    for (const std::string& line : lines) f << line << '\n';
    f.close();
    write_meta(out, "combine", hash, {{"mode", mode_name}});

    EvalReport report = evaluate("combined_" + mode_name, combined, gold);
    json rj;
    rj["config_hash"] = hash;
    rj["mode"] = mode_name;
    rj["method"] = config.combine_method;
    rj["network"] = config.combine_network;
    rj["result"] = report_entry(report, config.combine_network, gold);

    fs::path rout = artifact(config, "report_combined_" + mode_name + ".json");
    std::ofstream rf(rout, std::ios::binary);
    if (!rf) throw Error("cannot write '" + rout.string() + "'");
    rf << rj.dump(2) << '\n';
    rf.close();
    write_meta(rout, "combine", hash, {{"mode", mode_name}});
  });
}

int cmd_extract(const PipelineConfig& config) {
  return run_stage("extract", [&] {
    need_input(config.corpus_dir, "corpus");
    fs::create_directories(config.out_dir);
    const std::string hash = config_hash(config);

    std::vector<StatuteTree> trees;
    if (!config.statutes_path.empty()) {
      need_input(config.statutes_path, "statutes");
      trees = load_statute_trees(config.statutes_path, nullptr);
    }
    auto docs = read_corpus(config.corpus_dir);

    std::set<std::string> act_index;
    for (const auto& t : trees) act_index.insert(normalize_act_name(t.title));
    std::map<std::string, std::string> case_index;
    for (const auto& d : docs) {
      if (!d.title.empty()) case_index.emplace(canonical_case_title(d.title), d.id);
    }

    auto extraction = run_extraction(docs, act_index, case_index);
    write_jsonl(artifact(config, "citations.jsonl"), extraction.citation_lines);
    write_meta(artifact(config, "citations.jsonl"), "extract", hash);
  });
}

}  // namespace hiernet
