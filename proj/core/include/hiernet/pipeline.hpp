#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hiernet/embedding.hpp"
#include "hiernet/evaluation.hpp"
#include "hiernet/walks.hpp"

namespace hiernet {

enum class Generator : uint8_t { Node2vec, Metapath };
enum class Network : uint8_t { Pcnet, Hier };

std::string_view to_string(Generator g);
std::string_view to_string(Network n);
std::optional<Generator> parse_generator(std::string_view name);
std::optional<Network> parse_network(std::string_view name);

struct PipelineConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path statutes_path;   // statutes.json or outline directory
  std::filesystem::path metapaths_path;  // empty: built-in schema set
  std::filesystem::path gold_path;
  std::filesystem::path text_scores_path;
  std::filesystem::path pairs_path;  // empty: score the gold pairs
  std::filesystem::path out_dir = "out";

  uint64_t seed = 1;
  int threads = 1;

  WalkConfig walk;
  TrainConfig train_node2vec;  // dimension 128
  TrainConfig train_metapath;  // dimension 200

  std::vector<std::string> methods = {"bibliographic_coupling", "co_citation",
                                      "dispersion", "node2vec",
                                      "metapath2vec"};
  std::string combine_method = "metapath2vec";
  std::string combine_network = "hier";
};

PipelineConfig default_pipeline_config();

// JSON config; relative paths are resolved against the file's directory.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

// Hash of the experiment parameters (seed, walk and train settings, method
// and combine selection, metapath schema bytes). Deliberately excludes
// filesystem paths and thread counts, so re-running the same experiment in
// another directory yields identical artifacts. Stamped onto every output's
// ".meta.json" sidecar; stages refuse inputs carrying a different hash.
std::string config_hash(const PipelineConfig& config);

// Stage entry points; each returns a process exit code: 0 ok, 2 config
// error, 3 input parse error, 4 missing upstream artifact. Failures are
// reported on stderr.
int cmd_build(const PipelineConfig& config);
int cmd_walk(const PipelineConfig& config, std::optional<Generator> generator,
             std::optional<Network> network);
int cmd_train(const PipelineConfig& config, std::optional<Generator> generator,
              std::optional<Network> network);
int cmd_score(const PipelineConfig& config);
int cmd_evaluate(const PipelineConfig& config);
int cmd_combine(const PipelineConfig& config, CombineMode mode);
int cmd_extract(const PipelineConfig& config);

}  // namespace hiernet
