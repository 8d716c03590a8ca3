#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hiernet/pipeline.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"legal citation network toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  uint64_t seed = 0;
  int threads = 0;
  std::string out_dir;
  app.add_option("--config", config_path,
                 "pipeline config JSON (default: ./config.json if present)");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  auto* threads_opt =
      app.add_option("--threads", threads, "worker threads for walk stages");
  auto* out_opt =
      app.add_option("--out-dir", out_dir, "override the output directory");

  auto* build = app.add_subcommand("build", "construct the citation network");
  auto* walk = app.add_subcommand("walk", "generate random walk corpora");
  auto* train = app.add_subcommand("train", "train embeddings from walks");
  auto* score = app.add_subcommand("score", "score document pairs");
  auto* evaluate =
      app.add_subcommand("evaluate", "compare scores against the gold standard");
  auto* combine =
      app.add_subcommand("combine", "blend text scores with network scores");
  auto* extract =
      app.add_subcommand("extract", "run citation extraction on its own");

  std::string generator_name, network_name;
  for (CLI::App* sub : {walk, train}) {
    sub->add_option("--generator", generator_name,
                    "node2vec or metapath (default: both that are configured)");
    sub->add_option("--network", network_name,
                    "pcnet or hier (default: both)");
  }
  std::string mode_name = "max";
  combine->add_option("--mode", mode_name, "max or average");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  hiernet::PipelineConfig config;
  try {
    if (!config_path.empty()) {
      if (!fs::exists(config_path)) {
        std::cerr << "config '" << config_path << "' does not exist\n";
        return 2;
      }
      config = hiernet::load_pipeline_config(config_path);
    } else if (fs::exists("config.json")) {
      config = hiernet::load_pipeline_config("config.json");
    } else {
      config = hiernet::default_pipeline_config();
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  if (seed_opt->count()) {
    config.seed = seed;
    config.walk.rng_seed = seed;
    config.train_node2vec.rng_seed = seed;
    config.train_metapath.rng_seed = seed;
  }
  if (threads_opt->count()) config.threads = threads;
  if (out_opt->count()) config.out_dir = out_dir;

  std::optional<hiernet::Generator> generator;
  std::optional<hiernet::Network> network;
  if (!generator_name.empty()) {
    generator = hiernet::parse_generator(generator_name);
    if (!generator) {
      std::cerr << "unknown generator '" << generator_name << "'\n";
      return 2;
    }
  }
  if (!network_name.empty()) {
    network = hiernet::parse_network(network_name);
    if (!network) {
      std::cerr << "unknown network '" << network_name << "'\n";
      return 2;
    }
  }

  if (build->parsed()) return hiernet::cmd_build(config);
  if (walk->parsed()) return hiernet::cmd_walk(config, generator, network);
  if (train->parsed()) return hiernet::cmd_train(config, generator, network);
  if (score->parsed()) return hiernet::cmd_score(config);
  if (evaluate->parsed()) return hiernet::cmd_evaluate(config);
  if (combine->parsed()) {
    auto mode = hiernet::parse_combine_mode(mode_name);
    if (!mode) {
      std::cerr << "unknown combine mode '" << mode_name << "'\n";
      return 2;
    }
    return hiernet::cmd_combine(config, *mode);
  }
  if (extract->parsed()) return hiernet::cmd_extract(config);
  return 2;
}
