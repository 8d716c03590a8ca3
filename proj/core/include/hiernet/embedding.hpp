#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hiernet/walks.hpp"

namespace hiernet {

struct Vocab {
  std::vector<std::string> ids;      // index -> id, by falling count, ties by id
  std::vector<uint64_t> counts;
  std::vector<double> sampling_cdf;  // cumulative counts^0.75, normalized
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return ids.size(); }
  std::optional<std::size_t> lookup(std::string_view id) const;
};

Vocab build_vocab(const WalkCorpus& corpus, uint64_t min_count = 1);

struct TrainConfig {
  int dimension = 128;
  int window = 5;
  int negatives_per_positive = 5;
  double learning_rate = 0.025;
  double learning_rate_floor = 0.0001;  // linear decay never goes below this
  int epochs = 5;
  uint64_t rng_seed = 0;
  uint64_t min_count = 1;
  // 1 keeps training bit-reproducible; more threads update the shared
  // tables without coordination and give up determinism.
  int threads = 1;
};

struct EmbeddingTable {
  Vocab vocab;
  int dimension = 0;
  std::vector<double> input;   // |V| x d, row-major
  std::vector<double> output;  // context vectors, same shape
  TrainConfig config;
  std::string corpus_hash;

  std::span<const double> vec(std::size_t idx) const {
    return {input.data() + idx * static_cast<std::size_t>(dimension),
            static_cast<std::size_t>(dimension)};
  }
};

// Gradients of the pair objective log s(u_ctx . v_c) + sum log s(-u_neg . v_c)
// at the pre-update parameters, without the learning rate factor.
struct SgnsAudit {
  std::vector<double> grad_center;
  std::vector<double> grad_context;
  std::vector<std::vector<double>> grad_negatives;
};

// One gradient ascent step for (center, context, negatives); returns the
// pair objective evaluated before the update.
double sgns_step(EmbeddingTable& table, std::size_t center,
                 std::size_t context, std::span<const std::size_t> negatives,
                 double lr, SgnsAudit* audit = nullptr);

using EpochCallback = std::function<void(int epoch, double mean_objective)>;

// Skip-gram with negative sampling over every in-window ordered pair of
// each walk. Input vectors start uniform in [-0.5/d, 0.5/d), output vectors
// at zero; the learning rate decays linearly over all scheduled positions.
EmbeddingTable train(const WalkCorpus& corpus, const TrainConfig& config,
                     const EpochCallback& on_epoch = {});

// Cosine over input vectors; 0 when either vector has zero norm.
double cosine(const EmbeddingTable& table, std::string_view u,
              std::string_view v);

// "<count> <dimension>" header line, then "id v1 ... vd" per node in vocab
// order, 17 significant digits. Metadata and any extra fields go to
// "<path>.meta.json".
void save_embeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path,
                     const std::map<std::string, std::string>& extra = {});
EmbeddingTable load_embeddings(const std::filesystem::path& path);

}  // namespace hiernet
