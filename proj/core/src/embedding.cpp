#include "hiernet/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hiernet/util.hpp"

namespace hiernet {

namespace {

using nlohmann::json;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(sigmoid(x)) without overflow for large negative x
double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

std::string corpus_fingerprint(const WalkCorpus& corpus) {
  uint64_t h = fnv1a64("");
  for (const Walk& w : corpus.walks) {
    std::string line;
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      if (i) line += ' ';
      line += w.nodes[i];
    }
    line += '\n';
    h = hash_combine(h, fnv1a64(line));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::size_t sample_cdf(const std::vector<double>& cdf, double r) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
  std::size_t i = static_cast<std::size_t>(it - cdf.begin());
  return std::min(i, cdf.size() - 1);
}

std::size_t draw_negative(const Vocab& vocab, std::mt19937_64& rng,
                          std::size_t context) {
  for (int tries = 0; tries < 64; ++tries) {
    std::size_t cand = sample_cdf(vocab.sampling_cdf, uniform01(rng));
    if (cand != context) return cand;
  }
  return (context + 1) % vocab.size();
}

struct IndexedWalk {
  std::vector<std::size_t> nodes;
};

void check_index(const EmbeddingTable& t, std::size_t i, const char* role) {
  if (i >= t.vocab.size())
    throw IndexOutOfRangeError(std::string(role) + " index " +
                               std::to_string(i) + " outside vocab of size " +
                               std::to_string(t.vocab.size()));
}

}  // namespace

std::optional<std::size_t> Vocab::lookup(std::string_view id) const {
  auto it = index.find(std::string(id));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Vocab build_vocab(const WalkCorpus& corpus, uint64_t min_count) {
  if (corpus.walks.empty()) throw EmptyCorpusError();
  std::unordered_map<std::string, uint64_t> freq;
  for (const Walk& w : corpus.walks)
    for (const std::string& id : w.nodes) ++freq[id];

  std::vector<std::pair<std::string, uint64_t>> entries;
  for (auto& [id, count] : freq)
    if (count >= min_count) entries.emplace_back(id, count);
  if (entries.empty())
    throw EmptyCorpusError("no ids meet the minimum count " +
                           std::to_string(min_count));
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocab v;
  double total = 0.0;
  for (auto& [id, count] : entries) {
    v.index.emplace(id, v.ids.size());
    v.ids.push_back(id);
    v.counts.push_back(count);
    total += std::pow(static_cast<double>(count), 0.75);
  }
  double acc = 0.0;
  for (uint64_t count : v.counts) {
    acc += std::pow(static_cast<double>(count), 0.75) / total;
    v.sampling_cdf.push_back(acc);
  }
  if (!v.sampling_cdf.empty()) v.sampling_cdf.back() = 1.0;
  return v;
}

double sgns_step(EmbeddingTable& table, std::size_t center,
                 std::size_t context, std::span<const std::size_t> negatives,
                 double lr, SgnsAudit* audit) {
  check_index(table, center, "center");
  check_index(table, context, "context");
  for (std::size_t n : negatives) check_index(table, n, "negative");

  const std::size_t d = static_cast<std::size_t>(table.dimension);
  double* v_c = table.input.data() + center * d;
  double* u_ctx = table.output.data() + context * d;

  double f_ctx = 0.0;
  for (std::size_t k = 0; k < d; ++k) f_ctx += u_ctx[k] * v_c[k];
  double s_ctx = sigmoid(f_ctx);
  double objective = log_sigmoid(f_ctx);

  // all gradients are taken at the pre-update parameters
  std::vector<double> grad_center(d, 0.0);
  std::vector<double> grad_context(d);
  for (std::size_t k = 0; k < d; ++k) {
    grad_context[k] = (1.0 - s_ctx) * v_c[k];
    grad_center[k] += (1.0 - s_ctx) * u_ctx[k];
  }

  std::vector<std::vector<double>> grad_negs;
  grad_negs.reserve(negatives.size());
  for (std::size_t n : negatives) {
    double* u_n = table.output.data() + n * d;
    double f = 0.0;
    for (std::size_t k = 0; k < d; ++k) f += u_n[k] * v_c[k];
    double s = sigmoid(f);
    objective += log_sigmoid(-f);
    std::vector<double> g(d);
    for (std::size_t k = 0; k < d; ++k) {
      g[k] = -s * v_c[k];
      grad_center[k] += -s * u_n[k];
    }
    grad_negs.push_back(std::move(g));
  }

  for (std::size_t k = 0; k < d; ++k) u_ctx[k] += lr * grad_context[k];
  for (std::size_t i = 0; i < negatives.size(); ++i) {
    double* u_n = table.output.data() + negatives[i] * d;
    for (std::size_t k = 0; k < d; ++k) u_n[k] += lr * grad_negs[i][k];
  }
  for (std::size_t k = 0; k < d; ++k) v_c[k] += lr * grad_center[k];

  if (audit) {
    audit->grad_center = std::move(grad_center);
    audit->grad_context = std::move(grad_context);
    audit->grad_negatives = std::move(grad_negs);
  }
  return objective;
}

EmbeddingTable train(const WalkCorpus& corpus, const TrainConfig& config,
                     const EpochCallback& on_epoch) {
  if (config.dimension < 1 || config.window < 1 ||
      config.negatives_per_positive < 1 || config.epochs < 1)
    throw Error("bad training configuration");

  EmbeddingTable table;
  table.vocab = build_vocab(corpus, config.min_count);
  table.dimension = config.dimension;
  table.config = config;
  table.corpus_hash = corpus_fingerprint(corpus);

  const std::size_t V = table.vocab.size();
  const std::size_t d = static_cast<std::size_t>(config.dimension);
  table.input.resize(V * d);
  table.output.assign(V * d, 0.0);
  {
    std::mt19937_64 rng(config.rng_seed);
    for (double& x : table.input) x = (uniform01(rng) - 0.5) / config.dimension;
  }

  std::vector<IndexedWalk> walks;
  walks.reserve(corpus.walks.size());
  std::size_t positions_per_epoch = 0;
  for (const Walk& w : corpus.walks) {
    IndexedWalk iw;
    for (const std::string& id : w.nodes)
      if (auto idx = table.vocab.lookup(id)) iw.nodes.push_back(*idx);
    positions_per_epoch += iw.nodes.size();
    walks.push_back(std::move(iw));
  }
  const double total_positions =
      static_cast<double>(positions_per_epoch) * config.epochs;
  if (total_positions == 0.0) return table;

  std::atomic<uint64_t> done{0};
  const int workers = std::max(1, config.threads);

  auto run_range = [&](std::size_t lo, std::size_t hi, std::mt19937_64& rng,
                       double& obj_sum, std::size_t& obj_pairs) {
    std::vector<std::size_t> negs;
    for (std::size_t wi = lo; wi < hi; ++wi) {
      const auto& seq = walks[wi].nodes;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        uint64_t t = done.fetch_add(1, std::memory_order_relaxed);
        double lr = config.learning_rate *
                    (1.0 - static_cast<double>(t) / total_positions);
        lr = std::max(lr, config.learning_rate_floor);
        std::size_t jlo = i >= static_cast<std::size_t>(config.window)
                              ? i - config.window
                              : 0;
        std::size_t jhi = std::min(seq.size() - 1,
                                   i + static_cast<std::size_t>(config.window));
        for (std::size_t j = jlo; j <= jhi; ++j) {
          if (j == i) continue;
          negs.clear();
          if (V > 1) {
            for (int n = 0; n < config.negatives_per_positive; ++n)
              negs.push_back(draw_negative(table.vocab, rng, seq[j]));
          }
          obj_sum += sgns_step(table, seq[i], seq[j], negs, lr);
          ++obj_pairs;
        }
      }
    }
  };

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double obj_sum = 0.0;
    std::size_t obj_pairs = 0;
    if (workers == 1) {
      std::mt19937_64 rng(hash_combine(config.rng_seed, epoch + 1));
      run_range(0, walks.size(), rng, obj_sum, obj_pairs);
    } else {
      std::vector<std::thread> pool;
      std::vector<double> sums(workers, 0.0);
      std::vector<std::size_t> pairs(workers, 0);
      std::size_t chunk = (walks.size() + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(walks.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
          std::mt19937_64 rng(
              hash_combine(hash_combine(config.rng_seed, epoch + 1), w + 1));
          run_range(lo, hi, rng, sums[w], pairs[w]);
        });
      }
      for (auto& t : pool) t.join();
      for (int w = 0; w < workers; ++w) {
        obj_sum += sums[w];
        obj_pairs += pairs[w];
      }
    }
    if (on_epoch)
      on_epoch(epoch, obj_pairs ? obj_sum / obj_pairs : 0.0);
  }
  return table;
}

double cosine(const EmbeddingTable& table, std::string_view u,
              std::string_view v) {
  auto iu = table.vocab.lookup(u);
  if (!iu) throw UnknownIdError(std::string(u));
  auto iv = table.vocab.lookup(v);
  if (!iv) throw UnknownIdError(std::string(v));
  auto a = table.vec(*iu);
  auto b = table.vec(*iv);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

void save_embeddings(const EmbeddingTable& table,
                     const std::filesystem::path& path,
                     const std::map<std::string, std::string>& extra) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << table.vocab.size() << ' ' << table.dimension << '\n';
  for (std::size_t i = 0; i < table.vocab.size(); ++i) {
    f << table.vocab.ids[i];
    auto row = table.vec(i);
    for (double x : row) f << ' ' << format_double(x);
    f << '\n';
  }
  f.close();

  json meta;
  meta["dimension"] = table.dimension;
  meta["vocab_size"] = table.vocab.size();
  meta["corpus_hash"] = table.corpus_hash;
  meta["config"] = {{"dimension", table.config.dimension},
                    {"window", table.config.window},
                    {"negatives_per_positive", table.config.negatives_per_positive},
                    {"learning_rate", table.config.learning_rate},
                    {"learning_rate_floor", table.config.learning_rate_floor},
                    {"epochs", table.config.epochs},
                    {"rng_seed", table.config.rng_seed},
                    {"min_count", table.config.min_count},
                    {"threads", table.config.threads}};
  for (const auto& [k, v] : extra) meta[k] = v;
  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  std::ofstream mf(meta_path, std::ios::binary);
  if (!mf) throw Error("cannot open '" + meta_path.string() + "' for writing");
  mf << meta.dump(2) << '\n';
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(f, line))
    throw ParseError(1, path.string() + ": missing header line");
  std::size_t count = 0;
  int dim = 0;
  {
    auto fields = split(trim(line), ' ');
    if (fields.size() != 2)
      throw ParseError(1, path.string() + ": header must be '<count> <dim>'");
    try {
      count = std::stoull(fields[0]);
      dim = std::stoi(fields[1]);
    } catch (const std::exception&) {
      throw ParseError(1, path.string() + ": header must be '<count> <dim>'");
    }
  }
  EmbeddingTable table;
  table.dimension = dim;
  table.input.reserve(count * static_cast<std::size_t>(dim));
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, ' ');
    if (fields.size() != 1 + static_cast<std::size_t>(dim))
      throw ParseError(line_no, path.string() + ": expected id plus " +
                                    std::to_string(dim) + " components");
    table.vocab.index.emplace(fields[0], table.vocab.ids.size());
    table.vocab.ids.push_back(fields[0]);
    table.vocab.counts.push_back(1);
    for (int k = 0; k < dim; ++k) {
      try {
        table.input.push_back(std::stod(fields[1 + k]));
      } catch (const std::exception&) {
        throw ParseError(line_no,
                         path.string() + ": bad number '" + fields[1 + k] + "'");
      }
    }
  }
  if (table.vocab.ids.size() != count)
    throw ParseError(line_no, path.string() + ": header promised " +
                                  std::to_string(count) + " rows, found " +
                                  std::to_string(table.vocab.ids.size()));
  table.output.assign(table.input.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < table.vocab.size(); ++i) {
    acc += 1.0 / table.vocab.size();
    table.vocab.sampling_cdf.push_back(acc);
  }
  return table;
}

}  // namespace hiernet
