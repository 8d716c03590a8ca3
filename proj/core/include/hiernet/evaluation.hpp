#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hiernet/errors.hpp"

namespace hiernet {

struct GoldPair {
  std::string doc_a;
  std::string doc_b;
  std::vector<double> annotator_scores;
  double mean_score = 0.0;
};

// gold.csv: header doc_a,doc_b,score_1[,score_2...]; scores in [0,1].
std::vector<GoldPair> load_gold(const std::filesystem::path& path);

// Unordered document pair, stored (smaller, larger).
using PairKey = std::pair<std::string, std::string>;
PairKey make_pair_key(std::string_view a, std::string_view b);

// doc_a,doc_b,score with a header line; keys normalized.
std::map<PairKey, double> load_pair_scores(const std::filesystem::path& path);

double pearson(std::span<const double> xs, std::span<const double> ys);

struct TTestResult {
  double t_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Paired two-sided Student's t-test on elementwise differences a - b.
TTestResult paired_ttest(std::span<const double> errors_a,
                         std::span<const double> errors_b);

// Regularized incomplete beta function I_x(a, b), the CDF machinery behind
// the t-test p-value; exposed for direct verification.
double incomplete_beta(double a, double b, double x);

enum class CombineMode : uint8_t { Max, Average };
std::string_view to_string(CombineMode m);
std::optional<CombineMode> parse_combine_mode(std::string_view name);

double combine(double text_score, double network_score, CombineMode mode);

struct SignificanceResult {
  std::string test = "paired_t_absolute_error";
  double t_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

struct EvalReport {
  std::string method;
  std::vector<std::pair<PairKey, double>> per_pair;  // gold file order
  std::optional<double> pearson_rho;
  std::string rho_error;  // set when rho is undefined, e.g. zero variance
  std::size_t n_pairs = 0;
  std::optional<SignificanceResult> significance;
};

// Correlates predictions against gold means. Every gold pair must be
// predicted. With a baseline, runs the paired t-test on per-pair absolute
// errors (this method vs baseline). An undefined rho is reported, not
// thrown; missing predictions are errors.
EvalReport evaluate(const std::string& method,
                    const std::map<PairKey, double>& predictions,
                    const std::vector<GoldPair>& gold,
                    const std::map<PairKey, double>* baseline = nullptr);

}  // namespace hiernet
