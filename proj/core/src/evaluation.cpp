#include "hiernet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "hiernet/util.hpp"

namespace hiernet {

namespace {

// continued fraction for the incomplete beta function (Lentz's method)
double beta_cont_frac(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

std::vector<std::string> csv_fields(const std::string& line) {
  auto raw = split(line, ',');
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (auto& f : raw) out.emplace_back(trim(f));
  return out;
}

double parse_score(const std::string& s, std::size_t line_no,
                   const std::string& file) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, file + ": bad score '" + s + "'");
  }
}

}  // namespace

PairKey make_pair_key(std::string_view a, std::string_view b) {
  std::string sa(a), sb(b);
  if (sb < sa) std::swap(sa, sb);
  return {std::move(sa), std::move(sb)};
}

std::vector<GoldPair> load_gold(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(f, line))
    throw ParseError(1, path.string() + ": empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = csv_fields(line);
  if (header.size() < 3 || header[0] != "doc_a" || header[1] != "doc_b")
    throw ParseError(1, path.string() +
                            ": header must be doc_a,doc_b,score_1[,...]");

  std::vector<GoldPair> gold;
  std::set<PairKey> seen;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = csv_fields(line);
    if (fields.size() != header.size())
      throw ParseError(line_no, path.string() + ": expected " +
                                    std::to_string(header.size()) + " fields");
    GoldPair p;
    p.doc_a = fields[0];
    p.doc_b = fields[1];
    if (p.doc_a.empty() || p.doc_b.empty())
      throw ParseError(line_no, path.string() + ": empty document id");
    if (!seen.insert(make_pair_key(p.doc_a, p.doc_b)).second)
      throw ParseError(line_no, path.string() + ": duplicate pair " + p.doc_a +
                                    "," + p.doc_b);
    double sum = 0.0;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      double v = parse_score(fields[i], line_no, path.string());
      if (v < 0.0 || v > 1.0)
        throw ScoreOutOfRangeError(line_no, path.string() + ": score " +
                                                fields[i] +
                                                " outside [0,1]");
      p.annotator_scores.push_back(v);
      sum += v;
    }
    p.mean_score = sum / static_cast<double>(p.annotator_scores.size());
    gold.push_back(std::move(p));
  }
  return gold;
}

std::map<PairKey, double> load_pair_scores(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(f, line))
    throw ParseError(1, path.string() + ": empty file");
  ++line_no;
  std::map<PairKey, double> out;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = csv_fields(line);
    if (fields.size() != 3)
      throw ParseError(line_no, path.string() + ": expected doc_a,doc_b,score");
    out[make_pair_key(fields[0], fields[1])] =
        parse_score(fields[2], line_no, path.string());
  }
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw LengthMismatchError("pearson: " + std::to_string(xs.size()) +
                              " vs " + std::to_string(ys.size()) + " values");
  std::size_t n = xs.size();
  if (n < 2)
    throw LengthMismatchError("pearson needs at least 2 values");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw ZeroVarianceError(sxx == 0.0 ? "first argument has zero variance"
                                       : "second argument has zero variance");
  return sxy / std::sqrt(sxx * syy);
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cont_frac(a, b, x) / a;
  return 1.0 - bt * beta_cont_frac(b, a, 1.0 - x) / b;
}

TTestResult paired_ttest(std::span<const double> errors_a,
                         std::span<const double> errors_b) {
  if (errors_a.size() != errors_b.size())
    throw LengthMismatchError("paired t-test: " +
                              std::to_string(errors_a.size()) + " vs " +
                              std::to_string(errors_b.size()) + " values");
  std::size_t n = errors_a.size();
  if (n < 2) throw LengthMismatchError("paired t-test needs at least 2 pairs");

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += errors_a[i] - errors_b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = errors_a[i] - errors_b[i] - mean;
    ss += d * d;
  }
  double var = ss / static_cast<double>(n - 1);

  TTestResult res;
  res.n = n;
  if (var == 0.0) {
    if (mean == 0.0) {
      res.t_statistic = 0.0;
      res.p_value = 1.0;
    } else {
      res.t_statistic = mean > 0.0 ? HUGE_VAL : -HUGE_VAL;
      res.p_value = 0.0;
    }
    return res;
  }
  double t = mean / std::sqrt(var / static_cast<double>(n));
  double nu = static_cast<double>(n - 1);
  res.t_statistic = t;
  res.p_value = incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
  return res;
}

std::string_view to_string(CombineMode m) {
  return m == CombineMode::Max ? "max" : "average";
}

std::optional<CombineMode> parse_combine_mode(std::string_view name) {
  std::string s = to_lower(name);
  if (s == "max") return CombineMode::Max;
  if (s == "average" || s == "avg" || s == "mean") return CombineMode::Average;
  return std::nullopt;
}

double combine(double text_score, double network_score, CombineMode mode) {
  if (mode == CombineMode::Max) return std::max(text_score, network_score);
  return (text_score + network_score) / 2.0;
}

EvalReport evaluate(const std::string& method,
                    const std::map<PairKey, double>& predictions,
                    const std::vector<GoldPair>& gold,
                    const std::map<PairKey, double>* baseline) {
  EvalReport report;
  report.method = method;
  report.n_pairs = gold.size();

  std::vector<double> predicted, expert;
  predicted.reserve(gold.size());
  expert.reserve(gold.size());
  for (const GoldPair& g : gold) {
    PairKey key = make_pair_key(g.doc_a, g.doc_b);
    auto it = predictions.find(key);
    if (it == predictions.end())
      throw MissingPredictionError(g.doc_a, g.doc_b);
    report.per_pair.emplace_back(key, it->second);
    predicted.push_back(it->second);
    expert.push_back(g.mean_score);
  }

  try {
    report.pearson_rho = pearson(predicted, expert);
  } catch (const Error& e) {
    report.rho_error = e.what();
  }

  if (baseline) {
    std::vector<double> err_a, err_b;
    err_a.reserve(gold.size());
    err_b.reserve(gold.size());
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const GoldPair& g = gold[i];
      PairKey key = make_pair_key(g.doc_a, g.doc_b);
      auto it = baseline->find(key);
      if (it == baseline->end())
        throw MissingPredictionError(g.doc_a, g.doc_b);
      err_a.push_back(std::fabs(predicted[i] - g.mean_score));
      err_b.push_back(std::fabs(it->second - g.mean_score));
    }
    TTestResult t = paired_ttest(err_a, err_b);
    SignificanceResult sig;
    sig.t_statistic = t.t_statistic;
    sig.p_value = t.p_value;
    sig.n = t.n;
    report.significance = sig;
  }
  return report;
}

}  // namespace hiernet
