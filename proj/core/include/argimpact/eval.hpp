#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "argimpact/corpus.hpp"

namespace argimpact::eval {

/// 3x3 counts, rows = gold, columns = predicted.
struct ConfusionMatrix {
  std::array<std::array<long long, 3>, 3> counts{};

  void add(corpus::ImpactClass3 gold, corpus::ImpactClass3 pred) {
    ++counts[static_cast<int>(gold)][static_cast<int>(pred)];
  }
  long long total() const {
    long long t = 0;
    for (const auto& row : counts) {
      for (long long c : row) t += c;
    }
    return t;
  }
};

struct ClassMetrics {
  double precision = 0.0;  // percent
  double recall = 0.0;
  double f1 = 0.0;
};

struct PrfReport {
  std::array<ClassMetrics, 3> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;
};

/// Per-class P = tp/(tp+fp), R = tp/(tp+fn), F1 = 2PR/(P+R), each 0 when
/// undefined; macro = unweighted mean over the 3 classes, in percent.
PrfReport macro_prf(std::span<const corpus::ImpactClass3> golds,
                    std::span<const corpus::ImpactClass3> preds);

/// Macro-F1 per context-length bucket C_l in {1,2,3,4}. Buckets with no
/// claims are absent from the result, not zero.
struct ContextBucket {
  std::size_t context_length = 0;
  long long n = 0;
  double macro_f1 = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
};

std::vector<ContextBucket> per_context_length(
    std::span<const corpus::ImpactClass3> golds,
    std::span<const corpus::ImpactClass3> preds,
    std::span<const std::size_t> context_lengths);

/// Welch's unequal-variance two-sided t-test.
struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

/// Requires >= 2 values per sample. Both samples constant: p = 1 when the
/// means agree (convention), p = 0 when they differ.
WelchResult t_test_two_sided(std::span<const double> a, std::span<const double> b);

/// Two-sided p for a t statistic: the regularized incomplete beta
/// I_x(df/2, 1/2) at x = df/(df + t^2), evaluated by continued fraction.
double student_t_two_sided_p(double t, double df);

struct EvalReport {
  std::string model_name;
  long long n = 0;
  PrfReport overall;
  std::vector<ContextBucket> buckets;
};

EvalReport evaluate(const std::string& model_name,
                    std::span<const corpus::ImpactClass3> golds,
                    std::span<const corpus::ImpactClass3> preds,
                    std::span<const std::size_t> context_lengths);

/// Deterministic plain-text table or key/value records, numbers printed to
/// two decimals.
std::string render_report(const EvalReport& report, corpus::ReportFormat format);

}  // namespace argimpact::eval
