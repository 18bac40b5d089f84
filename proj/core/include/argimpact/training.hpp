#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "argimpact/autodiff.hpp"
#include "argimpact/bilstm.hpp"
#include "argimpact/corpus.hpp"
#include "argimpact/fasttext.hpp"
#include "argimpact/features.hpp"
#include "argimpact/models.hpp"

namespace argimpact::training {

// ---------------------------------------------------------------------------
// Optimizers.
// ---------------------------------------------------------------------------

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> v;
  long long t = 0;

  static AdamState init(const autodiff::NamedParams& params);
};

/// One bias-corrected Adam update from the gradients currently stored on the
/// parameters. Throws NumericError on non-finite gradients.
void adam_step(autodiff::NamedParams& params, AdamState& state,
               const AdamConfig& config);

/// Plain SGD step; the caller owns any learning-rate schedule.
void sgd_step(autodiff::NamedParams& params, double lr);

// ---------------------------------------------------------------------------
// Experiment configuration and results.
// ---------------------------------------------------------------------------

struct TrainConfig {
  models::Family family = models::Family::Bilstm;
  models::ContextStrategy strategy = models::ContextStrategy::claim_only();
  models::NetDims dims;
  models::FastTextConfig fasttext;

  double learning_rate = 0.0;  // 0 -> family default (Adam 1e-3 / FastText 0.8)
  int epochs = 0;              // 0 -> family default (40 neural / 15 FastText)
  int batch_size = 32;
  int patience = 5;

  std::uint64_t base_seed = 1;
  int num_seeds = 1;
  int jobs = 1;  // seeds trained in parallel when > 1

  std::string embeddings_file;  // optional GloVe-format init (bilstm)

  // Grid searched on validation macro-F1 for the kernel family.
  std::vector<double> svm_c_grid{0.1, 1.0, 10.0};
  std::vector<double> svm_gamma_grid{0.01, 0.1, 1.0};
  std::vector<features::Lexicon> lexicons;
};

struct SeedResult {
  std::uint64_t seed = 0;
  double precision = 0.0;  // percent, macro
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  int best_epoch = 0;  // 1-based; 0 for single-shot families
  std::shared_ptr<models::Classifier> model;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample std, n-1 denominator
  std::vector<double> values;
};

MetricSummary summarize(const std::vector<double>& values);

struct RunResult {
  std::vector<SeedResult> seeds;
  MetricSummary precision, recall, f1, accuracy;
};

// ---------------------------------------------------------------------------
// Training entry points.
// ---------------------------------------------------------------------------

/// Early-stopping epoch driver: runs run_epoch(1..max_epochs), tracks the best
/// validation metric, fires on_best at each improvement, stops after
/// `patience` consecutive epochs without improvement.
struct LoopResult {
  int best_epoch = 0;
  int epochs_run = 0;
  double best_metric = 0.0;
};

LoopResult run_epoch_loop(int max_epochs, int patience,
                          const std::function<double(int)>& run_epoch,
                          const std::function<void(int)>& on_best);

SeedResult train_single(const TrainConfig& config, const corpus::Splits& splits,
                        std::uint64_t seed);

/// Trains one run per seed (base_seed .. base_seed + num_seeds - 1) and
/// aggregates mean and sample standard deviation per metric. Per-seed values
/// are retained for significance testing.
RunResult multi_run(const TrainConfig& config, const corpus::Splits& splits);

}  // namespace argimpact::training
