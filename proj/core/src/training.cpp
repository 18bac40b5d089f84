#include "argimpact/training.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "argimpact/error.hpp"
#include "argimpact/eval.hpp"
#include "argimpact/svm.hpp"
#include "argimpact/text.hpp"

namespace argimpact::training {

AdamState AdamState::init(const autodiff::NamedParams& params) {
  AdamState state;
  state.m.reserve(params.items.size());
  state.v.reserve(params.items.size());
  for (const auto& [_, t] : params.items) {
    state.m.emplace_back(t.size(), 0.0);
    state.v.emplace_back(t.size(), 0.0);
  }
  return state;
}

void adam_step(autodiff::NamedParams& params, AdamState& state,
               const AdamConfig& config) {
  ++state.t;
  const double bc1 = 1.0 - std::pow(config.beta1, double(state.t));
  const double bc2 = 1.0 - std::pow(config.beta2, double(state.t));
  for (std::size_t p = 0; p < params.items.size(); ++p) {
    autodiff::Tensor& tensor = params.items[p].second;
    if (!tensor.has_grad()) continue;  // untouched this step
    auto values = tensor.values_mut();
    const auto grad = tensor.grad();
    auto& m = state.m[p];
    auto& v = state.v[p];
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double g = grad[i];
      if (!std::isfinite(g)) {
        throw NumericError("adam_step: non-finite gradient in " + params.items[p].first);
      }
      m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g;
      v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g * g;
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      values[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
  }
}

void sgd_step(autodiff::NamedParams& params, double lr) {
  for (auto& [name, tensor] : params.items) {
    if (!tensor.has_grad()) continue;
    auto values = tensor.values_mut();
    const auto grad = tensor.grad();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(grad[i])) {
        throw NumericError("sgd_step: non-finite gradient in " + name);
      }
      values[i] -= lr * grad[i];
    }
  }
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  s.values = values;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
  if (values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(acc / double(values.size() - 1));
  }
  return s;
}

LoopResult run_epoch_loop(int max_epochs, int patience,
                          const std::function<double(int)>& run_epoch,
                          const std::function<void(int)>& on_best) {
  LoopResult result;
  result.best_metric = -std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int epoch = 1; epoch <= max_epochs; ++epoch) {
    result.epochs_run = epoch;
    const double metric = run_epoch(epoch);
    if (metric > result.best_metric) {
      result.best_metric = metric;
      result.best_epoch = epoch;
      since_best = 0;
      if (on_best) on_best(epoch);
    } else if (++since_best >= patience) {
      break;
    }
  }
  return result;
}

namespace {

std::vector<corpus::ImpactClass3> predict_all(
    const models::Classifier& model, const std::vector<corpus::LabeledClaim>& claims) {
  std::vector<corpus::ImpactClass3> out;
  out.reserve(claims.size());
  for (const auto& claim : claims) out.push_back(model.predict(claim));
  return out;
}

std::vector<corpus::ImpactClass3> gold_labels(
    const std::vector<corpus::LabeledClaim>& claims) {
  std::vector<corpus::ImpactClass3> out;
  out.reserve(claims.size());
  for (const auto& claim : claims) out.push_back(claim.label3);
  return out;
}

void fill_metrics(SeedResult& result, const models::Classifier& model,
                  const std::vector<corpus::LabeledClaim>& test) {
  const auto report = eval::macro_prf(gold_labels(test), predict_all(model, test));
  result.precision = report.macro_precision;
  result.recall = report.macro_recall;
  result.f1 = report.macro_f1;
  result.accuracy = report.accuracy;
}

double validation_f1(const models::Classifier& model,
                     const std::vector<corpus::LabeledClaim>& validation) {
  return eval::macro_prf(gold_labels(validation), predict_all(model, validation))
      .macro_f1;
}

/// Shared minibatch loop for the autodiff-backed families. `make_logits`
/// builds the class-logit graph for one claim; `step` applies the optimizer
/// after backward (receives the global step for schedules).
template <class MakeLogits, class Step>
SeedResult train_neural(const TrainConfig& config, const corpus::Splits& splits,
                        std::uint64_t seed, models::Classifier& model,
                        autodiff::NamedParams& params, int max_epochs,
                        MakeLogits make_logits, Step step) {
  if (splits.train.empty() || splits.validation.empty() || splits.test.empty()) {
    throw DataError("train: empty split");
  }
  Rng shuffle_rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<std::size_t> order(splits.train.size());
  std::iota(order.begin(), order.end(), 0);

  const int batch_size = std::max(1, config.batch_size);
  long long global_step = 0;

  auto run_epoch = [&](int epoch) {
    shuffle_rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t stop = std::min(order.size(), start + batch_size);
      std::vector<autodiff::Tensor> rows;
      std::vector<int> labels;
      rows.reserve(stop - start);
      for (std::size_t k = start; k < stop; ++k) {
        const auto& claim = splits.train[order[k]];
        rows.push_back(make_logits(claim));
        labels.push_back(static_cast<int>(claim.label3));
      }
      const autodiff::Tensor loss =
          autodiff::cross_entropy_loss(autodiff::stack_rows(rows), labels);
      if (!std::isfinite(loss.item())) {
        throw NumericError("training diverged at epoch " + std::to_string(epoch) +
                           " (non-finite loss)");
      }
      params.zero_grads();
      autodiff::backward(loss);
      step(++global_step);
    }
    return validation_f1(model, splits.validation);
  };

  std::vector<std::vector<double>> best_params = params.snapshot_values();
  const LoopResult loop =
      run_epoch_loop(max_epochs, config.patience, run_epoch,
                     [&](int) { best_params = params.snapshot_values(); });
  params.restore_values(best_params);

  SeedResult result;
  result.seed = seed;
  result.best_epoch = loop.best_epoch;
  fill_metrics(result, model, splits.test);
  return result;
}

SeedResult train_majority(const corpus::Splits& splits, std::uint64_t seed) {
  auto model = std::make_shared<models::MajorityClassifier>(
      models::MajorityClassifier::train(splits.train));
  SeedResult result;
  result.seed = seed;
  fill_metrics(result, *model, splits.test);
  result.model = std::move(model);
  return result;
}

SeedResult train_svm(const TrainConfig& config, const corpus::Splits& splits,
                     std::uint64_t seed) {
  if (splits.train.empty() || splits.validation.empty() || splits.test.empty()) {
    throw DataError("train: empty split");
  }
  // tf-idf and the scaler are fitted on the train split only.
  std::vector<std::string> train_texts;
  train_texts.reserve(splits.train.size());
  for (const auto& claim : splits.train) train_texts.push_back(claim.claim.text);
  const features::TfIdfModel tfidf = features::tfidf_fit(train_texts);

  auto featurize_all = [&](const std::vector<corpus::LabeledClaim>& claims) {
    std::vector<features::FeatureVector> rows;
    rows.reserve(claims.size());
    for (const auto& claim : claims) {
      rows.push_back(features::assemble_svm_features(claim, tfidf, config.lexicons));
    }
    return rows;
  };
  const auto train_rows = featurize_all(splits.train);
  const features::StandardScaler scaler = features::StandardScaler::fit(train_rows);

  auto standardize = [&](const std::vector<features::FeatureVector>& rows) {
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(scaler.transform(row.values));
    return out;
  };
  const auto x_train = standardize(train_rows);
  const auto x_val = standardize(featurize_all(splits.validation));

  std::vector<int> y_train;
  for (const auto& claim : splits.train) y_train.push_back(int(claim.label3));

  // Grid search on validation macro-F1; ties keep the first grid point.
  double best_f1 = -1.0;
  models::SvmModel best_model;
  double best_c = 0.0, best_gamma = 0.0;
  for (double c : config.svm_c_grid) {
    for (double gamma : config.svm_gamma_grid) {
      models::SvmModel candidate = models::svm_train(x_train, y_train, c, gamma);
      std::vector<corpus::ImpactClass3> preds;
      preds.reserve(x_val.size());
      for (const auto& x : x_val) {
        preds.push_back(static_cast<corpus::ImpactClass3>(candidate.predict(x)));
      }
      const double f1 = eval::macro_prf(gold_labels(splits.validation), preds).macro_f1;
      if (f1 > best_f1) {
        best_f1 = f1;
        best_model = std::move(candidate);
        best_c = c;
        best_gamma = gamma;
      }
    }
  }
  (void)best_c;
  (void)best_gamma;

  auto model = std::make_shared<models::SvmClassifier>(tfidf, scaler, config.lexicons,
                                                       std::move(best_model));
  SeedResult result;
  result.seed = seed;
  fill_metrics(result, *model, splits.test);
  result.model = std::move(model);
  return result;
}

SeedResult train_fasttext(const TrainConfig& config, const corpus::Splits& splits,
                          std::uint64_t seed) {
  Rng rng(seed);
  auto model = std::make_shared<models::FastTextClassifier>(config.fasttext, rng);

  std::array<double, 3> priors{};
  for (const auto& claim : splits.train) priors[int(claim.label3)] += 1.0;
  for (double& p : priors) p /= double(splits.train.size());
  model->set_priors(priors);

  const double lr0 = config.learning_rate > 0.0 ? config.learning_rate : 0.8;
  const int epochs = config.epochs > 0 ? config.epochs : 15;
  const long long steps_per_epoch =
      (static_cast<long long>(splits.train.size()) + config.batch_size - 1) /
      std::max(1, config.batch_size);
  const long long total_steps = std::max<long long>(1, steps_per_epoch * epochs);

  auto make_logits = [&](const corpus::LabeledClaim& claim) {
    auto tokens = text::tokenize(claim.claim.text);
    if (tokens.empty()) tokens.push_back("<empty>");
    return model->logits(tokens);
  };
  auto step = [&](long long global_step) {
    // Linear decay to zero over the scheduled run.
    const double lr = lr0 * std::max(0.0, 1.0 - double(global_step) / double(total_steps));
    sgd_step(model->params(), lr);
  };
  SeedResult result = train_neural(config, splits, seed, *model, model->params(),
                                   epochs, make_logits, step);
  result.model = std::move(model);
  return result;
}

SeedResult train_bilstm(const TrainConfig& config, const corpus::Splits& splits,
                        std::uint64_t seed) {
  Rng rng(seed);
  auto model = std::make_shared<models::BilstmClassifier>(
      models::Vocabulary::build(splits.train), config.strategy, config.dims, rng);
  if (!config.embeddings_file.empty()) {
    model->load_embeddings(config.embeddings_file);
  }

  AdamConfig adam;
  adam.lr = config.learning_rate > 0.0 ? config.learning_rate : 1e-3;
  AdamState state = AdamState::init(model->params());
  const int epochs = config.epochs > 0 ? config.epochs : 40;

  auto make_logits = [&](const corpus::LabeledClaim& claim) { return model->logits(claim); };
  auto step = [&](long long) { adam_step(model->params(), state, adam); };
  SeedResult result = train_neural(config, splits, seed, *model, model->params(),
                                   epochs, make_logits, step);
  result.model = std::move(model);
  return result;
}

}  // namespace

SeedResult train_single(const TrainConfig& config, const corpus::Splits& splits,
                        std::uint64_t seed) {
  switch (config.family) {
    case models::Family::Majority: return train_majority(splits, seed);
    case models::Family::Svm: return train_svm(config, splits, seed);
    case models::Family::FastText: return train_fasttext(config, splits, seed);
    case models::Family::Bilstm: return train_bilstm(config, splits, seed);
  }
  throw std::logic_error("train_single: unknown family");
}

RunResult multi_run(const TrainConfig& config, const corpus::Splits& splits) {
  if (config.num_seeds < 1) throw DataError("multi_run: need at least one seed");

  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < config.num_seeds; ++k) seeds.push_back(config.base_seed + k);

  RunResult result;
  result.seeds.resize(seeds.size());
  if (config.jobs > 1) {
    std::vector<std::future<SeedResult>> futures;
    futures.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
      futures.push_back(std::async(std::launch::async, [&, seed] {
        return train_single(config, splits, seed);
      }));
    }
    for (std::size_t k = 0; k < futures.size(); ++k) result.seeds[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      result.seeds[k] = train_single(config, splits, seeds[k]);
    }
  }

  auto collect = [&](auto member) {
    std::vector<double> values;
    values.reserve(result.seeds.size());
    for (const auto& s : result.seeds) values.push_back(s.*member);
    return summarize(values);
  };
  result.precision = collect(&SeedResult::precision);
  result.recall = collect(&SeedResult::recall);
  result.f1 = collect(&SeedResult::f1);
  result.accuracy = collect(&SeedResult::accuracy);
  return result;
}

}  // namespace argimpact::training
