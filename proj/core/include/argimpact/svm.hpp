#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "argimpact/features.hpp"
#include "argimpact/models.hpp"

namespace argimpact::models {

/// exp(-gamma * |x - y|^2), in (0, 1]. gamma must be > 0.
double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma);

struct SmoOptions {
  double c = 1.0;
  double gamma = 0.1;
  double tol = 1e-3;           // KKT stopping tolerance
  std::size_t max_iter = 200000;
};

/// Convergence record for one binary SMO run. `dual_objective` is the
/// maximization-form objective after every pair update (nondecreasing).
struct SmoTrace {
  std::vector<double> dual_objective;
  double final_kkt_violation = 0.0;
  std::size_t iterations = 0;
};

/// One binary soft-margin RBF machine in dual form.
struct BinarySvm {
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> alpha;    // dual coefficients of the support vectors
  std::vector<int> labels;      // +1/-1 per support vector
  double bias = 0.0;
  double gamma = 0.1;
  double c = 1.0;

  double decision(std::span<const double> x) const;
};

/// SMO with maximal-violating-pair working-set selection and a full Gram
/// cache. y entries must be +1 or -1 with both classes present.
BinarySvm smo_train(const std::vector<std::vector<double>>& x,
                    const std::vector<int>& y, const SmoOptions& opts,
                    SmoTrace* trace = nullptr);

/// Dual objective sum(a) - 1/2 sum_ij a_i a_j y_i y_j K_ij for a full alpha
/// vector over the training set (used by oracles and the trace).
double svm_dual_objective(const std::vector<std::vector<double>>& x,
                          const std::vector<int>& y,
                          const std::vector<double>& alpha, double gamma);

/// One-vs-rest multiclass wrapper over 3 binary machines.
struct SvmModel {
  std::vector<BinarySvm> machines;  // one per class index
  double c = 1.0;
  double gamma = 0.1;

  std::array<double, 3> decision_values(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
};

/// Trains one machine per class (class vs rest). Requires >= 2 distinct
/// labels and finite standardized features.
SvmModel svm_train(const std::vector<std::vector<double>>& x,
                   const std::vector<int>& labels, double c, double gamma);

/// Full kernel pipeline around SvmModel: tf-idf + scaler fitted on train,
/// assembled features, one-vs-rest prediction.
class SvmClassifier : public Classifier {
 public:
  SvmClassifier(features::TfIdfModel tfidf, features::StandardScaler scaler,
                std::vector<features::Lexicon> lexicons, SvmModel model);

  std::string family() const override { return "svm"; }
  std::string strategy() const override { return "features"; }
  std::array<double, 3> predict_proba(const corpus::LabeledClaim& claim) const override;
  void save(std::ostream& os) const override;
  static std::unique_ptr<SvmClassifier> load(std::istream& is);

  std::vector<double> featurize(const corpus::LabeledClaim& claim) const;
  const SvmModel& model() const { return model_; }

 private:
  features::TfIdfModel tfidf_;
  features::StandardScaler scaler_;
  std::vector<features::Lexicon> lexicons_;
  SvmModel model_;
};

}  // namespace argimpact::models
