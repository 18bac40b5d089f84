#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "argimpact/autodiff.hpp"
#include "argimpact/models.hpp"

namespace argimpact::models {

struct FastTextConfig {
  std::size_t buckets = 16384;  // hashed n-gram table rows
  std::size_t dim = 32;
  int max_ngram = 2;            // 1 = unigrams only
};

/// Bag-of-n-grams linear classifier: hashed n-gram embeddings are averaged
/// and fed to a linear softmax layer. Hashing is FNV-1a, so every n-gram is
/// always in-table.
class FastTextClassifier : public Classifier {
 public:
  FastTextClassifier(FastTextConfig config, Rng& rng);

  /// Hashed ids of all unigrams (and bigrams when max_ngram >= 2).
  std::vector<std::size_t> ngram_ids(const std::vector<std::string>& tokens) const;

  /// Builds the loss graph input; empty token lists are the caller's problem
  /// (predict_proba falls back to the train priors for them).
  autodiff::Tensor logits(const std::vector<std::string>& tokens) const;

  std::string family() const override { return "fasttext"; }
  std::string strategy() const override { return "none"; }
  std::array<double, 3> predict_proba(const corpus::LabeledClaim& claim) const override;
  void save(std::ostream& os) const override;
  static std::unique_ptr<FastTextClassifier> load(std::istream& is);

  autodiff::NamedParams& params() { return params_; }
  const FastTextConfig& config() const { return config_; }
  void set_priors(const std::array<double, 3>& priors) { priors_ = priors; }

 private:
  FastTextClassifier(FastTextConfig config);  // uninitialized, for load()

  FastTextConfig config_;
  autodiff::Tensor embeddings_;  // [buckets, dim]
  autodiff::Tensor w_;           // [3, dim]
  autodiff::Tensor b_;           // [3]
  std::array<double, 3> priors_{1.0 / 3, 1.0 / 3, 1.0 / 3};
  autodiff::NamedParams params_;
};

}  // namespace argimpact::models
