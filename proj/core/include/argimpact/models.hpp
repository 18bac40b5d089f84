#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "argimpact/corpus.hpp"

namespace argimpact::models {

enum class Family { Majority, Svm, FastText, Bilstm };

const char* family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

enum class ContextKind { ClaimOnly, ClaimPlusParent, Flat, Attention, Gru };

/// How much discourse context a model consumes and how it is composed.
/// `window` is the number of most-recent ancestor claims used; the effective
/// context is min(window, C_l).
struct ContextStrategy {
  ContextKind kind = ContextKind::ClaimOnly;
  int window = 1;

  static ContextStrategy claim_only() { return {ContextKind::ClaimOnly, 1}; }
  static ContextStrategy claim_plus_parent() { return {ContextKind::ClaimPlusParent, 1}; }
  static ContextStrategy flat(int window) { return {ContextKind::Flat, window}; }
  static ContextStrategy attention(int window) { return {ContextKind::Attention, window}; }
  static ContextStrategy gru(int window) { return {ContextKind::Gru, window}; }

  bool uses_context() const { return kind != ContextKind::ClaimOnly; }
  std::string name() const;
};

std::optional<ContextStrategy> strategy_from_name(std::string_view name, int window);

/// A trained claim-impact classifier. Immutable; safe for concurrent predict.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::string family() const = 0;
  virtual std::string strategy() const = 0;
  virtual std::array<double, 3> predict_proba(const corpus::LabeledClaim& claim) const = 0;
  virtual void save(std::ostream& os) const = 0;

  corpus::ImpactClass3 predict(const corpus::LabeledClaim& claim) const {
    const auto p = predict_proba(claim);
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (p[i] > p[best]) best = i;
    }
    return static_cast<corpus::ImpactClass3>(best);
  }
};

/// Reads any checkpoint written by a Classifier::save and rebuilds it.
std::unique_ptr<Classifier> load_classifier(std::istream& is);
std::unique_ptr<Classifier> load_classifier_file(const std::string& path);

/// Constant predictor: the modal training label with the train label
/// distribution as its reported "distribution".
class MajorityClassifier : public Classifier {
 public:
  static MajorityClassifier train(const std::vector<corpus::LabeledClaim>& train_split);

  std::string family() const override { return "majority"; }
  std::string strategy() const override { return "none"; }
  std::array<double, 3> predict_proba(const corpus::LabeledClaim&) const override {
    return priors_;
  }
  void save(std::ostream& os) const override;
  static std::unique_ptr<MajorityClassifier> load(std::istream& is);

  corpus::ImpactClass3 modal_label() const { return modal_; }

 private:
  corpus::ImpactClass3 modal_ = corpus::ImpactClass3::NotImpactful;
  std::array<double, 3> priors_{};
};

}  // namespace argimpact::models
