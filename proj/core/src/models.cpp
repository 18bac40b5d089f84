#include "argimpact/models.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "argimpact/bilstm.hpp"
#include "argimpact/error.hpp"
#include "argimpact/fasttext.hpp"
#include "argimpact/kv.hpp"
#include "argimpact/svm.hpp"

namespace argimpact::models {

namespace {
constexpr const char* kMagic = "argimpact_checkpoint v1";
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Majority: return "majority";
    case Family::Svm: return "svm";
    case Family::FastText: return "fasttext";
    case Family::Bilstm: return "bilstm";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "majority") return Family::Majority;
  if (name == "svm") return Family::Svm;
  if (name == "fasttext") return Family::FastText;
  if (name == "bilstm") return Family::Bilstm;
  return std::nullopt;
}

std::string ContextStrategy::name() const {
  switch (kind) {
    case ContextKind::ClaimOnly: return "none";
    case ContextKind::ClaimPlusParent: return "parent";
    case ContextKind::Flat: return "flat(" + std::to_string(window) + ")";
    case ContextKind::Attention: return "attention(" + std::to_string(window) + ")";
    case ContextKind::Gru: return "gru(" + std::to_string(window) + ")";
  }
  return "?";
}

std::optional<ContextStrategy> strategy_from_name(std::string_view name, int window) {
  if (window < 1 || window > 4) return std::nullopt;
  if (name == "none") return ContextStrategy::claim_only();
  if (name == "parent") return ContextStrategy::claim_plus_parent();
  if (name == "flat") return ContextStrategy::flat(window);
  if (name == "attention") return ContextStrategy::attention(window);
  if (name == "gru") return ContextStrategy::gru(window);
  return std::nullopt;
}

MajorityClassifier MajorityClassifier::train(
    const std::vector<corpus::LabeledClaim>& train_split) {
  if (train_split.empty()) throw DataError("majority: empty training set");
  std::array<long long, 3> counts{};
  for (const auto& claim : train_split) ++counts[static_cast<int>(claim.label3)];

  MajorityClassifier model;
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  model.modal_ = static_cast<corpus::ImpactClass3>(best);
  for (int i = 0; i < 3; ++i) {
    model.priors_[i] = double(counts[i]) / double(train_split.size());
  }
  return model;
}

void MajorityClassifier::save(std::ostream& os) const {
  os << kMagic << '\n';
  kv::write(os, "family", "majority");
  kv::write(os, "modal", static_cast<long long>(modal_));
  for (int i = 0; i < 3; ++i) {
    kv::write(os, "prior_" + std::to_string(i), priors_[i]);
  }
}

std::unique_ptr<MajorityClassifier> MajorityClassifier::load(std::istream& is) {
  const auto records = kv::parse(is);
  auto model = std::make_unique<MajorityClassifier>();
  model->modal_ = static_cast<corpus::ImpactClass3>(std::stoi(kv::get(records, "modal")));
  for (int i = 0; i < 3; ++i) {
    model->priors_[i] = std::stod(kv::get(records, "prior_" + std::to_string(i)));
  }
  return model;
}

std::unique_ptr<Classifier> load_classifier(std::istream& is) {
  std::string magic;
  if (!std::getline(is, magic) || magic != kMagic) {
    throw DataError("checkpoint: bad or missing header");
  }
  std::string family_line;
  if (!std::getline(is, family_line)) throw DataError("checkpoint: missing family");
  const auto tab = family_line.find('\t');
  if (tab == std::string::npos || family_line.substr(0, tab) != "family") {
    throw DataError("checkpoint: missing family record");
  }
  const std::string family = family_line.substr(tab + 1);
  if (family == "majority") return MajorityClassifier::load(is);
  if (family == "svm") return SvmClassifier::load(is);
  if (family == "fasttext") return FastTextClassifier::load(is);
  if (family == "bilstm") return BilstmClassifier::load(is);
  throw DataError("checkpoint: unknown family '" + family + "'");
}

std::unique_ptr<Classifier> load_classifier_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open checkpoint '" + path + "'");
  return load_classifier(is);
}

}  // namespace argimpact::models
