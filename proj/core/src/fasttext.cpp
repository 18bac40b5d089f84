#include "argimpact/fasttext.hpp"

#include <istream>
#include <ostream>

#include "argimpact/checkpoint.hpp"
#include "argimpact/error.hpp"
#include "argimpact/kv.hpp"
#include "argimpact/text.hpp"

namespace argimpact::models {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

FastTextClassifier::FastTextClassifier(FastTextConfig config) : config_(config) {}

FastTextClassifier::FastTextClassifier(FastTextConfig config, Rng& rng)
    : config_(config) {
  embeddings_ = autodiff::Tensor::glorot(rng, config_.buckets, config_.dim);
  w_ = autodiff::Tensor::zeros({3, config_.dim}, true);
  b_ = autodiff::Tensor::zeros({3}, true);
  params_.add("embeddings", embeddings_);
  params_.add("w", w_);
  params_.add("b", b_);
}

std::vector<std::size_t> FastTextClassifier::ngram_ids(
    const std::vector<std::string>& tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size() * 2);
  for (const std::string& t : tokens) {
    ids.push_back(fnv1a(t) % config_.buckets);
  }
  if (config_.max_ngram >= 2) {
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      ids.push_back(fnv1a(tokens[i] + " " + tokens[i + 1]) % config_.buckets);
    }
  }
  return ids;
}

autodiff::Tensor FastTextClassifier::logits(
    const std::vector<std::string>& tokens) const {
  const auto ids = ngram_ids(tokens);
  if (ids.empty()) throw std::invalid_argument("fasttext: empty token sequence");
  const auto looked_up = autodiff::embedding_lookup(embeddings_, ids);
  const auto pooled = autodiff::mean_pool(looked_up);
  return autodiff::add(autodiff::matmul(w_, pooled), b_);
}

std::array<double, 3> FastTextClassifier::predict_proba(
    const corpus::LabeledClaim& claim) const {
  const auto tokens = text::tokenize(claim.claim.text);
  if (tokens.empty()) return priors_;  // empty vocabulary -> prior class
  const auto dist = autodiff::softmax(logits(tokens));
  return {dist.values()[0], dist.values()[1], dist.values()[2]};
}

void FastTextClassifier::save(std::ostream& os) const {
  os << "argimpact_checkpoint v1\n";
  kv::write(os, "family", "fasttext");
  kv::write(os, "buckets", static_cast<long long>(config_.buckets));
  kv::write(os, "dim", static_cast<long long>(config_.dim));
  kv::write(os, "max_ngram", static_cast<long long>(config_.max_ngram));
  for (int i = 0; i < 3; ++i) {
    kv::write(os, "prior_" + std::to_string(i), priors_[i]);
  }
  checkpoint::write_params(os, params_);
}

std::unique_ptr<FastTextClassifier> FastTextClassifier::load(std::istream& is) {
  FastTextConfig config;
  std::array<double, 3> priors{};
  std::string line;
  std::size_t n_tensors = 0;
  while (std::getline(is, line)) {
    const auto fields = text::split_tabs(line);
    if (fields[0] == "buckets") config.buckets = std::stoull(std::string(fields[1]));
    else if (fields[0] == "dim") config.dim = std::stoull(std::string(fields[1]));
    else if (fields[0] == "max_ngram") config.max_ngram = std::stoi(std::string(fields[1]));
    else if (fields[0].rfind("prior_", 0) == 0) {
      priors[std::stoi(std::string(fields[0].substr(6)))] = std::stod(std::string(fields[1]));
    } else if (fields[0].rfind("tensors ", 0) == 0) {
      n_tensors = std::stoull(std::string(fields[0].substr(8)));
      break;
    }
  }
  auto params = checkpoint::read_params(is, n_tensors);

  std::unique_ptr<FastTextClassifier> model(new FastTextClassifier(config));
  const auto* emb = params.find("embeddings");
  const auto* w = params.find("w");
  const auto* b = params.find("b");
  if (!emb || !w || !b) throw DataError("fasttext checkpoint: missing tensors");
  model->embeddings_ = *emb;
  model->w_ = *w;
  model->b_ = *b;
  model->priors_ = priors;
  model->params_ = std::move(params);
  return model;
}

}  // namespace argimpact::models
