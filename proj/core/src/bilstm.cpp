#include "argimpact/bilstm.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "argimpact/checkpoint.hpp"
#include "argimpact/error.hpp"
#include "argimpact/kv.hpp"
#include "argimpact/text.hpp"

namespace argimpact::models {

using autodiff::Tensor;

void Vocabulary::add(const std::string& token) {
  if (!ids.count(token)) {
    ids.emplace(token, tokens.size());
    tokens.push_back(token);
  }
}

Vocabulary Vocabulary::build(const std::vector<corpus::LabeledClaim>& train_split) {
  Vocabulary vocab;
  for (const auto& claim : train_split) {
    for (const auto& t : text::tokenize(claim.claim.text)) vocab.add(t);
    for (const auto& ctx : claim.context.claims) {
      for (const auto& t : text::tokenize(ctx.text)) vocab.add(t);
    }
  }
  return vocab;
}

std::vector<FlatToken> compose_flat(
    const std::vector<std::vector<std::string>>& context_token_lists,
    const std::vector<std::string>& target_tokens, int window) {
  if (window < 1) throw std::invalid_argument("compose_flat: window must be >= 1");
  const std::size_t keep =
      std::min<std::size_t>(std::size_t(window), context_token_lists.size());
  const std::size_t first = context_token_lists.size() - keep;

  std::vector<FlatToken> out;
  for (std::size_t c = first; c < context_token_lists.size(); ++c) {
    for (const auto& t : context_token_lists[c]) out.push_back({t, false});
    out.push_back({"<sep>", false});
  }
  for (const auto& t : target_tokens) out.push_back({t, true});
  return out;
}

AttentionComposition compose_attention(const std::vector<Tensor>& context_vecs,
                                       const Tensor& target_vec,
                                       const Tensor& query) {
  if (context_vecs.empty()) {
    throw std::invalid_argument("compose_attention: empty context set");
  }
  std::vector<Tensor> scores;
  scores.reserve(context_vecs.size());
  for (const Tensor& v : context_vecs) scores.push_back(autodiff::dot(v, query));

  AttentionComposition out;
  out.weights = autodiff::softmax(autodiff::stack(scores));
  Tensor pooled;
  for (std::size_t i = 0; i < context_vecs.size(); ++i) {
    Tensor term = autodiff::scale_by(context_vecs[i], autodiff::index(out.weights, i));
    pooled = pooled.defined() ? autodiff::add(pooled, term) : term;
  }
  out.pooled = pooled;
  out.combined = autodiff::concat({pooled, target_vec});
  return out;
}

Tensor compose_gru(const autodiff::BiGruParams& params,
                   const std::vector<Tensor>& context_vecs,
                   const Tensor& target_vec) {
  if (context_vecs.empty()) {
    throw std::invalid_argument("compose_gru: empty context set");
  }
  const Tensor context_rep = autodiff::bigru_final(params, context_vecs);
  return autodiff::concat({context_rep, target_vec});
}

Tensor classify(const Tensor& input, const Tensor& w, const Tensor& b) {
  return autodiff::softmax(autodiff::add(autodiff::matmul(w, input), b));
}

BilstmClassifier::BilstmClassifier(Vocabulary vocab, ContextStrategy strategy,
                                   NetDims dims)
    : vocab_(std::move(vocab)), strategy_(strategy), dims_(dims) {}

BilstmClassifier::BilstmClassifier(Vocabulary vocab, ContextStrategy strategy,
                                   NetDims dims, Rng& rng)
    : vocab_(std::move(vocab)), strategy_(strategy), dims_(dims) {
  const bool flat = strategy_.kind == ContextKind::Flat ||
                    strategy_.kind == ContextKind::ClaimPlusParent;
  const std::size_t token_dim = dims_.embedding + (flat ? 1 : 0);
  const std::size_t enc_dim = 2 * dims_.hidden;

  embeddings_ = Tensor::glorot(rng, vocab_.size(), dims_.embedding);
  encoder_ = autodiff::BiLstmParams::init(rng, token_dim, dims_.hidden);
  token_query_ = Tensor::glorot(rng, enc_dim, 1);

  std::size_t cls_in = enc_dim;
  if (strategy_.kind == ContextKind::Attention) {
    context_query_ = Tensor::glorot(rng, enc_dim, 1);
    cls_in = 2 * enc_dim;
  } else if (strategy_.kind == ContextKind::Gru) {
    context_gru_ = autodiff::BiGruParams::init(rng, enc_dim, dims_.gru_hidden);
    cls_in = 2 * dims_.gru_hidden + enc_dim;
  }
  cls_w_ = Tensor::glorot(rng, 3, cls_in);
  cls_b_ = Tensor::zeros({3}, true);
  register_params();
}

void BilstmClassifier::register_params() {
  params_.add("embeddings", embeddings_);
  params_.add_lstm("enc.fwd", encoder_.fwd);
  params_.add_lstm("enc.bwd", encoder_.bwd);
  params_.add("token_query", token_query_);
  if (strategy_.kind == ContextKind::Attention) {
    params_.add("context_query", context_query_);
  } else if (strategy_.kind == ContextKind::Gru) {
    params_.add_gru("ctxgru.fwd", context_gru_.fwd);
    params_.add_gru("ctxgru.bwd", context_gru_.bwd);
  }
  params_.add("cls.w", cls_w_);
  params_.add("cls.b", cls_b_);
}

std::vector<Tensor> BilstmClassifier::token_inputs(
    const std::vector<std::string>& tokens, const std::vector<bool>& segments) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab_.id_of(t));
  const Tensor looked_up = autodiff::embedding_lookup(embeddings_, ids);

  std::vector<Tensor> inputs;
  inputs.reserve(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    Tensor e = autodiff::row(looked_up, t);
    if (!segments.empty()) {
      e = autodiff::concat({e, Tensor::scalar(segments[t] ? 1.0 : 0.0)});
    }
    inputs.push_back(e);
  }
  return inputs;
}

Tensor BilstmClassifier::encode(const std::vector<std::string>& tokens,
                                const std::vector<bool>& segments) const {
  if (tokens.empty()) throw std::invalid_argument("encode: empty token sequence");
  const auto inputs = token_inputs(tokens, segments);
  const auto states = autodiff::bilstm_states(encoder_, inputs);

  std::vector<Tensor> scores;
  scores.reserve(states.size());
  for (const Tensor& h : states) scores.push_back(autodiff::dot(h, token_query_));
  const Tensor weights = autodiff::softmax(autodiff::stack(scores));

  Tensor pooled;
  for (std::size_t t = 0; t < states.size(); ++t) {
    Tensor term = autodiff::scale_by(states[t], autodiff::index(weights, t));
    pooled = pooled.defined() ? autodiff::add(pooled, term) : term;
  }
  return pooled;
}

Tensor BilstmClassifier::encode_attention_weights(
    const std::vector<std::string>& tokens) const {
  if (tokens.empty()) throw std::invalid_argument("encode: empty token sequence");
  const auto inputs = token_inputs(tokens, {});
  const auto states = autodiff::bilstm_states(encoder_, inputs);
  std::vector<Tensor> scores;
  for (const Tensor& h : states) scores.push_back(autodiff::dot(h, token_query_));
  return autodiff::softmax(autodiff::stack(scores));
}

namespace {

std::vector<std::string> claim_tokens(const corpus::ClaimNode& node) {
  auto tokens = text::tokenize(node.text);
  if (tokens.empty()) tokens.push_back("<unk>");  // never feed an empty sequence
  return tokens;
}

}  // namespace

Tensor BilstmClassifier::logits(const corpus::LabeledClaim& claim) const {
  const auto target = claim_tokens(claim.claim);

  Tensor combined;
  switch (strategy_.kind) {
    case ContextKind::ClaimOnly: {
      combined = encode(target);
      break;
    }
    case ContextKind::ClaimPlusParent:
    case ContextKind::Flat: {
      std::vector<std::vector<std::string>> context;
      for (const auto& node : claim.context.claims) context.push_back(claim_tokens(node));
      const auto flat = compose_flat(context, target, strategy_.window);
      std::vector<std::string> tokens;
      std::vector<bool> segments;
      tokens.reserve(flat.size());
      segments.reserve(flat.size());
      for (const auto& ft : flat) {
        tokens.push_back(ft.token);
        segments.push_back(ft.target_segment);
      }
      combined = encode(tokens, segments);
      break;
    }
    case ContextKind::Attention:
    case ContextKind::Gru: {
      const std::size_t available = claim.context.claims.size();
      const std::size_t keep = std::min<std::size_t>(std::size_t(strategy_.window), available);
      std::vector<Tensor> context_vecs;
      context_vecs.reserve(keep);
      for (std::size_t c = available - keep; c < available; ++c) {
        context_vecs.push_back(encode(claim_tokens(claim.context.claims[c])));
      }
      const Tensor target_vec = encode(target);
      if (strategy_.kind == ContextKind::Attention) {
        combined = compose_attention(context_vecs, target_vec, context_query_).combined;
      } else {
        combined = compose_gru(context_gru_, context_vecs, target_vec);
      }
      break;
    }
  }
  return autodiff::add(autodiff::matmul(cls_w_, combined), cls_b_);
}

std::array<double, 3> BilstmClassifier::predict_proba(
    const corpus::LabeledClaim& claim) const {
  const Tensor dist = autodiff::softmax(logits(claim));
  return {dist.values()[0], dist.values()[1], dist.values()[2]};
}

void BilstmClassifier::load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word-vector file '" + path + "'");
  auto emb = embeddings_.values_mut();
  const std::size_t dim = dims_.embedding;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string token;
    ls >> token;
    auto it = vocab_.ids.find(token);
    std::vector<double> vec;
    double v;
    while (ls >> v) vec.push_back(v);
    if (vec.size() != dim) {
      throw DataError("word-vector file line " + std::to_string(lineno) +
                      ": expected " + std::to_string(dim) + " values, got " +
                      std::to_string(vec.size()));
    }
    if (it == vocab_.ids.end()) continue;
    std::copy(vec.begin(), vec.end(), emb.begin() + it->second * dim);
  }
}

void BilstmClassifier::save(std::ostream& os) const {
  os << "argimpact_checkpoint v1\n";
  kv::write(os, "family", "bilstm");
  kv::write(os, "strategy_kind", static_cast<long long>(strategy_.kind));
  kv::write(os, "strategy_window", static_cast<long long>(strategy_.window));
  kv::write(os, "embedding_dim", static_cast<long long>(dims_.embedding));
  kv::write(os, "hidden", static_cast<long long>(dims_.hidden));
  kv::write(os, "gru_hidden", static_cast<long long>(dims_.gru_hidden));
  kv::write(os, "vocab_size", static_cast<long long>(vocab_.size()));
  for (const auto& token : vocab_.tokens) {
    os << "token\t" << text::escape_field(token) << '\n';
  }
  checkpoint::write_params(os, params_);
}

std::unique_ptr<BilstmClassifier> BilstmClassifier::load(std::istream& is) {
  ContextStrategy strategy;
  NetDims dims;
  Vocabulary vocab;
  vocab.tokens.clear();
  vocab.ids.clear();

  std::string line;
  std::size_t n_tensors = 0;
  while (std::getline(is, line)) {
    const auto fields = text::split_tabs(line);
    if (fields[0] == "strategy_kind") {
      strategy.kind = static_cast<ContextKind>(std::stoi(std::string(fields[1])));
    } else if (fields[0] == "strategy_window") {
      strategy.window = std::stoi(std::string(fields[1]));
    } else if (fields[0] == "embedding_dim") {
      dims.embedding = std::stoull(std::string(fields[1]));
    } else if (fields[0] == "hidden") {
      dims.hidden = std::stoull(std::string(fields[1]));
    } else if (fields[0] == "gru_hidden") {
      dims.gru_hidden = std::stoull(std::string(fields[1]));
    } else if (fields[0] == "token") {
      vocab.add(text::unescape_field(fields[1]));
    } else if (fields[0].rfind("tensors ", 0) == 0) {
      n_tensors = std::stoull(std::string(fields[0].substr(8)));
      break;
    }
  }
  auto params = checkpoint::read_params(is, n_tensors);

  std::unique_ptr<BilstmClassifier> model(
      new BilstmClassifier(std::move(vocab), strategy, dims));
  auto take = [&](const std::string& name) {
    const Tensor* t = params.find(name);
    if (!t) throw DataError("bilstm checkpoint: missing tensor " + name);
    return *t;
  };
  auto take_lstm = [&](const std::string& prefix) {
    autodiff::LstmParams p;
    p.wi = take(prefix + ".wi"); p.ui = take(prefix + ".ui"); p.bi = take(prefix + ".bi");
    p.wf = take(prefix + ".wf"); p.uf = take(prefix + ".uf"); p.bf = take(prefix + ".bf");
    p.wo = take(prefix + ".wo"); p.uo = take(prefix + ".uo"); p.bo = take(prefix + ".bo");
    p.wg = take(prefix + ".wg"); p.ug = take(prefix + ".ug"); p.bg = take(prefix + ".bg");
    return p;
  };
  auto take_gru = [&](const std::string& prefix) {
    autodiff::GruParams p;
    p.wr = take(prefix + ".wr"); p.ur = take(prefix + ".ur"); p.br = take(prefix + ".br");
    p.wz = take(prefix + ".wz"); p.uz = take(prefix + ".uz"); p.bz = take(prefix + ".bz");
    p.wh = take(prefix + ".wh"); p.uh = take(prefix + ".uh"); p.bh = take(prefix + ".bh");
    return p;
  };

  model->embeddings_ = take("embeddings");
  model->encoder_.fwd = take_lstm("enc.fwd");
  model->encoder_.bwd = take_lstm("enc.bwd");
  model->token_query_ = take("token_query");
  if (strategy.kind == ContextKind::Attention) {
    model->context_query_ = take("context_query");
  } else if (strategy.kind == ContextKind::Gru) {
    model->context_gru_.fwd = take_gru("ctxgru.fwd");
    model->context_gru_.bwd = take_gru("ctxgru.bwd");
  }
  model->cls_w_ = take("cls.w");
  model->cls_b_ = take("cls.b");
  model->register_params();
  return model;
}

}  // namespace argimpact::models
