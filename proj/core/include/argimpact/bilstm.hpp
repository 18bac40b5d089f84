#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "argimpact/autodiff.hpp"
#include "argimpact/models.hpp"

namespace argimpact::models {

/// Token vocabulary built from the train split (claim and context texts).
/// Index 0 is the unknown token, index 1 the reserved claim separator.
struct Vocabulary {
  static constexpr std::size_t kUnk = 0;
  static constexpr std::size_t kSep = 1;

  std::vector<std::string> tokens{"<unk>", "<sep>"};
  std::unordered_map<std::string, std::size_t> ids{{"<unk>", 0}, {"<sep>", 1}};

  static Vocabulary build(const std::vector<corpus::LabeledClaim>& train_split);

  std::size_t size() const { return tokens.size(); }
  std::size_t id_of(const std::string& token) const {
    auto it = ids.find(token);
    return it == ids.end() ? kUnk : it->second;
  }
  void add(const std::string& token);
};

struct NetDims {
  std::size_t embedding = 32;
  std::size_t hidden = 16;      // BiLSTM units per direction
  std::size_t gru_hidden = 16;  // context BiGRU units per direction
};

/// Token of a flat-composed sequence: the literal token plus its segment
/// flag (true = target claim, false = discourse context / separator).
struct FlatToken {
  std::string token;
  bool target_segment = false;
};

/// Packs the windowed context and the target claim into one sequence:
/// [ctx_1 tokens, <sep>, ..., ctx_k tokens, <sep>, target tokens] with the
/// most recent `window` ancestors kept (thesis-side dropped first).
std::vector<FlatToken> compose_flat(
    const std::vector<std::vector<std::string>>& context_token_lists,
    const std::vector<std::string>& target_tokens, int window);

/// Dot-product attention over encoded context claims with a learned query:
/// weights = softmax(V_c . query), pooled = sum_c weight_c * V_c.
struct AttentionComposition {
  autodiff::Tensor weights;   // [k], sums to 1
  autodiff::Tensor pooled;    // context representation V_d
  autodiff::Tensor combined;  // [V_d, V_r]
};

AttentionComposition compose_attention(const std::vector<autodiff::Tensor>& context_vecs,
                                       const autodiff::Tensor& target_vec,
                                       const autodiff::Tensor& query);

/// BiGRU over the context representations (thesis-to-parent order), final
/// states concatenated with the target representation.
autodiff::Tensor compose_gru(const autodiff::BiGruParams& params,
                             const std::vector<autodiff::Tensor>& context_vecs,
                             const autodiff::Tensor& target_vec);

/// Linear classification layer; returns the softmax distribution.
autodiff::Tensor classify(const autodiff::Tensor& input, const autodiff::Tensor& w,
                          const autodiff::Tensor& b);

/// BiLSTM claim encoder with attention pooling, plus one of the context
/// composition strategies on top and a linear classification layer.
class BilstmClassifier : public Classifier {
 public:
  BilstmClassifier(Vocabulary vocab, ContextStrategy strategy, NetDims dims,
                   Rng& rng);

  /// Attention-pooled BiLSTM encoding of one token sequence. `segments`
  /// appends the binary segment feature per token (flat strategies only);
  /// pass empty for plain encoding. Throws on empty token lists.
  autodiff::Tensor encode(const std::vector<std::string>& tokens,
                          const std::vector<bool>& segments = {}) const;

  /// Attention weights of the encoder pooling, for inspection/tests.
  autodiff::Tensor encode_attention_weights(const std::vector<std::string>& tokens) const;

  /// Class logits with the full strategy composition (graph-building).
  autodiff::Tensor logits(const corpus::LabeledClaim& claim) const;

  std::string family() const override { return "bilstm"; }
  std::string strategy() const override { return strategy_.name(); }
  std::array<double, 3> predict_proba(const corpus::LabeledClaim& claim) const override;
  void save(std::ostream& os) const override;
  static std::unique_ptr<BilstmClassifier> load(std::istream& is);

  /// Overwrites embedding rows from a GloVe-format text file
  /// ("token v1 ... vd" per line); tokens absent from the file keep their
  /// random init. Dimension mismatches throw DataError.
  void load_embeddings(const std::string& path);

  autodiff::NamedParams& params() { return params_; }
  const Vocabulary& vocab() const { return vocab_; }
  const ContextStrategy& context_strategy() const { return strategy_; }
  const NetDims& dims() const { return dims_; }

 private:
  BilstmClassifier(Vocabulary vocab, ContextStrategy strategy, NetDims dims);
  void register_params();
  std::vector<autodiff::Tensor> token_inputs(const std::vector<std::string>& tokens,
                                             const std::vector<bool>& segments) const;

  Vocabulary vocab_;
  ContextStrategy strategy_;
  NetDims dims_;

  autodiff::Tensor embeddings_;        // [V, embedding]
  autodiff::BiLstmParams encoder_;     // input = embedding (+1 for flat segment)
  autodiff::Tensor token_query_;       // [2*hidden] attention pooling query
  autodiff::Tensor context_query_;     // [2*hidden] Context_a query (attention only)
  autodiff::BiGruParams context_gru_;  // Context_gru encoder (gru only)
  autodiff::Tensor cls_w_, cls_b_;

  autodiff::NamedParams params_;
};

}  // namespace argimpact::models
