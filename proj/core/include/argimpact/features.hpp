#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "argimpact/corpus.hpp"

namespace argimpact::features {

/// Sparse vector over a fixed dimension; entries sorted by index.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, double>> entries;
};

/// tf-idf over unigrams and bigrams of the shared tokenizer.
/// idf(t) = ln((1+N)/(1+df(t))) + 1; transforms are L2-normalized.
struct TfIdfModel {
  std::unordered_map<std::string, std::size_t> vocabulary;  // term -> column
  std::vector<std::string> terms;                           // column -> term
  std::vector<double> idf;
  std::size_t fit_corpus_size = 0;

  std::size_t dim() const { return terms.size(); }
};

TfIdfModel tfidf_fit(const std::vector<std::string>& texts);
SparseVector tfidf_transform(const TfIdfModel& model, const std::string& text);

/// u.v / (|u||v|); 0 when either norm is 0. Dimension mismatch throws.
double cosine_similarity(const SparseVector& u, const SparseVector& v);
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// Dense named feature vector; values and schema stay aligned.
struct FeatureVector {
  std::vector<double> values;
  std::vector<std::string> schema;

  void append(std::string name, double value) {
    schema.push_back(std::move(name));
    values.push_back(value);
  }
  void extend(const FeatureVector& other) {
    schema.insert(schema.end(), other.schema.begin(), other.schema.end());
    values.insert(values.end(), other.values.begin(), other.values.end());
  }
};

/// Argument-tree features: context depth, tf-idf cosine to parent and thesis,
/// and the parent's vote counts normalized by the parent's total (zeros when
/// the parent has no votes).
FeatureVector tree_features(const corpus::LabeledClaim& claim,
                            const TfIdfModel& tfidf);

/// Claim-text surface statistics: punctuation/modal/stopword ratios over the
/// token count, type-token ratio, mean word and sentence lengths, and the
/// number of complex words (>= 3 syllables). Empty text yields zeros.
FeatureVector surface_features(const std::string& text);

/// Vowel-group heuristic with a silent-e rule; words keep at least one
/// syllable. Frozen: tests pin its outputs.
int count_syllables(std::string_view word);

struct Readability {
  double coleman_liau = 0.0;
  double flesch_reading_ease = 0.0;
};

/// Coleman-Liau 0.0588*L - 0.296*S - 15.8 (L/S per 100 words) and
/// Flesch 206.835 - 1.015*(words/sentence) - 84.6*(syllables/word).
/// nullopt when there is no word to score.
std::optional<Readability> readability(const std::string& text);

/// Named word list loaded from a plain UTF-8 file: one lowercase entry per
/// line, `#` comments.
struct Lexicon {
  std::string name;
  std::vector<std::string> words;  // kept sorted for lookup
};

Lexicon load_lexicon(const std::string& name, const std::string& path);
Lexicon make_lexicon(std::string name, std::vector<std::string> words);

/// Per-lexicon token hit ratio. Lexicons absent from `lexicons` are simply
/// not in the schema.
FeatureVector lexicon_features(const std::string& text,
                               const std::vector<Lexicon>& lexicons);

/// Full kernel-model feature vector:
/// [tree | tf-idf(claim text) | surface | readability | lexicon].
FeatureVector assemble_svm_features(const corpus::LabeledClaim& claim,
                                    const TfIdfModel& tfidf,
                                    const std::vector<Lexicon>& lexicons);

/// Z-score standardization fitted on train-split features only.
struct StandardScaler {
  std::vector<double> means;
  std::vector<double> stds;  // 0 entries transform to 0

  static StandardScaler fit(const std::vector<FeatureVector>& rows);
  std::vector<double> transform(std::span<const double> row) const;
};

}  // namespace argimpact::features
