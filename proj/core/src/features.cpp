#include "argimpact/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "argimpact/error.hpp"
#include "argimpact/text.hpp"

namespace argimpact::features {

namespace {

// Fixed modal verb inventory for the modal ratio feature.
const std::set<std::string>& modal_verbs() {
  static const std::set<std::string> kModals = {
      "can", "could", "may", "might", "must", "shall", "should", "will", "would",
      "ought"};
  return kModals;
}

// Compact English stopword list shipped with the library.
const std::set<std::string>& stopwords() {
  static const std::set<std::string> kStopwords = {
      "a",    "an",   "and",  "are",  "as",   "at",   "be",   "but",  "by",
      "for",  "from", "had",  "has",  "have", "he",   "her",  "his",  "i",
      "if",   "in",   "is",   "it",   "its",  "not",  "of",   "on",   "or",
      "she",  "that", "the",  "their", "them", "they", "this", "to",  "was",
      "we",   "were", "which", "who",  "will", "with", "you"};
  return kStopwords;
}

void add_terms(const std::vector<std::string>& tokens,
               std::map<std::string, long long>& counts) {
  for (const std::string& t : tokens) ++counts[t];
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    ++counts[tokens[i] + " " + tokens[i + 1]];
  }
}

}  // namespace

TfIdfModel tfidf_fit(const std::vector<std::string>& texts) {
  if (texts.empty()) throw DataError("tfidf_fit: empty fit corpus");
  TfIdfModel model;
  model.fit_corpus_size = texts.size();

  std::map<std::string, long long> df;  // ordered: deterministic vocabulary
  for (const std::string& text : texts) {
    std::map<std::string, long long> counts;
    add_terms(text::tokenize(text), counts);
    for (const auto& [term, _] : counts) ++df[term];
  }
  model.terms.reserve(df.size());
  model.idf.reserve(df.size());
  const double n = static_cast<double>(texts.size());
  for (const auto& [term, docs] : df) {
    model.vocabulary.emplace(term, model.terms.size());
    model.terms.push_back(term);
    model.idf.push_back(std::log((1.0 + n) / (1.0 + double(docs))) + 1.0);
  }
  return model;
}

SparseVector tfidf_transform(const TfIdfModel& model, const std::string& text) {
  std::map<std::string, long long> counts;
  add_terms(text::tokenize(text), counts);

  SparseVector vec;
  vec.dim = model.dim();
  double norm_sq = 0.0;
  for (const auto& [term, count] : counts) {
    auto it = model.vocabulary.find(term);
    if (it == model.vocabulary.end()) continue;
    const double w = double(count) * model.idf[it->second];
    vec.entries.emplace_back(it->second, w);
    norm_sq += w * w;
  }
  std::sort(vec.entries.begin(), vec.entries.end());
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [_, w] : vec.entries) w *= inv;
  }
  return vec;
}

double cosine_similarity(const SparseVector& u, const SparseVector& v) {
  if (u.dim != v.dim) throw DataError("cosine_similarity: dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (const auto& [_, w] : u.entries) nu += w * w;
  for (const auto& [_, w] : v.entries) nv += w * w;
  std::size_t j = 0;
  for (const auto& [i, w] : u.entries) {
    while (j < v.entries.size() && v.entries[j].first < i) ++j;
    if (j < v.entries.size() && v.entries[j].first == i) dot += w * v.entries[j].second;
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DataError("cosine_similarity: dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

FeatureVector tree_features(const corpus::LabeledClaim& claim,
                            const TfIdfModel& tfidf) {
  FeatureVector out;
  out.append("depth", static_cast<double>(claim.context.length()));

  const SparseVector claim_vec = tfidf_transform(tfidf, claim.claim.text);
  const SparseVector parent_vec = tfidf_transform(tfidf, claim.context.parent().text);
  const SparseVector thesis_vec = tfidf_transform(tfidf, claim.context.thesis().text);
  out.append("cosine_parent", cosine_similarity(claim_vec, parent_vec));
  out.append("cosine_thesis", cosine_similarity(claim_vec, thesis_vec));

  const corpus::VoteRecord& pv = claim.context.parent().votes;
  const long long total = pv.total();
  for (int c = 0; c < corpus::kNumClasses5; ++c) {
    const double share = total > 0 ? double(pv.counts[c]) / double(total) : 0.0;
    out.append(std::string("parent_vote_share_") +
                   corpus::class5_name(static_cast<corpus::ImpactClass5>(c)),
               share);
  }
  return out;
}

int count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (w.empty()) return 0;

  auto is_vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    if (is_vowel(c)) {
      if (!in_group) ++groups;
      in_group = true;
    } else {
      in_group = false;
    }
  }
  // Silent final e: drop one group when the trailing e is its own vowel group,
  // except in the consonant-le pattern ("table", "people").
  const std::size_t n = w.size();
  if (groups > 1 && w.back() == 'e' && n >= 2 && !is_vowel(w[n - 2]) &&
      w[n - 2] != 'l') {
    --groups;
  }
  return std::max(groups, 1);
}

FeatureVector surface_features(const std::string& text_in) {
  const auto tokens = text::tokenize(text_in);
  const auto sentences = text::split_sentences(text_in);
  const double n_tokens = static_cast<double>(tokens.size());

  long long quotes = 0, exclamations = 0;
  for (char c : text_in) {
    if (c == '"') ++quotes;
    if (c == '!') ++exclamations;
  }

  long long modals = 0, stops = 0, complex_words = 0;
  std::set<std::string> types;
  double total_word_len = 0.0;
  for (const std::string& t : tokens) {
    if (modal_verbs().count(t)) ++modals;
    if (stopwords().count(t)) ++stops;
    if (count_syllables(t) >= 3) ++complex_words;
    types.insert(t);
    total_word_len += double(t.size());
  }

  FeatureVector out;
  auto ratio = [&](double count) { return n_tokens > 0 ? count / n_tokens : 0.0; };
  out.append("quote_ratio", ratio(double(quotes)));
  out.append("exclamation_ratio", ratio(double(exclamations)));
  out.append("modal_ratio", ratio(double(modals)));
  out.append("stopword_ratio", ratio(double(stops)));
  out.append("type_token_ratio", ratio(double(types.size())));
  out.append("mean_word_length", n_tokens > 0 ? total_word_len / n_tokens : 0.0);
  out.append("mean_sentence_length",
             !sentences.empty() ? n_tokens / double(sentences.size()) : 0.0);
  out.append("complex_word_count", double(complex_words));
  return out;
}

std::optional<Readability> readability(const std::string& text_in) {
  const auto tokens = text::tokenize(text_in);
  if (tokens.empty()) return std::nullopt;
  const auto sentences = text::split_sentences(text_in);
  const double words = static_cast<double>(tokens.size());
  const double n_sentences = std::max<double>(1.0, double(sentences.size()));

  double letters = 0.0, syllables = 0.0;
  for (const std::string& t : tokens) {
    for (char c : t) {
      if (std::isalnum(static_cast<unsigned char>(c))) letters += 1.0;
    }
    syllables += double(count_syllables(t));
  }

  Readability r;
  const double letters_per_100 = 100.0 * letters / words;
  const double sentences_per_100 = 100.0 * n_sentences / words;
  r.coleman_liau = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
  r.flesch_reading_ease =
      206.835 - 1.015 * (words / n_sentences) - 84.6 * (syllables / words);
  return r;
}

Lexicon load_lexicon(const std::string& name, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file '" + path + "'");
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    words.emplace_back(trimmed);
  }
  return make_lexicon(name, std::move(words));
}

Lexicon make_lexicon(std::string name, std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return Lexicon{std::move(name), std::move(words)};
}

FeatureVector lexicon_features(const std::string& text_in,
                               const std::vector<Lexicon>& lexicons) {
  const auto tokens = text::tokenize(text_in);
  FeatureVector out;
  for (const Lexicon& lex : lexicons) {
    long long hits = 0;
    for (const std::string& t : tokens) {
      if (std::binary_search(lex.words.begin(), lex.words.end(), t)) ++hits;
    }
    out.append("lexicon_" + lex.name + "_ratio",
               tokens.empty() ? 0.0 : double(hits) / double(tokens.size()));
  }
  return out;
}

FeatureVector assemble_svm_features(const corpus::LabeledClaim& claim,
                                    const TfIdfModel& tfidf,
                                    const std::vector<Lexicon>& lexicons) {
  FeatureVector out = tree_features(claim, tfidf);

  const SparseVector vec = tfidf_transform(tfidf, claim.claim.text);
  std::vector<double> dense(tfidf.dim(), 0.0);
  for (const auto& [i, w] : vec.entries) dense[i] = w;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    out.append("tfidf:" + tfidf.terms[i], dense[i]);
  }

  out.extend(surface_features(claim.claim.text));

  const auto read = readability(claim.claim.text);
  out.append("coleman_liau", read ? read->coleman_liau : 0.0);
  out.append("flesch_reading_ease", read ? read->flesch_reading_ease : 0.0);

  out.extend(lexicon_features(claim.claim.text, lexicons));
  return out;
}

StandardScaler StandardScaler::fit(const std::vector<FeatureVector>& rows) {
  if (rows.empty()) throw DataError("StandardScaler: empty fit set");
  const std::size_t dim = rows[0].values.size();
  StandardScaler scaler;
  scaler.means.assign(dim, 0.0);
  scaler.stds.assign(dim, 0.0);
  for (const FeatureVector& row : rows) {
    if (row.values.size() != dim) throw DataError("StandardScaler: ragged rows");
    for (std::size_t i = 0; i < dim; ++i) scaler.means[i] += row.values[i];
  }
  for (double& m : scaler.means) m /= double(rows.size());
  for (const FeatureVector& row : rows) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = row.values[i] - scaler.means[i];
      scaler.stds[i] += d * d;
    }
  }
  for (double& s : scaler.stds) s = std::sqrt(s / double(rows.size()));
  return scaler;
}

std::vector<double> StandardScaler::transform(std::span<const double> row) const {
  if (row.size() != means.size()) throw DataError("StandardScaler: dimension mismatch");
  std::vector<double> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    out[i] = stds[i] > 0.0 ? (row[i] - means[i]) / stds[i] : 0.0;
  }
  return out;
}

}  // namespace argimpact::features
