#include "argimpact/svm.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "argimpact/error.hpp"
#include "argimpact/kv.hpp"
#include "argimpact/text.hpp"

namespace argimpact::models {

double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma) {
  if (x.size() != y.size()) throw std::invalid_argument("rbf_kernel: dimension mismatch");
  if (!(gamma > 0.0)) throw std::invalid_argument("rbf_kernel: gamma must be > 0");
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    dist_sq += d * d;
  }
  return std::exp(-gamma * dist_sq);
}

double BinarySvm::decision(std::span<const double> x) const {
  double sum = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    sum += alpha[i] * labels[i] * rbf_kernel(support_vectors[i], x, gamma);
  }
  return sum;
}

double svm_dual_objective(const std::vector<std::vector<double>>& x,
                          const std::vector<int>& y,
                          const std::vector<double>& alpha, double gamma) {
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    linear += alpha[i];
    if (alpha[i] == 0.0) continue;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0.0) continue;
      quad += alpha[i] * alpha[j] * y[i] * y[j] * rbf_kernel(x[i], x[j], gamma);
    }
  }
  return linear - 0.5 * quad;
}

BinarySvm smo_train(const std::vector<std::vector<double>>& x,
                    const std::vector<int>& y, const SmoOptions& opts,
                    SmoTrace* trace) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) throw std::invalid_argument("smo: empty or ragged input");
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] == 1) has_pos = true;
    else if (y[i] == -1) has_neg = true;
    else throw std::invalid_argument("smo: labels must be +1/-1");
    for (double v : x[i]) {
      if (!std::isfinite(v)) throw DataError("smo: non-finite feature value");
    }
  }
  if (!has_pos || !has_neg) throw DataError("smo: single-class training set");

  // Full Gram cache; desk-scale inputs keep this cheap.
  std::vector<std::vector<double>> kernel(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      kernel[i][j] = kernel[j][i] = rbf_kernel(x[i], x[j], opts.gamma);
    }
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a at a = 0
  double objective = 0.0;             // maximization form: e'a - 1/2 a'Qa
  if (trace) trace->dual_objective.push_back(objective);

  double violation = 0.0;
  std::size_t iterations = 0;
  for (; iterations < opts.max_iter; ++iterations) {
    // Maximal violating pair over I_up / I_low.
    int i = -1, j = -1;
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -double(y[t]) * grad[t];
      const bool in_up = (y[t] == 1 && alpha[t] < opts.c) || (y[t] == -1 && alpha[t] > 0.0);
      const bool in_low = (y[t] == -1 && alpha[t] < opts.c) || (y[t] == 1 && alpha[t] > 0.0);
      if (in_up && v > m_up) {
        m_up = v;
        i = int(t);
      }
      if (in_low && v < m_low) {
        m_low = v;
        j = int(t);
      }
    }
    violation = m_up - m_low;
    if (i < 0 || j < 0 || violation <= opts.tol) break;

    double quad = kernel[i][i] + kernel[j][j] - 2.0 * kernel[i][j];
    if (quad <= 0.0) quad = 1e-12;
    double step = violation / quad;

    // Box limits along the feasible direction (da_i = y_i t, da_j = -y_j t).
    if (y[i] == 1) step = std::min(step, opts.c - alpha[i]);
    else step = std::min(step, alpha[i]);
    if (y[j] == 1) step = std::min(step, alpha[j]);
    else step = std::min(step, opts.c - alpha[j]);
    if (step <= 0.0) break;

    // Feasible direction: da_i = y_i t, da_j = -y_j t keeps sum(a.y) fixed.
    alpha[i] = std::clamp(alpha[i] + y[i] * step, 0.0, opts.c);
    alpha[j] = std::clamp(alpha[j] - y[j] * step, 0.0, opts.c);

    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += double(y[t]) * step * (kernel[t][i] - kernel[t][j]);
    }
    // Objective gain of the exact line step: t * violation - t^2 * quad / 2.
    objective += step * violation - 0.5 * step * step * quad;
    if (trace) trace->dual_objective.push_back(objective);
  }

  // Bias from the final optimality interval midpoint.
  double m_up = -std::numeric_limits<double>::infinity();
  double m_low = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double v = -double(y[t]) * grad[t];
    const bool in_up = (y[t] == 1 && alpha[t] < opts.c) || (y[t] == -1 && alpha[t] > 0.0);
    const bool in_low = (y[t] == -1 && alpha[t] < opts.c) || (y[t] == 1 && alpha[t] > 0.0);
    if (in_up) m_up = std::max(m_up, v);
    if (in_low) m_low = std::min(m_low, v);
  }
  const double bias = (m_up + m_low) / 2.0;

  if (trace) {
    trace->final_kkt_violation = std::max(violation, 0.0);
    trace->iterations = iterations;
  }

  BinarySvm model;
  model.gamma = opts.gamma;
  model.c = opts.c;
  model.bias = bias;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_vectors.push_back(x[t]);
      model.alpha.push_back(alpha[t]);
      model.labels.push_back(y[t]);
    }
  }
  return model;
}

std::array<double, 3> SvmModel::decision_values(std::span<const double> x) const {
  std::array<double, 3> out{};
  for (std::size_t k = 0; k < machines.size() && k < 3; ++k) {
    out[k] = machines[k].decision(x);
  }
  return out;
}

int SvmModel::predict(std::span<const double> x) const {
  const auto values = decision_values(x);
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

SvmModel svm_train(const std::vector<std::vector<double>>& x,
                   const std::vector<int>& labels, double c, double gamma) {
  std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) throw DataError("svm_train: single-class training set");

  SvmModel model;
  model.c = c;
  model.gamma = gamma;
  SmoOptions opts;
  opts.c = c;
  opts.gamma = gamma;
  for (int k = 0; k < 3; ++k) {
    std::vector<int> binary(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      binary[i] = labels[i] == k ? 1 : -1;
    }
    if (!distinct.count(k)) {
      // Class absent from train: constant -inf-ish machine (no SVs, bias
      // below every real decision value).
      BinarySvm empty;
      empty.gamma = gamma;
      empty.c = c;
      empty.bias = -std::numeric_limits<double>::max();
      model.machines.push_back(std::move(empty));
      continue;
    }
    model.machines.push_back(smo_train(x, binary, opts));
  }
  return model;
}

SvmClassifier::SvmClassifier(features::TfIdfModel tfidf,
                             features::StandardScaler scaler,
                             std::vector<features::Lexicon> lexicons, SvmModel model)
    : tfidf_(std::move(tfidf)),
      scaler_(std::move(scaler)),
      lexicons_(std::move(lexicons)),
      model_(std::move(model)) {}

std::vector<double> SvmClassifier::featurize(const corpus::LabeledClaim& claim) const {
  const auto fv = features::assemble_svm_features(claim, tfidf_, lexicons_);
  return scaler_.transform(fv.values);
}

std::array<double, 3> SvmClassifier::predict_proba(
    const corpus::LabeledClaim& claim) const {
  // Softmax over decision values; a ranking proxy, not a calibrated probability.
  const auto values = model_.decision_values(featurize(claim));
  double max_v = std::max({values[0], values[1], values[2]});
  std::array<double, 3> out{};
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    out[k] = std::exp(values[k] - max_v);
    sum += out[k];
  }
  for (double& v : out) v /= sum;
  return out;
}

namespace {

void write_vector(std::ostream& os, std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << text::format_double(v[i]);
  }
  os << '\n';
}

std::vector<double> read_vector(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) throw DataError(std::string("checkpoint: missing ") + what);
  std::vector<double> out;
  const char* p = line.c_str();
  char* end = nullptr;
  while (*p) {
    const double value = std::strtod(p, &end);
    if (end == p) break;
    out.push_back(value);
    p = end;
  }
  return out;
}

}  // namespace

void SvmClassifier::save(std::ostream& os) const {
  os << "argimpact_checkpoint v1\n";
  kv::write(os, "family", "svm");
  kv::write(os, "c", model_.c);
  kv::write(os, "gamma", model_.gamma);
  kv::write(os, "tfidf_terms", static_cast<long long>(tfidf_.terms.size()));
  kv::write(os, "tfidf_corpus_size", static_cast<long long>(tfidf_.fit_corpus_size));
  for (std::size_t i = 0; i < tfidf_.terms.size(); ++i) {
    os << "term\t" << text::escape_field(tfidf_.terms[i]) << '\t'
       << text::format_double(tfidf_.idf[i]) << '\n';
  }
  os << "scaler_means\n";
  write_vector(os, scaler_.means);
  os << "scaler_stds\n";
  write_vector(os, scaler_.stds);
  os << "lexicons " << lexicons_.size() << '\n';
  for (const auto& lex : lexicons_) {
    os << "lexicon\t" << text::escape_field(lex.name) << '\t' << lex.words.size() << '\n';
    for (const auto& w : lex.words) os << text::escape_field(w) << '\n';
  }
  os << "machines " << model_.machines.size() << '\n';
  for (const auto& m : model_.machines) {
    os << "machine " << m.support_vectors.size() << ' '
       << text::format_double(m.bias) << ' ' << text::format_double(m.gamma) << ' '
       << text::format_double(m.c) << '\n';
    for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
      os << m.labels[i] << ' ' << text::format_double(m.alpha[i]) << '\n';
      write_vector(os, m.support_vectors[i]);
    }
  }
}

std::unique_ptr<SvmClassifier> SvmClassifier::load(std::istream& is) {
  std::string line;
  features::TfIdfModel tfidf;
  features::StandardScaler scaler;
  std::vector<features::Lexicon> lexicons;
  SvmModel model;

  std::size_t n_terms = 0;
  while (std::getline(is, line)) {
    const auto fields = text::split_tabs(line);
    if (fields[0] == "c") model.c = std::stod(std::string(fields[1]));
    else if (fields[0] == "gamma") model.gamma = std::stod(std::string(fields[1]));
    else if (fields[0] == "tfidf_corpus_size") tfidf.fit_corpus_size = std::stoull(std::string(fields[1]));
    else if (fields[0] == "tfidf_terms") n_terms = std::stoull(std::string(fields[1]));
    else if (fields[0] == "term") {
      const std::string term = text::unescape_field(fields[1]);
      tfidf.vocabulary.emplace(term, tfidf.terms.size());
      tfidf.terms.push_back(term);
      tfidf.idf.push_back(std::stod(std::string(fields[2])));
    } else if (fields[0] == "scaler_means") {
      scaler.means = read_vector(is, "scaler means");
    } else if (fields[0] == "scaler_stds") {
      scaler.stds = read_vector(is, "scaler stds");
    } else if (fields[0] == "lexicon") {
      const std::string name = text::unescape_field(fields[1]);
      const std::size_t count = std::stoull(std::string(fields[2]));
      std::vector<std::string> words;
      words.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        std::string w;
        if (!std::getline(is, w)) throw DataError("checkpoint: truncated lexicon");
        words.push_back(text::unescape_field(w));
      }
      lexicons.push_back(features::make_lexicon(name, std::move(words)));
    } else if (fields[0].rfind("machine ", 0) == 0) {
      std::istringstream hs{std::string(fields[0])};
      std::string tag;
      std::size_t n_sv = 0;
      BinarySvm m;
      hs >> tag >> n_sv >> m.bias >> m.gamma >> m.c;
      for (std::size_t i = 0; i < n_sv; ++i) {
        std::string coeff_line;
        if (!std::getline(is, coeff_line)) throw DataError("checkpoint: truncated machine");
        std::istringstream cs(coeff_line);
        int label = 0;
        double alpha = 0.0;
        cs >> label >> alpha;
        m.labels.push_back(label);
        m.alpha.push_back(alpha);
        m.support_vectors.push_back(read_vector(is, "support vector"));
      }
      model.machines.push_back(std::move(m));
    }
  }
  if (tfidf.terms.size() != n_terms) {
    throw DataError("checkpoint: tf-idf term count mismatch");
  }
  return std::unique_ptr<SvmClassifier>(new SvmClassifier(
      std::move(tfidf), std::move(scaler), std::move(lexicons), std::move(model)));
}

}  // namespace argimpact::models
