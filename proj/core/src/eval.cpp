#include "argimpact/eval.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "argimpact/kv.hpp"
#include "argimpact/text.hpp"

namespace argimpact::eval {

PrfReport macro_prf(std::span<const corpus::ImpactClass3> golds,
                    std::span<const corpus::ImpactClass3> preds) {
  if (golds.size() != preds.size()) {
    throw std::invalid_argument("macro_prf: gold/pred length mismatch");
  }
  if (golds.empty()) throw std::invalid_argument("macro_prf: empty input");

  PrfReport report;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    report.confusion.add(golds[i], preds[i]);
  }

  long long correct = 0;
  for (int k = 0; k < 3; ++k) {
    long long tp = report.confusion.counts[k][k];
    long long fp = 0, fn = 0;
    for (int other = 0; other < 3; ++other) {
      if (other == k) continue;
      fp += report.confusion.counts[other][k];
      fn += report.confusion.counts[k][other];
    }
    correct += tp;
    ClassMetrics& m = report.per_class[k];
    m.precision = (tp + fp) > 0 ? 100.0 * double(tp) / double(tp + fp) : 0.0;
    m.recall = (tp + fn) > 0 ? 100.0 * double(tp) / double(tp + fn) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    report.macro_precision += m.precision / 3.0;
    report.macro_recall += m.recall / 3.0;
    report.macro_f1 += m.f1 / 3.0;
  }
  report.accuracy = 100.0 * double(correct) / double(golds.size());
  return report;
}

std::vector<ContextBucket> per_context_length(
    std::span<const corpus::ImpactClass3> golds,
    std::span<const corpus::ImpactClass3> preds,
    std::span<const std::size_t> context_lengths) {
  if (golds.size() != preds.size() || golds.size() != context_lengths.size()) {
    throw std::invalid_argument("per_context_length: length mismatch");
  }
  std::vector<ContextBucket> out;
  for (std::size_t bucket = 1; bucket <= 4; ++bucket) {
    std::vector<corpus::ImpactClass3> g, p;
    for (std::size_t i = 0; i < golds.size(); ++i) {
      if (context_lengths[i] == bucket) {
        g.push_back(golds[i]);
        p.push_back(preds[i]);
      }
    }
    if (g.empty()) continue;  // absent, not zero
    const PrfReport r = macro_prf(g, p);
    out.push_back({bucket, static_cast<long long>(g.size()), r.macro_f1,
                   r.macro_precision, r.macro_recall});
  }
  return out;
}

namespace {

// Continued fraction for the regularized incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double incbeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double mean_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / double(v.size());
}

double variance_of(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / double(v.size() - 1);
}

}  // namespace

double student_t_two_sided_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  const double x = df / (df + t * t);
  return incbeta(df / 2.0, 0.5, x);
}

WelchResult t_test_two_sided(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("t_test_two_sided: need >= 2 values per sample");
  }
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double va = variance_of(a, ma);
  const double vb = variance_of(b, mb);
  const double sa = va / double(a.size());
  const double sb = vb / double(b.size());

  WelchResult result;
  if (sa + sb == 0.0) {
    // Both samples constant. Equal means: no evidence of difference, p = 1;
    // different means: infinitely strong evidence, p = 0.
    result.t = 0.0;
    result.df = double(a.size() + b.size() - 2);
    result.p = (ma == mb) ? 1.0 : 0.0;
    return result;
  }
  result.t = (ma - mb) / std::sqrt(sa + sb);
  result.df = (sa + sb) * (sa + sb) /
              (sa * sa / double(a.size() - 1) + sb * sb / double(b.size() - 1));
  result.p = student_t_two_sided_p(result.t, result.df);
  return result;
}

EvalReport evaluate(const std::string& model_name,
                    std::span<const corpus::ImpactClass3> golds,
                    std::span<const corpus::ImpactClass3> preds,
                    std::span<const std::size_t> context_lengths) {
  EvalReport report;
  report.model_name = model_name;
  report.n = static_cast<long long>(golds.size());
  report.overall = macro_prf(golds, preds);
  if (!context_lengths.empty()) {
    report.buckets = per_context_length(golds, preds, context_lengths);
  }
  return report;
}

namespace {

void render_text(const EvalReport& r, std::ostream& os) {
  os << "Evaluation: " << r.model_name << " (n = " << r.n << ")\n\n";
  os << "                 Precision  Recall     F1\n";
  auto line = [&](const std::string& name, double p, double rec, double f1) {
    os << "  " << name;
    for (std::size_t pad = name.size(); pad < 15; ++pad) os << ' ';
    std::string ps = text::format_fixed2(p), rs = text::format_fixed2(rec);
    os << ps;
    for (std::size_t pad = ps.size(); pad < 11; ++pad) os << ' ';
    os << rs;
    for (std::size_t pad = rs.size(); pad < 11; ++pad) os << ' ';
    os << text::format_fixed2(f1) << "\n";
  };
  line("macro", r.overall.macro_precision, r.overall.macro_recall, r.overall.macro_f1);
  for (int k = 0; k < 3; ++k) {
    line(corpus::class3_name(static_cast<corpus::ImpactClass3>(k)),
         r.overall.per_class[k].precision, r.overall.per_class[k].recall,
         r.overall.per_class[k].f1);
  }
  os << "  accuracy       " << text::format_fixed2(r.overall.accuracy) << "\n";

  if (!r.buckets.empty()) {
    os << "\nBy context length\n";
    os << "  C_l   n       macro-F1\n";
    for (const auto& bucket : r.buckets) {
      std::string len = std::to_string(bucket.context_length);
      std::string n = std::to_string(bucket.n);
      os << "  " << len;
      for (std::size_t pad = len.size(); pad < 6; ++pad) os << ' ';
      os << n;
      for (std::size_t pad = n.size(); pad < 8; ++pad) os << ' ';
      os << text::format_fixed2(bucket.macro_f1) << "\n";
    }
  }
}

void render_kv(const EvalReport& r, std::ostream& os) {
  kv::write(os, "model", r.model_name);
  kv::write(os, "n", r.n);
  auto two = [](double v) { return text::format_fixed2(v); };
  kv::write(os, "macro_precision", two(r.overall.macro_precision));
  kv::write(os, "macro_recall", two(r.overall.macro_recall));
  kv::write(os, "macro_f1", two(r.overall.macro_f1));
  kv::write(os, "accuracy", two(r.overall.accuracy));
  for (int k = 0; k < 3; ++k) {
    const std::string name = corpus::class3_name(static_cast<corpus::ImpactClass3>(k));
    kv::write(os, name + "_precision", two(r.overall.per_class[k].precision));
    kv::write(os, name + "_recall", two(r.overall.per_class[k].recall));
    kv::write(os, name + "_f1", two(r.overall.per_class[k].f1));
  }
  for (const auto& bucket : r.buckets) {
    const std::string prefix = "context_length_" + std::to_string(bucket.context_length);
    kv::write(os, prefix + "_n", bucket.n);
    kv::write(os, prefix + "_macro_f1", two(bucket.macro_f1));
  }
}

}  // namespace

std::string render_report(const EvalReport& report, corpus::ReportFormat format) {
  std::ostringstream os;
  if (format == corpus::ReportFormat::Text) {
    render_text(report, os);
  } else if (format == corpus::ReportFormat::Kv) {
    render_kv(report, os);
  } else {
    throw std::invalid_argument("render_report: unknown format");
  }
  return os.str();
}

}  // namespace argimpact::eval
