#include "argimpact/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "argimpact/error.hpp"
#include "argimpact/kv.hpp"
#include "argimpact/rng.hpp"
#include "argimpact/text.hpp"

namespace argimpact::corpus {

ImpactClass3 to_three_class(ImpactClass5 c) {
  switch (c) {
    case ImpactClass5::NoImpact:
    case ImpactClass5::LowImpact: return ImpactClass3::NotImpactful;
    case ImpactClass5::MediumImpact: return ImpactClass3::MediumImpact;
    case ImpactClass5::HighImpact:
    case ImpactClass5::VeryHighImpact: return ImpactClass3::Impactful;
  }
  return ImpactClass3::NotImpactful;
}

const char* class5_name(ImpactClass5 c) {
  switch (c) {
    case ImpactClass5::NoImpact: return "no_impact";
    case ImpactClass5::LowImpact: return "low_impact";
    case ImpactClass5::MediumImpact: return "medium_impact";
    case ImpactClass5::HighImpact: return "high_impact";
    case ImpactClass5::VeryHighImpact: return "very_high_impact";
  }
  return "?";
}

const char* class3_name(ImpactClass3 c) {
  switch (c) {
    case ImpactClass3::NotImpactful: return "not_impactful";
    case ImpactClass3::MediumImpact: return "medium_impact";
    case ImpactClass3::Impactful: return "impactful";
  }
  return "?";
}

std::optional<ImpactClass3> class3_from_name(std::string_view name) {
  if (name == "not_impactful") return ImpactClass3::NotImpactful;
  if (name == "medium_impact") return ImpactClass3::MediumImpact;
  if (name == "impactful") return ImpactClass3::Impactful;
  return std::nullopt;
}

const char* stance_name(Stance s) {
  switch (s) {
    case Stance::Thesis: return "thesis";
    case Stance::Support: return "support";
    case Stance::Oppose: return "oppose";
  }
  return "?";
}

const ClaimNode& ArgumentTree::thesis() const {
  for (const ClaimNode& n : nodes) {
    if (!n.parent_id) return n;
  }
  throw DataError("tree '" + topic + "' has no thesis");
}

namespace {

Stance parse_stance(std::string_view s, std::size_t lineno) {
  if (s == "thesis") return Stance::Thesis;
  if (s == "support") return Stance::Support;
  if (s == "oppose") return Stance::Oppose;
  throw DataError("line " + std::to_string(lineno) + ": unknown stance '" +
                  std::string(s) + "'");
}

long long parse_count(std::string_view s, std::size_t lineno) {
  if (s.empty()) {
    throw DataError("line " + std::to_string(lineno) + ": empty vote count");
  }
  long long value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw DataError("line " + std::to_string(lineno) + ": bad vote count '" +
                      std::string(s) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

void validate_tree(ArgumentTree& tree) {
  const std::string where = "tree '" + tree.topic + "'";
  std::size_t thesis_count = 0;
  for (const ClaimNode& n : tree.nodes) {
    if (!n.parent_id) ++thesis_count;
    if (n.parent_id.has_value() != (n.stance != Stance::Thesis)) {
      throw DataError(where + ", claim '" + n.id +
                      "': stance must be thesis iff parent_id is empty");
    }
    if (text::trim(n.text).empty()) {
      throw DataError(where + ", claim '" + n.id + "': empty text");
    }
    if (n.parent_id) {
      if (*n.parent_id == n.id) {
        throw DataError(where + ", claim '" + n.id + "': cycle detected (self parent)");
      }
      if (!tree.index.count(*n.parent_id)) {
        throw DataError(where + ", claim '" + n.id + "': dangling parent_id '" +
                        *n.parent_id + "'");
      }
    }
  }
  if (thesis_count == 0) throw DataError(where + ": zero thesis nodes");
  if (thesis_count > 1) throw DataError(where + ": multiple thesis nodes");

  // Reachability sweep from the thesis; anything left over sits on a cycle.
  std::vector<std::vector<std::size_t>> children(tree.nodes.size());
  std::size_t root = 0;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const ClaimNode& n = tree.nodes[i];
    if (n.parent_id) {
      children[tree.index.at(*n.parent_id)].push_back(i);
    } else {
      root = i;
    }
  }
  std::vector<bool> seen(tree.nodes.size(), false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    ++reached;
    for (std::size_t child : children[at]) {
      if (!seen[child]) {
        seen[child] = true;
        queue.push_back(child);
      }
    }
  }
  if (reached != tree.nodes.size()) {
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (!seen[i]) {
        throw DataError(where + ", claim '" + tree.nodes[i].id +
                        "': cycle detected (unreachable from thesis)");
      }
    }
  }
}

}  // namespace

std::vector<ArgumentTree> parse_corpus(std::istream& in) {
  std::vector<ArgumentTree> trees;
  ArgumentTree current;
  bool open = false;

  auto flush = [&] {
    if (!open) return;
    validate_tree(current);
    trees.push_back(std::move(current));
    current = ArgumentTree{};
    open = false;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const auto fields = text::split_tabs(line);
    if (fields.size() != 10) {
      throw DataError("line " + std::to_string(lineno) + ": expected 10 fields, got " +
                      std::to_string(fields.size()));
    }

    ClaimNode node;
    const std::string topic = text::unescape_field(fields[0]);
    node.id = std::string(fields[1]);
    if (node.id.empty()) {
      throw DataError("line " + std::to_string(lineno) + ": empty claim id");
    }
    if (!fields[2].empty()) node.parent_id = std::string(fields[2]);
    node.stance = parse_stance(fields[3], lineno);
    node.text = text::unescape_field(fields[4]);
    for (int c = 0; c < kNumClasses5; ++c) {
      node.votes.counts[c] = parse_count(fields[5 + c], lineno);
    }

    if (!open || topic != current.topic) {
      flush();
      current.topic = topic;
      open = true;
    }
    if (current.index.count(node.id)) {
      throw DataError("line " + std::to_string(lineno) + ": duplicate id '" +
                      node.id + "' in tree '" + topic + "'");
    }
    current.index.emplace(node.id, current.nodes.size());
    current.nodes.push_back(std::move(node));
  }
  flush();
  return trees;
}

std::vector<ArgumentTree> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  return parse_corpus(in);
}

void write_corpus(const std::vector<ArgumentTree>& trees, std::ostream& out) {
  for (const ArgumentTree& tree : trees) {
    for (const ClaimNode& n : tree.nodes) {
      out << text::escape_field(tree.topic) << '\t' << n.id << '\t'
          << (n.parent_id ? *n.parent_id : "") << '\t' << stance_name(n.stance)
          << '\t' << text::escape_field(n.text);
      for (long long c : n.votes.counts) out << '\t' << c;
      out << '\n';
    }
  }
}

double agreement_score(const VoteRecord& votes, Scheme scheme) {
  const long long total = votes.total();
  if (total < 1) throw DataError("agreement_score: zero total votes");
  long long max_count = 0;
  if (scheme == Scheme::FiveClass) {
    for (long long c : votes.counts) max_count = std::max(max_count, c);
  } else {
    for (long long c : votes.merged()) max_count = std::max(max_count, c);
  }
  return 100.0 * static_cast<double>(max_count) / static_cast<double>(total);
}

ImpactClass5 majority_label5(const VoteRecord& votes) {
  if (votes.total() < 1) throw DataError("majority_label: zero total votes");
  int best = 0;
  for (int i = 1; i < kNumClasses5; ++i) {
    if (votes.counts[i] > votes.counts[best]) best = i;  // ties keep lowest index
  }
  return static_cast<ImpactClass5>(best);
}

ImpactClass3 majority_label3(const VoteRecord& votes) {
  if (votes.total() < 1) throw DataError("majority_label: zero total votes");
  const auto merged = votes.merged();
  int best = 0;
  for (int i = 1; i < kNumClasses3; ++i) {
    if (merged[i] > merged[best]) best = i;
  }
  return static_cast<ImpactClass3>(best);
}

ContextPath context_path(const ArgumentTree& tree, const std::string& claim_id) {
  const ClaimNode* node = tree.find(claim_id);
  if (!node) {
    throw DataError("context_path: unknown claim id '" + claim_id + "'");
  }
  if (!node->parent_id) {
    throw DataError("context_path: claim '" + claim_id +
                    "' is the thesis and has no context");
  }
  ContextPath path;
  const ClaimNode* at = node;
  while (at->parent_id) {
    at = tree.find(*at->parent_id);
    path.claims.push_back(*at);
  }
  std::reverse(path.claims.begin(), path.claims.end());
  return path;
}

std::vector<LabeledClaim> filter_claims(const std::vector<ArgumentTree>& trees,
                                        long long min_votes,
                                        double min_agreement, Scheme scheme) {
  std::vector<LabeledClaim> out;
  for (const ArgumentTree& tree : trees) {
    for (const ClaimNode& node : tree.nodes) {
      if (!node.parent_id) continue;  // thesis nodes are never targets
      if (node.votes.total() < min_votes) continue;
      const double agreement = agreement_score(node.votes, scheme);
      if (!(agreement > min_agreement)) continue;  // strict >
      LabeledClaim lc;
      lc.topic = tree.topic;
      lc.claim = node;
      lc.label3 = majority_label3(node.votes);
      lc.agreement = agreement;
      lc.context = context_path(tree, node.id);
      out.push_back(std::move(lc));
    }
  }
  return out;
}

namespace {

int vote_range_bin(long long votes) {
  if (votes < 3) return -1;
  if (votes < 5) return 0;
  if (votes < 10) return 1;
  if (votes < 15) return 2;
  if (votes < 20) return 3;
  if (votes < 25) return 4;
  if (votes < 50) return 5;
  return 6;
}

int context_length_bin(std::size_t len) {
  if (len == 1) return 0;
  if (len == 2) return 1;
  if (len == 3) return 2;
  if (len <= 5) return 3;
  if (len <= 10) return 4;
  return 5;
}

}  // namespace

StatsReport corpus_stats(const std::vector<ArgumentTree>& trees,
                         const StatsFilters& filters) {
  static const double kThresholds[4] = {50.0, 60.0, 70.0, 80.0};
  StatsReport report;
  report.filters = filters;
  report.total_trees = static_cast<long long>(trees.size());

  for (const ArgumentTree& tree : trees) {
    for (const ClaimNode& node : tree.nodes) {
      ++report.total_claims;
      const long long total = node.votes.total();
      report.total_votes += total;
      for (int c = 0; c < kNumClasses5; ++c) {
        report.votes_per_class[c] += node.votes.counts[c];
      }
      const int bin = vote_range_bin(total);
      if (bin >= 0) ++report.claims_by_vote_range[bin];
      if (total >= filters.histogram_min_votes) {
        ++report.claims_with_histogram_min_votes;
      }
      if (total >= filters.detail_min_votes) {
        const double a3 = agreement_score(node.votes, Scheme::ThreeClass);
        const double a5 = agreement_score(node.votes, Scheme::FiveClass);
        for (int t = 0; t < 4; ++t) {
          if (a3 > kThresholds[t]) ++report.above_agreement_3class[t];
          if (a5 > kThresholds[t]) ++report.above_agreement_5class[t];
        }
      }
    }
  }

  const auto filtered =
      filter_claims(trees, filters.detail_min_votes, filters.context_min_agreement,
                    filters.context_scheme);
  report.filtered_claims = static_cast<long long>(filtered.size());
  for (const LabeledClaim& lc : filtered) {
    ++report.context_length_hist[context_length_bin(lc.context.length())];
  }
  return report;
}

namespace {

void render_stats_text(const StatsReport& r, std::ostream& os) {
  static const char* kVoteRanges[7] = {"[3,5)",   "[5,10)",  "[10,15)", "[15,20)",
                                       "[20,25)", "[25,50)", "[50,inf)"};
  static const char* kContextBins[6] = {"1", "2", "3", "[4,5]", "(5,10]", ">10"};

  os << "Corpus summary\n";
  os << "  trees:  " << r.total_trees << "\n";
  os << "  claims: " << r.total_claims << "\n";
  os << "  claims with >= " << r.filters.histogram_min_votes
     << " votes: " << r.claims_with_histogram_min_votes << "\n\n";

  os << "Claims by vote count\n";
  for (int i = 0; i < 7; ++i) {
    os << "  " << kVoteRanges[i];
    for (std::size_t pad = std::string(kVoteRanges[i]).size(); pad < 10; ++pad) os << ' ';
    os << r.claims_by_vote_range[i] << "\n";
  }
  os << "\nVotes by impact label (all claims)\n";
  for (int c = 0; c < kNumClasses5; ++c) {
    const std::string name = class5_name(static_cast<ImpactClass5>(c));
    os << "  " << name;
    for (std::size_t pad = name.size(); pad < 18; ++pad) os << ' ';
    os << r.votes_per_class[c] << "\n";
  }
  os << "  total             " << r.total_votes << "\n";

  os << "\nClaims above agreement threshold (>= " << r.filters.detail_min_votes
     << " votes)\n";
  os << "  threshold   3-class   5-class\n";
  static const char* kThreshNames[4] = {">50%", ">60%", ">70%", ">80%"};
  for (int t = 0; t < 4; ++t) {
    os << "  " << kThreshNames[t];
    for (std::size_t pad = std::string(kThreshNames[t]).size(); pad < 12; ++pad) os << ' ';
    std::string c3 = std::to_string(r.above_agreement_3class[t]);
    os << c3;
    for (std::size_t pad = c3.size(); pad < 10; ++pad) os << ' ';
    os << r.above_agreement_5class[t] << "\n";
  }

  os << "\nFiltered claims (>= " << r.filters.detail_min_votes << " votes, > "
     << text::format_fixed2(r.filters.context_min_agreement) << "% agreement, "
     << (r.filters.context_scheme == Scheme::ThreeClass ? "3-class" : "5-class")
     << "): " << r.filtered_claims << "\n";
  os << "Context length of filtered claims\n";
  for (int i = 0; i < 6; ++i) {
    os << "  " << kContextBins[i];
    for (std::size_t pad = std::string(kContextBins[i]).size(); pad < 10; ++pad) os << ' ';
    os << r.context_length_hist[i] << "\n";
  }
}

void render_stats_kv(const StatsReport& r, std::ostream& os) {
  static const char* kVoteKeys[7] = {"3_5",   "5_10",  "10_15", "15_20",
                                     "20_25", "25_50", "50_inf"};
  static const char* kContextKeys[6] = {"1", "2", "3", "4_5", "6_10", "gt10"};
  static const int kThresholds[4] = {50, 60, 70, 80};

  kv::write(os, "total_trees", r.total_trees);
  kv::write(os, "total_claims", r.total_claims);
  kv::write(os, "histogram_min_votes", r.filters.histogram_min_votes);
  kv::write(os, "claims_with_histogram_min_votes", r.claims_with_histogram_min_votes);
  for (int i = 0; i < 7; ++i) {
    kv::write(os, std::string("claims_votes_") + kVoteKeys[i], r.claims_by_vote_range[i]);
  }
  for (int c = 0; c < kNumClasses5; ++c) {
    kv::write(os, std::string("votes_") + class5_name(static_cast<ImpactClass5>(c)),
              r.votes_per_class[c]);
  }
  kv::write(os, "total_votes", r.total_votes);
  kv::write(os, "detail_min_votes", r.filters.detail_min_votes);
  for (int t = 0; t < 4; ++t) {
    kv::write(os, "claims_agreement_gt" + std::to_string(kThresholds[t]) + "_3class",
              r.above_agreement_3class[t]);
    kv::write(os, "claims_agreement_gt" + std::to_string(kThresholds[t]) + "_5class",
              r.above_agreement_5class[t]);
  }
  kv::write(os, "filtered_claims", r.filtered_claims);
  for (int i = 0; i < 6; ++i) {
    kv::write(os, std::string("context_length_") + kContextKeys[i],
              r.context_length_hist[i]);
  }
}

}  // namespace

std::string render_stats(const StatsReport& report, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::Text) {
    render_stats_text(report, os);
  } else {
    render_stats_kv(report, os);
  }
  return os.str();
}

Splits split(const std::vector<LabeledClaim>& claims,
             const std::array<double, 3>& ratios, std::uint64_t seed) {
  const double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw DataError("split: ratios must sum to 1, got " + text::format_double(sum));
  }
  const std::size_t n = claims.size();
  if (n < 3) throw DataError("split: need at least 3 claims");

  const std::size_t n_val = static_cast<std::size_t>(ratios[1] * double(n));
  const std::size_t n_test = static_cast<std::size_t>(ratios[2] * double(n));

  // Group indices by 3-class label, shuffled with one seeded stream.
  std::array<std::vector<std::size_t>, kNumClasses3> groups;
  for (std::size_t i = 0; i < n; ++i) {
    groups[static_cast<int>(claims[i].label3)].push_back(i);
  }
  Rng rng(seed);
  for (auto& g : groups) rng.shuffle(g);

  // Largest-remainder quota allocation per label, first for validation and
  // then for test, never exceeding each group's size.
  auto allocate = [&](double ratio, std::size_t want,
                      const std::array<std::size_t, kNumClasses3>& used)
      -> std::array<std::size_t, kNumClasses3> {
    std::array<std::size_t, kNumClasses3> quota{};
    std::array<double, kNumClasses3> remainder{};
    std::size_t assigned = 0;
    for (int g = 0; g < kNumClasses3; ++g) {
      const double exact = ratio * double(groups[g].size());
      quota[g] = std::min(static_cast<std::size_t>(exact), groups[g].size() - used[g]);
      remainder[g] = exact - double(quota[g]);
      assigned += quota[g];
    }
    while (assigned < want) {
      int best = -1;
      for (int g = 0; g < kNumClasses3; ++g) {
        if (quota[g] + used[g] >= groups[g].size()) continue;
        if (best < 0 || remainder[g] > remainder[best]) best = g;
      }
      if (best < 0) break;  // cannot happen for feasible ratios
      ++quota[best];
      remainder[best] -= 1.0;
      ++assigned;
    }
    return quota;
  };

  const std::array<std::size_t, kNumClasses3> none{};
  const auto val_quota = allocate(ratios[1], n_val, none);
  const auto test_quota = allocate(ratios[2], n_test, val_quota);

  Splits out;
  for (int g = 0; g < kNumClasses3; ++g) {
    std::size_t at = 0;
    for (std::size_t k = 0; k < val_quota[g]; ++k) {
      out.validation.push_back(claims[groups[g][at++]]);
    }
    for (std::size_t k = 0; k < test_quota[g]; ++k) {
      out.test.push_back(claims[groups[g][at++]]);
    }
    for (; at < groups[g].size(); ++at) {
      out.train.push_back(claims[groups[g][at]]);
    }
  }
  return out;
}

}  // namespace argimpact::corpus
