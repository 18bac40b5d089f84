#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace argimpact::corpus {

/// Five-category impact vote scale, canonical order fixed (index 0..4).
enum class ImpactClass5 : int {
  NoImpact = 0,
  LowImpact = 1,
  MediumImpact = 2,
  HighImpact = 3,
  VeryHighImpact = 4,
};

/// Three-category scale used for prediction: {no, low} -> NotImpactful,
/// medium -> MediumImpact, {high, very high} -> Impactful.
enum class ImpactClass3 : int {
  NotImpactful = 0,
  MediumImpact = 1,
  Impactful = 2,
};

inline constexpr int kNumClasses5 = 5;
inline constexpr int kNumClasses3 = 3;

ImpactClass3 to_three_class(ImpactClass5 c);

const char* class5_name(ImpactClass5 c);
const char* class3_name(ImpactClass3 c);
std::optional<ImpactClass3> class3_from_name(std::string_view name);

enum class Scheme { FiveClass, ThreeClass };

/// Raw per-class vote counts for one claim.
struct VoteRecord {
  std::array<long long, kNumClasses5> counts{};

  long long total() const {
    long long t = 0;
    for (long long c : counts) t += c;
    return t;
  }
  /// Counts merged down to the 3-class scheme.
  std::array<long long, kNumClasses3> merged() const {
    return {counts[0] + counts[1], counts[2], counts[3] + counts[4]};
  }
};

enum class Stance { Thesis, Support, Oppose };

const char* stance_name(Stance s);

struct ClaimNode {
  std::string id;                       // unique within its tree
  std::optional<std::string> parent_id; // absent iff thesis
  Stance stance = Stance::Thesis;
  std::string text;
  VoteRecord votes;
};

/// Rooted stance-labeled claim tree. Nodes keep input order; `index` maps
/// claim id to position in `nodes`. Immutable after parse/validate.
struct ArgumentTree {
  std::string topic;
  std::vector<ClaimNode> nodes;
  std::unordered_map<std::string, std::size_t> index;

  const ClaimNode* find(const std::string& id) const {
    auto it = index.find(id);
    return it == index.end() ? nullptr : &nodes[it->second];
  }
  const ClaimNode& thesis() const;
};

/// Ordered ancestors of a claim: thesis first, direct parent last.
/// Holds copies so it stays valid independently of the source tree.
struct ContextPath {
  std::vector<ClaimNode> claims;

  std::size_t length() const { return claims.size(); }
  const ClaimNode& thesis() const { return claims.front(); }
  const ClaimNode& parent() const { return claims.back(); }
};

/// A prediction target: claim that survived filtering, with its derived
/// 3-class label, agreement score and discourse context.
struct LabeledClaim {
  std::string topic;
  ClaimNode claim;
  ImpactClass3 label3 = ImpactClass3::NotImpactful;
  double agreement = 0.0;  // percent, under the filtering scheme
  ContextPath context;
};

// ---------------------------------------------------------------------------
// Parsing and serialization.
//
// Corpus file: UTF-8, one claim per line, tab-separated fields
//   topic  claim_id  parent_id  stance  text  n0 n1 n2 n3 n4
// with parent_id empty for the thesis, stance in {thesis,support,oppose},
// topic/text backslash-escaped, and vote counts in canonical class order.
// Consecutive lines with the same topic form one tree block; record order
// inside a block does not matter. `#` lines and blank lines are skipped.
// The full grammar lives in docs/corpus_format.md.
// ---------------------------------------------------------------------------

std::vector<ArgumentTree> parse_corpus(std::istream& in);
std::vector<ArgumentTree> load_corpus(const std::string& path);
void write_corpus(const std::vector<ArgumentTree>& trees, std::ostream& out);

// ---------------------------------------------------------------------------
// Label derivation.
// ---------------------------------------------------------------------------

/// Percentage of votes matching the majority vote under the scheme:
/// 100 * max_i c_i / sum_i c_i, in (0,100]. Throws DataError on zero votes.
double agreement_score(const VoteRecord& votes, Scheme scheme);

/// Majority class; ties break toward the lowest canonical class index.
ImpactClass5 majority_label5(const VoteRecord& votes);
ImpactClass3 majority_label3(const VoteRecord& votes);

/// Ancestor path for a non-thesis claim. Throws DataError on unknown ids
/// and when the thesis itself is supplied.
ContextPath context_path(const ArgumentTree& tree, const std::string& claim_id);

/// Retains non-thesis claims with votes.total >= min_votes and
/// agreement strictly greater than min_agreement (percent).
std::vector<LabeledClaim> filter_claims(const std::vector<ArgumentTree>& trees,
                                        long long min_votes,
                                        double min_agreement, Scheme scheme);

// ---------------------------------------------------------------------------
// Corpus statistics.
// ---------------------------------------------------------------------------

struct StatsFilters {
  long long histogram_min_votes = 3;   // vote-count histogram lower bound
  long long detail_min_votes = 5;      // agreement + context-length tables
  double context_min_agreement = 60.0; // strict >
  Scheme context_scheme = Scheme::ThreeClass;
};

struct StatsReport {
  StatsFilters filters;
  long long total_trees = 0;
  long long total_claims = 0;
  // Claims per vote-count range [3,5) [5,10) [10,15) [15,20) [20,25) [25,50) [50,inf).
  std::array<long long, 7> claims_by_vote_range{};
  long long claims_with_histogram_min_votes = 0;
  // Votes per five-class label over all claims.
  std::array<long long, kNumClasses5> votes_per_class{};
  long long total_votes = 0;
  // Claims (>= detail_min_votes) above agreement thresholds 50/60/70/80.
  std::array<long long, 4> above_agreement_3class{};
  std::array<long long, 4> above_agreement_5class{};
  // Context lengths of filtered claims, bins {1} {2} {3} [4,5] (5,10] >10.
  std::array<long long, 6> context_length_hist{};
  long long filtered_claims = 0;
};

StatsReport corpus_stats(const std::vector<ArgumentTree>& trees,
                         const StatsFilters& filters = {});

enum class ReportFormat { Text, Kv };

std::string render_stats(const StatsReport& report, ReportFormat format);

// ---------------------------------------------------------------------------
// Splitting.
// ---------------------------------------------------------------------------

struct Splits {
  std::vector<LabeledClaim> train;
  std::vector<LabeledClaim> validation;
  std::vector<LabeledClaim> test;
};

/// Deterministic stratified split. Global sizes are floor-rounded from the
/// ratios with the remainder assigned to train; per-label quotas follow
/// largest remainders. Requires ratios summing to 1 (1e-9) and >= 3 claims.
Splits split(const std::vector<LabeledClaim>& claims,
             const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace argimpact::corpus
