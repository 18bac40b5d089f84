#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "argimpact/corpus.hpp"

namespace argimpact::synth {

/// Synthetic corpus spec. Labels are planted so that the discourse context
/// carries the signal: a share `signal` of the claims is context-ruled (its
/// label is the marker class of an ancestor, invisible from the claim text),
/// the rest is claim-ruled (label readable off the claim's own marker), and
/// `noise` of all labels is replaced by a uniform random class.
struct SynthSpec {
  std::size_t num_trees = 200;
  std::size_t depth_min = 4;    // tree levels including the thesis
  std::size_t depth_max = 4;    // uniform per-tree depth in [min, max]
  std::size_t branching = 2;    // children per internal node
  std::size_t vocab_size = 40;  // >= 20; 8 reserved for markers/mode words
  double signal = 0.9;          // s in [0,1]: share of context-ruled claims
  double noise = 0.05;          // eta: label replacement rate
  std::size_t rule_depth = 1;   // ancestor consulted (1 = parent)
  double duplicate_rate = 0.0;  // chance a claim reuses an earlier claim text
  std::uint64_t seed = 1;
};

/// Bayes-optimal rates implied by the planting rule, in percent, plus the
/// rule parameters for downstream assertions.
struct OracleInfo {
  double bayes_context_pct = 0.0;     // predictor seeing claim + context
  double bayes_claim_only_pct = 0.0;  // predictor seeing the claim text only
  double signal = 0.0;
  double noise = 0.0;
  std::size_t rule_depth = 1;
  std::size_t marker_count = 0;
  std::uint64_t seed = 0;
};

struct Generated {
  std::vector<corpus::ArgumentTree> trees;
  OracleInfo oracle;
};

/// Deterministic for a fixed spec; the emitted corpus file is byte-identical
/// across runs. Throws DataError on infeasible specs (signal + noise > 1,
/// depth < 2, vocabulary < 20).
Generated generate(const SynthSpec& spec);

void write_oracle(const OracleInfo& oracle, std::ostream& os);
OracleInfo read_oracle(std::istream& is);

/// Pairs of identical claim texts under different parents that carry
/// different majority labels. Empty when duplication was disabled.
struct DuplicatePair {
  std::string topic_a, id_a;
  std::string topic_b, id_b;
  std::string text;
  corpus::ImpactClass3 label_a;
  corpus::ImpactClass3 label_b;
};

std::vector<DuplicatePair> duplicate_claim_probe(
    const std::vector<corpus::ArgumentTree>& trees);

}  // namespace argimpact::synth
