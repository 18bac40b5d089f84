#include "argimpact/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "argimpact/error.hpp"
#include "argimpact/kv.hpp"
#include "argimpact/rng.hpp"

namespace argimpact::synth {

namespace {

constexpr std::size_t kMarkers = 6;  // divisible by 3 keeps classes balanced

std::string marker_token(std::size_t m) { return "m" + std::to_string(m); }

struct PendingClaim {
  std::size_t marker = 0;  // visible in the text
  bool context_mode = false;
  std::string tokens;  // full claim text
};

/// Vote counts consistent with the observed 3-class label: the majority
/// five-class category gets ceil(0.61 * n) of n in [5, 15] votes, which keeps
/// the claim above the (>= 5 votes, > 60% agreement) filter.
corpus::VoteRecord sample_votes(corpus::ImpactClass3 label, Rng& rng) {
  const long long n = 5 + static_cast<long long>(rng.uniform_index(11));
  const long long majority = (61 * n + 99) / 100;  // ceil(0.61 n)

  int category = 2;  // medium
  if (label == corpus::ImpactClass3::NotImpactful) {
    category = rng.uniform_index(2) == 0 ? 0 : 1;
  } else if (label == corpus::ImpactClass3::Impactful) {
    category = rng.uniform_index(2) == 0 ? 3 : 4;
  }

  corpus::VoteRecord votes;
  votes.counts[category] = majority;
  for (long long k = majority; k < n; ++k) {
    // Spread the rest anywhere else; no other merged class can catch up.
    std::size_t other = rng.uniform_index(4);
    if (int(other) >= category) ++other;
    ++votes.counts[other];
  }
  return votes;
}

std::string make_text(std::size_t marker, bool context_mode, std::size_t fillers,
                      Rng& rng) {
  std::vector<std::string> tokens;
  tokens.push_back(context_mode ? "qc" : "qs");
  tokens.push_back(marker_token(marker));
  const std::size_t n_fillers = 3 + rng.uniform_index(4);
  for (std::size_t k = 0; k < n_fillers; ++k) {
    tokens.push_back("w" + std::to_string(rng.uniform_index(fillers)));
  }
  rng.shuffle(tokens);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

Generated generate(const SynthSpec& spec) {
  if (spec.signal + spec.noise > 1.0) {
    throw DataError("synth: infeasible spec (signal + noise > 1)");
  }
  if (spec.depth_min < 2 || spec.depth_max < spec.depth_min) {
    throw DataError("synth: depth must be >= 2 with min <= max");
  }
  if (spec.vocab_size < 20) throw DataError("synth: vocabulary must be >= 20");
  if (spec.rule_depth < 1) throw DataError("synth: rule_depth must be >= 1");
  if (spec.num_trees == 0 || spec.branching == 0) {
    throw DataError("synth: need trees and branching >= 1");
  }

  const std::size_t fillers = spec.vocab_size - 8;  // markers + mode words reserved
  Rng rng(spec.seed);

  Generated out;
  std::vector<PendingClaim> duplicate_pool;

  for (std::size_t t = 0; t < spec.num_trees; ++t) {
    corpus::ArgumentTree tree;
    {
      char topic[32];
      std::snprintf(topic, sizeof(topic), "topic-%05zu", t);
      tree.topic = topic;
    }
    const std::size_t depth =
        spec.depth_min + rng.uniform_index(spec.depth_max - spec.depth_min + 1);

    struct NodeInfo {
      std::size_t marker;
      std::vector<std::size_t> ancestor_markers;  // nearest first
    };
    std::vector<NodeInfo> info;

    // Thesis.
    {
      corpus::ClaimNode thesis;
      thesis.id = "t";
      thesis.stance = corpus::Stance::Thesis;
      const std::size_t marker = rng.uniform_index(kMarkers);
      thesis.text = make_text(marker, false, fillers, rng);
      thesis.votes = sample_votes(
          static_cast<corpus::ImpactClass3>(rng.uniform_index(3)), rng);
      tree.index.emplace(thesis.id, 0);
      tree.nodes.push_back(std::move(thesis));
      info.push_back({marker, {}});
    }

    std::size_t counter = 0;
    std::vector<std::size_t> frontier{0};
    for (std::size_t level = 1; level < depth; ++level) {
      std::vector<std::size_t> next;
      for (std::size_t parent_idx : frontier) {
        for (std::size_t b = 0; b < spec.branching; ++b) {
          PendingClaim pending;
          pending.context_mode = rng.uniform() < spec.signal;
          pending.marker = rng.uniform_index(kMarkers);
          pending.tokens = make_text(pending.marker, pending.context_mode, fillers, rng);

          const bool duplicate = spec.duplicate_rate > 0.0 &&
                                 !duplicate_pool.empty() &&
                                 rng.uniform() < spec.duplicate_rate;
          if (duplicate) {
            pending = duplicate_pool[rng.uniform_index(duplicate_pool.size())];
          }

          // Planted rule: context-ruled claims take the ancestor's marker
          // class, claim-ruled claims their own.
          NodeInfo node_info;
          node_info.marker = pending.marker;
          node_info.ancestor_markers.push_back(info[parent_idx].marker);
          for (std::size_t a : info[parent_idx].ancestor_markers) {
            node_info.ancestor_markers.push_back(a);
          }
          const std::size_t consult =
              std::min(spec.rule_depth, node_info.ancestor_markers.size());
          const std::size_t rule_marker =
              pending.context_mode ? node_info.ancestor_markers[consult - 1]
                                   : pending.marker;

          int label = int(rule_marker % 3);
          if (rng.uniform() < spec.noise) label = int(rng.uniform_index(3));

          corpus::ClaimNode node;
          node.id = "c" + std::to_string(++counter);
          node.parent_id = tree.nodes[parent_idx].id;
          node.stance = rng.uniform_index(2) == 0 ? corpus::Stance::Support
                                                  : corpus::Stance::Oppose;
          node.text = pending.tokens;
          node.votes = sample_votes(static_cast<corpus::ImpactClass3>(label), rng);

          if (spec.duplicate_rate > 0.0 && pending.context_mode && !duplicate) {
            duplicate_pool.push_back(pending);
          }

          tree.index.emplace(node.id, tree.nodes.size());
          next.push_back(tree.nodes.size());
          tree.nodes.push_back(std::move(node));
          info.push_back(std::move(node_info));
        }
      }
      frontier = std::move(next);
    }
    out.trees.push_back(std::move(tree));
  }

  // Bayes rates follow from the rule in closed form. A context-aware
  // predictor recovers the ruled label always, so only noise hurts it
  // (a uniform replacement still matches 1/3 of the time). A claim-only
  // predictor reads claim-ruled labels off the text but can do no better
  // than chance on context-ruled claims, whose rule marker is independent
  // of everything visible.
  const double s = spec.signal;
  const double eta = spec.noise;
  out.oracle.bayes_context_pct = 100.0 * (1.0 - 2.0 * eta / 3.0);
  out.oracle.bayes_claim_only_pct =
      100.0 * ((1.0 - s) * (1.0 - 2.0 * eta / 3.0) + s / 3.0);
  out.oracle.signal = s;
  out.oracle.noise = eta;
  out.oracle.rule_depth = spec.rule_depth;
  out.oracle.marker_count = kMarkers;
  out.oracle.seed = spec.seed;
  return out;
}

void write_oracle(const OracleInfo& oracle, std::ostream& os) {
  kv::write(os, "bayes_context_pct", oracle.bayes_context_pct);
  kv::write(os, "bayes_claim_only_pct", oracle.bayes_claim_only_pct);
  kv::write(os, "signal", oracle.signal);
  kv::write(os, "noise", oracle.noise);
  kv::write(os, "rule_depth", static_cast<long long>(oracle.rule_depth));
  kv::write(os, "marker_count", static_cast<long long>(oracle.marker_count));
  kv::write(os, "seed", static_cast<long long>(oracle.seed));
}

OracleInfo read_oracle(std::istream& is) {
  const auto records = kv::parse(is);
  OracleInfo oracle;
  oracle.bayes_context_pct = std::stod(kv::get(records, "bayes_context_pct"));
  oracle.bayes_claim_only_pct = std::stod(kv::get(records, "bayes_claim_only_pct"));
  oracle.signal = std::stod(kv::get(records, "signal"));
  oracle.noise = std::stod(kv::get(records, "noise"));
  oracle.rule_depth = std::stoull(kv::get(records, "rule_depth"));
  oracle.marker_count = std::stoull(kv::get(records, "marker_count"));
  oracle.seed = std::stoull(kv::get(records, "seed"));
  return oracle;
}

std::vector<DuplicatePair> duplicate_claim_probe(
    const std::vector<corpus::ArgumentTree>& trees) {
  struct Occurrence {
    const corpus::ArgumentTree* tree;
    const corpus::ClaimNode* node;
    corpus::ImpactClass3 label;
  };
  std::map<std::string, std::vector<Occurrence>> by_text;
  for (const auto& tree : trees) {
    for (const auto& node : tree.nodes) {
      if (!node.parent_id) continue;
      by_text[node.text].push_back({&tree, &node, corpus::majority_label3(node.votes)});
    }
  }

  std::vector<DuplicatePair> out;
  for (const auto& [text, occurrences] : by_text) {
    if (occurrences.size() < 2) continue;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
      for (std::size_t j = i + 1; j < occurrences.size(); ++j) {
        const auto& a = occurrences[i];
        const auto& b = occurrences[j];
        if (a.label == b.label) continue;
        const bool same_parent = a.tree == b.tree &&
                                 *a.node->parent_id == *b.node->parent_id;
        if (same_parent) continue;
        out.push_back({a.tree->topic, a.node->id, b.tree->topic, b.node->id, text,
                       a.label, b.label});
      }
    }
  }
  return out;
}

}  // namespace argimpact::synth
