#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "argimpact/corpus.hpp"
#include "argimpact/error.hpp"
#include "argimpact/rng.hpp"

using namespace argimpact;
using namespace argimpact::corpus;

namespace {

std::vector<ArgumentTree> parse_str(const std::string& s) {
  std::istringstream is(s);
  return parse_corpus(is);
}

VoteRecord votes(long long a, long long b, long long c, long long d, long long e) {
  VoteRecord v;
  v.counts = {a, b, c, d, e};
  return v;
}

std::vector<ArgumentTree> mini_corpus() {
  return load_corpus(std::string(ARGIMPACT_TEST_DATA_DIR) + "/mini_corpus.tsv");
}

// Straight-line chain: thesis -> c1 -> c2 -> ... -> c<depth>.
ArgumentTree chain_tree(int depth) {
  std::ostringstream os;
  os << "chain\tt\t\tthesis\troot claim\t0\t0\t5\t0\t0\n";
  std::string parent = "t";
  for (int i = 1; i <= depth; ++i) {
    const std::string id = "c" + std::to_string(i);
    os << "chain\t" << id << '\t' << parent << "\tsupport\tclaim " << i
       << "\t0\t0\t0\t5\t0\n";
    parent = id;
  }
  return parse_str(os.str())[0];
}

}  // namespace

TEST_CASE("parse: minimal well-formed tree") {
  const auto trees = parse_str(
      "topic\tt\t\tthesis\tthe thesis\t1\t0\t0\t0\t0\n"
      "topic\ta\tt\tsupport\tsupporting claim\t0\t2\t0\t0\t0\n"
      "topic\tb\tt\toppose\topposing claim\t0\t0\t3\t0\t0\n");
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].nodes.size() == 3);
  CHECK(trees[0].thesis().id == "t");
  CHECK(trees[0].find("a")->stance == Stance::Support);
  CHECK(trees[0].find("b")->votes.counts[2] == 3);
}

TEST_CASE("parse: order independent within a tree block") {
  const auto trees = parse_str(
      "topic\tb\ta\tsupport\tgrandchild\t0\t0\t3\t0\t0\n"
      "topic\ta\tt\tsupport\tchild\t0\t2\t0\t0\t0\n"
      "topic\tt\t\tthesis\troot\t1\t0\t0\t0\t0\n");
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].thesis().id == "t");
  CHECK(context_path(trees[0], "b").length() == 2);
}

TEST_CASE("parse: self-parent is a cycle error") {
  CHECK_THROWS_WITH_AS(
      parse_str("topic\ta\ta\tsupport\tclaim\t1\t0\t0\t0\t0\n"),
      doctest::Contains("cycle"), DataError);
}

TEST_CASE("parse: two-node parent cycle is detected") {
  CHECK_THROWS_WITH_AS(parse_str("topic\tt\t\tthesis\troot\t1\t0\t0\t0\t0\n"
                                 "topic\ta\tb\tsupport\tone\t1\t0\t0\t0\t0\n"
                                 "topic\tb\ta\tsupport\ttwo\t1\t0\t0\t0\t0\n"),
                       doctest::Contains("cycle"), DataError);
}

TEST_CASE("parse: multiple and zero theses") {
  CHECK_THROWS_WITH_AS(parse_str("topic\ta\t\tthesis\tone\t1\t0\t0\t0\t0\n"
                                 "topic\tb\t\tthesis\ttwo\t1\t0\t0\t0\t0\n"),
                       doctest::Contains("multiple thesis"), DataError);
  CHECK_THROWS_WITH_AS(parse_str("topic\ta\tb\tsupport\tone\t1\t0\t0\t0\t0\n"
                                 "topic\tb\ta\toppose\ttwo\t1\t0\t0\t0\t0\n"),
                       doctest::Contains("zero thesis"), DataError);
}

TEST_CASE("parse: duplicate id, dangling parent, malformed record") {
  CHECK_THROWS_WITH_AS(parse_str("topic\tt\t\tthesis\troot\t1\t0\t0\t0\t0\n"
                                 "topic\tt\tt\tsupport\tdup\t1\t0\t0\t0\t0\n"),
                       doctest::Contains("duplicate id"), DataError);
  CHECK_THROWS_WITH_AS(parse_str("topic\tt\t\tthesis\troot\t1\t0\t0\t0\t0\n"
                                 "topic\ta\tmissing\tsupport\tx\t1\t0\t0\t0\t0\n"),
                       doctest::Contains("dangling"), DataError);
  // Line numbers are reported for malformed records.
  CHECK_THROWS_WITH_AS(parse_str("topic\tt\t\tthesis\troot\t1\t0\t0\t0\t0\n"
                                 "too\tfew\tfields\n"),
                       doctest::Contains("line 2"), DataError);
  CHECK_THROWS_WITH_AS(parse_str("topic\tt\t\tthesis\troot\t1\t0\t0\tbad\t0\n"),
                       doctest::Contains("vote count"), DataError);
}

TEST_CASE("parse: stance consistency and empty text") {
  CHECK_THROWS_AS(parse_str("topic\tt\t\tsupport\troot\t1\t0\t0\t0\t0\n"), DataError);
  CHECK_THROWS_AS(parse_str("topic\tt\t\tthesis\troot\t1\t0\t0\t0\t0\n"
                            "topic\ta\tt\tthesis\tx\t1\t0\t0\t0\t0\n"),
                  DataError);
  CHECK_THROWS_WITH_AS(parse_str("topic\tt\t\tthesis\t   \t1\t0\t0\t0\t0\n"),
                       doctest::Contains("empty text"), DataError);
}

TEST_CASE("write_corpus round-trips the mini corpus") {
  const auto trees = mini_corpus();
  std::ostringstream os;
  write_corpus(trees, os);
  const auto reparsed = parse_str(os.str());
  REQUIRE(reparsed.size() == trees.size());
  for (std::size_t t = 0; t < trees.size(); ++t) {
    REQUIRE(reparsed[t].nodes.size() == trees[t].nodes.size());
    CHECK(reparsed[t].topic == trees[t].topic);
    for (std::size_t i = 0; i < trees[t].nodes.size(); ++i) {
      CHECK(reparsed[t].nodes[i].id == trees[t].nodes[i].id);
      CHECK(reparsed[t].nodes[i].text == trees[t].nodes[i].text);
      CHECK(reparsed[t].nodes[i].votes.counts == trees[t].nodes[i].votes.counts);
    }
  }
}

TEST_CASE("agreement_score: worked examples") {
  // 30 of 90 votes on the majority class.
  CHECK(agreement_score(votes(30, 20, 15, 15, 10), Scheme::FiveClass) ==
        doctest::Approx(33.3333333).epsilon(1e-6));
  CHECK(agreement_score(votes(0, 0, 0, 0, 7), Scheme::FiveClass) == 100.0);
  CHECK(agreement_score(votes(0, 0, 0, 0, 7), Scheme::ThreeClass) == 100.0);
  CHECK(agreement_score(votes(2, 1, 1, 1, 0), Scheme::FiveClass) == doctest::Approx(40.0));
  CHECK(agreement_score(votes(2, 1, 1, 1, 0), Scheme::ThreeClass) == doctest::Approx(60.0));
  CHECK_THROWS_AS(agreement_score(votes(0, 0, 0, 0, 0), Scheme::FiveClass), DataError);
}

TEST_CASE("majority labels and tie-breaking") {
  CHECK(majority_label5(votes(0, 0, 5, 0, 0)) == ImpactClass5::MediumImpact);
  // Tie between indices 0 and 3: lowest canonical index wins.
  CHECK(majority_label5(votes(3, 0, 0, 3, 0)) == ImpactClass5::NoImpact);
  // (1,2,0,2,2) merges to (3,0,4).
  CHECK(majority_label3(votes(1, 2, 0, 2, 2)) == ImpactClass3::Impactful);
  CHECK_THROWS_AS(majority_label3(votes(0, 0, 0, 0, 0)), DataError);
}

TEST_CASE("3-class mapping is the documented surjection") {
  CHECK(to_three_class(ImpactClass5::NoImpact) == ImpactClass3::NotImpactful);
  CHECK(to_three_class(ImpactClass5::LowImpact) == ImpactClass3::NotImpactful);
  CHECK(to_three_class(ImpactClass5::MediumImpact) == ImpactClass3::MediumImpact);
  CHECK(to_three_class(ImpactClass5::HighImpact) == ImpactClass3::Impactful);
  CHECK(to_three_class(ImpactClass5::VeryHighImpact) == ImpactClass3::Impactful);
}

TEST_CASE("merge consistency: 3-class agreement >= 5-class agreement") {
  Rng rng(20240117);
  for (int trial = 0; trial < 10000; ++trial) {
    VoteRecord v;
    long long total = 0;
    for (int c = 0; c < 5; ++c) {
      v.counts[c] = static_cast<long long>(rng.uniform_index(20));
      total += v.counts[c];
    }
    if (total == 0) v.counts[rng.uniform_index(5)] = 1;
    CHECK(agreement_score(v, Scheme::ThreeClass) >=
          agreement_score(v, Scheme::FiveClass) - 1e-12);
  }
}

TEST_CASE("context_path: two-level example shape and errors") {
  // Thesis with opposing child o1, which has supporting child s3.
  const auto trees = parse_str(
      "torture\tth\t\tthesis\tthe thesis claim\t1\t0\t0\t0\t0\n"
      "torture\to1\tth\toppose\tit is morally wrong\t0\t0\t0\t0\t9\n"
      "torture\ts3\to1\tsupport\tit is illegitimate\t5\t4\t0\t0\t0\n");
  const auto& tree = trees[0];

  const auto o1 = context_path(tree, "o1");
  CHECK(o1.length() == 1);
  CHECK(o1.thesis().id == "th");

  const auto s3 = context_path(tree, "s3");
  CHECK(s3.length() == 2);
  CHECK(s3.claims[0].id == "th");
  CHECK(s3.claims[1].id == "o1");
  CHECK(s3.parent().id == "o1");

  CHECK_THROWS_WITH_AS(context_path(tree, "nope"), doctest::Contains("unknown"),
                       DataError);
  CHECK_THROWS_WITH_AS(context_path(tree, "th"), doctest::Contains("thesis"),
                       DataError);
}

TEST_CASE("context_path: deep chain and the length recursion") {
  const auto tree = chain_tree(6);
  CHECK(context_path(tree, "c6").length() == 6);
  for (int i = 2; i <= 6; ++i) {
    const auto child = context_path(tree, "c" + std::to_string(i));
    const auto parent = context_path(tree, "c" + std::to_string(i - 1));
    CHECK(child.length() == parent.length() + 1);
  }
  CHECK(context_path(tree, "c1").length() == 1);
}

TEST_CASE("filter_claims: thresholds are boundaries, thesis excluded") {
  const auto trees = parse_str(
      "topic\tt\t\tthesis\troot\t0\t0\t0\t9\t0\n"
      "topic\tfour\tt\tsupport\tfour votes only\t0\t0\t0\t4\t0\n"
      "topic\tsixty\tt\tsupport\texactly sixty percent\t3\t0\t2\t0\t0\n"
      "topic\tkeep\tt\tsupport\tclearly kept\t0\t0\t0\t5\t0\n");
  const auto kept = filter_claims(trees, 5, 60.0, Scheme::ThreeClass);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].claim.id == "keep");
  CHECK(kept[0].label3 == ImpactClass3::Impactful);
  CHECK(kept[0].agreement == doctest::Approx(100.0));
  CHECK(kept[0].context.length() == 1);
}

TEST_CASE("filter_claims: mini corpus golden (independent hand tally)") {
  const auto kept = filter_claims(mini_corpus(), 5, 60.0, Scheme::ThreeClass);

  // Frozen from the oracle script that applies 100*max(c)/sum(c) by hand.
  struct Golden {
    const char* id;
    ImpactClass3 label;
    double agreement;
    std::size_t context_length;
  };
  const Golden golden[] = {
      {"a1", ImpactClass3::Impactful, 100.0, 1},
      {"a2", ImpactClass3::NotImpactful, 100.0, 1},
      {"a5", ImpactClass3::NotImpactful, 80.0, 2},
      {"a6", ImpactClass3::MediumImpact, 200.0 / 3.0, 2},
      {"a7", ImpactClass3::Impactful, 75.0, 3},
      {"b1", ImpactClass3::Impactful, 90.0, 1},
      {"b5", ImpactClass3::Impactful, 600.0 / 7.0, 2},
      {"b6", ImpactClass3::NotImpactful, 100.0, 2},
      {"b7", ImpactClass3::MediumImpact, 500.0 / 7.0, 3},
      {"b9", ImpactClass3::Impactful, 100.0, 4},
      {"b11", ImpactClass3::NotImpactful, 600.0 / 7.0, 5},
  };
  REQUIRE(kept.size() == 11);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CAPTURE(i);
    CHECK(kept[i].claim.id == golden[i].id);
    CHECK(kept[i].label3 == golden[i].label);
    CHECK(kept[i].agreement == doctest::Approx(golden[i].agreement).epsilon(1e-12));
    CHECK(kept[i].context.length() == golden[i].context_length);
  }
}

TEST_CASE("filter_claims: Eq-1 idempotence on stored agreements") {
  for (const auto& claim : filter_claims(mini_corpus(), 5, 60.0, Scheme::ThreeClass)) {
    CHECK(std::fabs(claim.agreement -
                    agreement_score(claim.claim.votes, Scheme::ThreeClass)) < 1e-9);
    CHECK(claim.label3 == majority_label3(claim.claim.votes));
  }
}

TEST_CASE("filter_claims: monotone in both thresholds") {
  const auto trees = mini_corpus();
  auto ids = [&](long long mv, double ma) {
    std::set<std::string> out;
    for (const auto& claim : filter_claims(trees, mv, ma, Scheme::ThreeClass)) {
      out.insert(claim.topic + "/" + claim.claim.id);
    }
    return out;
  };
  const auto base = ids(5, 60.0);
  for (const auto& tighter : {ids(6, 60.0), ids(5, 70.0), ids(8, 80.0)}) {
    for (const auto& id : tighter) CHECK(base.count(id) == 1);
    CHECK(tighter.size() <= base.size());
  }
}

TEST_CASE("corpus_stats: empty corpus is all zeros") {
  const auto report = corpus_stats({});
  CHECK(report.total_claims == 0);
  CHECK(report.total_votes == 0);
  for (long long c : report.claims_by_vote_range) CHECK(c == 0);
  for (long long c : report.context_length_hist) CHECK(c == 0);
}

TEST_CASE("corpus_stats: mini corpus golden (hand tallied)") {
  const auto report = corpus_stats(mini_corpus());
  CHECK(report.total_trees == 2);
  CHECK(report.total_claims == 22);
  CHECK(report.claims_with_histogram_min_votes == 22);
  CHECK(report.claims_by_vote_range ==
        std::array<long long, 7>{2, 13, 4, 1, 0, 1, 1});
  CHECK(report.votes_per_class == std::array<long long, 5>{70, 42, 52, 58, 45});
  CHECK(report.total_votes == 267);
  CHECK(report.above_agreement_3class == std::array<long long, 4>{16, 11, 10, 7});
  CHECK(report.above_agreement_5class == std::array<long long, 4>{10, 5, 3, 1});
  CHECK(report.filtered_claims == 11);
  CHECK(report.context_length_hist == std::array<long long, 6>{3, 4, 2, 2, 0, 0});
}

TEST_CASE("render_stats is deterministic and covers both formats") {
  const auto report = corpus_stats(mini_corpus());
  const auto text_a = render_stats(report, ReportFormat::Text);
  const auto text_b = render_stats(report, ReportFormat::Text);
  CHECK(text_a == text_b);
  CHECK(!text_a.empty());
  const auto kv_out = render_stats(report, ReportFormat::Kv);
  CHECK(kv_out.find("total_votes\t267") != std::string::npos);
  CHECK(kv_out.find("claims_agreement_gt60_3class\t11") != std::string::npos);
}

namespace {

std::vector<LabeledClaim> fake_claims(const std::vector<int>& labels) {
  std::vector<LabeledClaim> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    LabeledClaim claim;
    claim.topic = "fake";
    claim.claim.id = "c" + std::to_string(i);
    claim.claim.text = "text";
    claim.label3 = static_cast<ImpactClass3>(labels[i]);
    out.push_back(std::move(claim));
  }
  return out;
}

}  // namespace

TEST_CASE("split: exact 70/15/15 sizes and determinism") {
  std::vector<int> labels(100);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = int(i % 3);
  const auto claims = fake_claims(labels);

  const auto a = split(claims, {0.70, 0.15, 0.15}, 7);
  CHECK(a.train.size() == 70);
  CHECK(a.validation.size() == 15);
  CHECK(a.test.size() == 15);

  const auto b = split(claims, {0.70, 0.15, 0.15}, 7);
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    CHECK(a.train[i].claim.id == b.train[i].claim.id);
  }
  for (std::size_t i = 0; i < a.test.size(); ++i) {
    CHECK(a.test[i].claim.id == b.test[i].claim.id);
  }
}

TEST_CASE("split: stratification within one claim of proportional") {
  // 10 claims, 6/2/2 by label.
  const auto claims = fake_claims({0, 0, 0, 0, 0, 0, 1, 1, 2, 2});
  const auto s = split(claims, {0.70, 0.15, 0.15}, 3);
  CHECK(s.train.size() == 8);
  CHECK(s.validation.size() == 1);
  CHECK(s.test.size() == 1);

  auto count = [](const std::vector<LabeledClaim>& part, int label) {
    long long n = 0;
    for (const auto& claim : part) n += int(claim.label3) == label;
    return double(n);
  };
  const double global_share[3] = {0.6, 0.2, 0.2};
  for (int label = 0; label < 3; ++label) {
    CHECK(std::fabs(count(s.train, label) - global_share[label] * 8) <= 1.0);
    CHECK(std::fabs(count(s.validation, label) - global_share[label] * 1) <= 1.0);
    CHECK(std::fabs(count(s.test, label) - global_share[label] * 1) <= 1.0);
  }
}

TEST_CASE("split: exact partition for random sizes and seeds (property)") {
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + rng.uniform_index(60);
    std::vector<int> labels(n);
    for (auto& label : labels) label = int(rng.uniform_index(3));
    const auto claims = fake_claims(labels);
    const auto s = split(claims, {0.70, 0.15, 0.15}, rng.next_u64());

    CHECK(s.train.size() + s.validation.size() + s.test.size() == n);
    std::set<std::string> seen;
    for (const auto* part : {&s.train, &s.validation, &s.test}) {
      for (const auto& claim : *part) {
        CHECK(seen.insert(claim.claim.id).second);  // disjoint
      }
    }
    CHECK(seen.size() == n);  // exhaustive
    CHECK(s.validation.size() == std::size_t(0.15 * double(n)));
    CHECK(s.test.size() == std::size_t(0.15 * double(n)));
  }
}

TEST_CASE("split: bad ratios and tiny inputs rejected") {
  const auto claims = fake_claims({0, 1, 2});
  CHECK_THROWS_WITH_AS(split(claims, {0.5, 0.3, 0.3}, 1), doctest::Contains("sum"),
                       DataError);
  CHECK_THROWS_AS(split(fake_claims({0, 1}), {0.70, 0.15, 0.15}, 1), DataError);
}
