// argimpact command-line tool: corpus statistics, filtering, splitting,
// training, evaluation, prediction, and synthetic corpus generation.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 unmet threshold.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "argimpact/corpus.hpp"
#include "argimpact/error.hpp"
#include "argimpact/eval.hpp"
#include "argimpact/kv.hpp"
#include "argimpact/models.hpp"
#include "argimpact/sha1.hpp"
#include "argimpact/synth.hpp"
#include "argimpact/text.hpp"
#include "argimpact/training.hpp"

namespace {

namespace ai = argimpact;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitThreshold = 3;

struct CorpusArgs {
  std::string corpus_path;
  long long min_votes = 5;
  double min_agreement = 60.0;
  std::string scheme = "three";
};

struct SplitArgs {
  std::string ratios = "0.70,0.15,0.15";
  std::uint64_t seed = 1;
};

void add_corpus_flags(CLI::App* cmd, CorpusArgs& args, bool with_filter = true) {
  cmd->add_option("--corpus", args.corpus_path, "Corpus file (line-delimited records)")
      ->required();
  if (with_filter) {
    cmd->add_option("--min-votes", args.min_votes, "Minimum vote count (default 5)");
    cmd->add_option("--min-agreement", args.min_agreement,
                    "Agreement threshold in percent, strict > (default 60)");
    cmd->add_option("--scheme", args.scheme, "Agreement scheme: three|five")
        ->check(CLI::IsMember({"three", "five"}));
  }
}

void add_split_flags(CLI::App* cmd, SplitArgs& args) {
  cmd->add_option("--split-ratios", args.ratios,
                  "Train,validation,test ratios (default 0.70,0.15,0.15)");
  cmd->add_option("--seed", args.seed, "Split / base training seed (default 1)");
}

ai::corpus::Scheme parse_scheme(const std::string& name) {
  return name == "five" ? ai::corpus::Scheme::FiveClass
                        : ai::corpus::Scheme::ThreeClass;
}

std::array<double, 3> parse_ratios(const std::string& spec) {
  std::array<double, 3> out{};
  std::istringstream ss(spec);
  std::string part;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, part, ',')) {
      throw ai::DataError("split ratios: expected three comma-separated values");
    }
    out[i] = std::stod(part);
  }
  return out;
}

ai::corpus::ReportFormat parse_format(const std::string& name) {
  return name == "kv" ? ai::corpus::ReportFormat::Kv : ai::corpus::ReportFormat::Text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ai::DataError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ai::DataError("cannot write '" + path + "'");
  out << content;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

std::vector<ai::corpus::LabeledClaim> load_filtered(const CorpusArgs& args) {
  const auto trees = ai::corpus::load_corpus(args.corpus_path);
  return ai::corpus::filter_claims(trees, args.min_votes, args.min_agreement,
                                   parse_scheme(args.scheme));
}

void write_claim_records(std::ostream& os,
                         const std::vector<ai::corpus::LabeledClaim>& claims) {
  os << "# fields: topic\tclaim_id\tlabel\tagreement\tcontext_length\ttext\n";
  for (const auto& claim : claims) {
    os << ai::text::escape_field(claim.topic) << '\t' << claim.claim.id << '\t'
       << ai::corpus::class3_name(claim.label3) << '\t'
       << ai::text::format_double(claim.agreement) << '\t' << claim.context.length()
       << '\t' << ai::text::escape_field(claim.claim.text) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------------

int run_stats(const CorpusArgs& corpus_args, long long hist_min_votes,
              const std::string& format, const std::string& out_path) {
  const auto trees = ai::corpus::load_corpus(corpus_args.corpus_path);
  ai::corpus::StatsFilters filters;
  filters.histogram_min_votes = hist_min_votes;
  filters.detail_min_votes = corpus_args.min_votes;
  filters.context_min_agreement = corpus_args.min_agreement;
  filters.context_scheme = parse_scheme(corpus_args.scheme);
  const auto report = ai::corpus::corpus_stats(trees, filters);
  emit(out_path, ai::corpus::render_stats(report, parse_format(format)));
  return kExitOk;
}

int run_filter(const CorpusArgs& corpus_args, const std::string& out_path) {
  const auto claims = load_filtered(corpus_args);
  std::ostringstream os;
  write_claim_records(os, claims);
  emit(out_path, os.str());
  return kExitOk;
}

int run_split(const CorpusArgs& corpus_args, const SplitArgs& split_args,
              const std::string& out_dir) {
  const auto claims = load_filtered(corpus_args);
  const auto splits =
      ai::corpus::split(claims, parse_ratios(split_args.ratios), split_args.seed);

  fs::create_directories(out_dir);
  auto write_one = [&](const std::string& name,
                       const std::vector<ai::corpus::LabeledClaim>& part) {
    std::ostringstream os;
    os << "# seed: " << split_args.seed << "\n";
    write_claim_records(os, part);
    write_file((fs::path(out_dir) / name).string(), os.str());
  };
  write_one("train.tsv", splits.train);
  write_one("validation.tsv", splits.validation);
  write_one("test.tsv", splits.test);
  std::cout << "seed\t" << split_args.seed << "\n"
            << "train\t" << splits.train.size() << "\n"
            << "validation\t" << splits.validation.size() << "\n"
            << "test\t" << splits.test.size() << "\n";
  return kExitOk;
}

struct TrainArgs {
  std::string model = "bilstm";
  std::string context = "none";
  int window = 1;
  int seeds = 1;
  int epochs = 0;
  int batch_size = 32;
  int patience = 5;
  double lr = 0.0;
  std::size_t embedding_dim = 32;
  std::size_t hidden = 16;
  std::size_t buckets = 16384;
  int jobs = 1;
  std::string embeddings_file;
  std::vector<std::string> lexicon_specs;
  std::string out_dir;
};

ai::training::TrainConfig build_train_config(const TrainArgs& args,
                                             const SplitArgs& split_args) {
  const auto family = ai::models::family_from_name(args.model);
  if (!family) throw CLI::ValidationError("--model", "unknown model " + args.model);
  const auto strategy = ai::models::strategy_from_name(args.context, args.window);
  if (!strategy) {
    throw CLI::ValidationError("--context", "unknown context/window combination");
  }
  if (strategy->uses_context() && *family != ai::models::Family::Bilstm) {
    throw CLI::ValidationError("--context",
                               "context strategies require --model bilstm");
  }

  ai::training::TrainConfig config;
  config.family = *family;
  config.strategy = *strategy;
  config.dims.embedding = args.embedding_dim;
  config.dims.hidden = args.hidden;
  config.dims.gru_hidden = args.hidden;
  config.fasttext.buckets = args.buckets;
  config.fasttext.dim = args.embedding_dim;
  config.learning_rate = args.lr;
  config.epochs = args.epochs;
  config.batch_size = args.batch_size;
  config.patience = args.patience;
  config.base_seed = split_args.seed;
  config.num_seeds = args.seeds;
  config.jobs = args.jobs;
  config.embeddings_file = args.embeddings_file;
  for (const auto& spec : args.lexicon_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--lexicon", "expected NAME=FILE");
    }
    config.lexicons.push_back(
        ai::features::load_lexicon(spec.substr(0, eq), spec.substr(eq + 1)));
  }
  return config;
}

int run_train(const CorpusArgs& corpus_args, const SplitArgs& split_args,
              const TrainArgs& args, const std::string& format) {
  const auto config = build_train_config(args, split_args);
  const auto claims = load_filtered(corpus_args);
  const auto splits =
      ai::corpus::split(claims, parse_ratios(split_args.ratios), split_args.seed);

  const auto started = std::chrono::steady_clock::now();
  const auto result = ai::training::multi_run(config, splits);
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  fs::create_directories(args.out_dir);
  for (const auto& seed_result : result.seeds) {
    std::ostringstream os;
    seed_result.model->save(os);
    write_file((fs::path(args.out_dir) /
                ("checkpoint_seed" + std::to_string(seed_result.seed) + ".ckpt"))
                   .string(),
               os.str());
  }

  std::ostringstream manifest;
  ai::kv::write(manifest, "command", "train");
  ai::kv::write(manifest, "corpus", corpus_args.corpus_path);
  ai::kv::write(manifest, "corpus_hash", ai::git_blob_sha1(slurp(corpus_args.corpus_path)));
  ai::kv::write(manifest, "min_votes", corpus_args.min_votes);
  ai::kv::write(manifest, "min_agreement", corpus_args.min_agreement);
  ai::kv::write(manifest, "scheme", corpus_args.scheme);
  ai::kv::write(manifest, "split_ratios", split_args.ratios);
  ai::kv::write(manifest, "model", args.model);
  ai::kv::write(manifest, "context", config.strategy.name());
  ai::kv::write(manifest, "window", static_cast<long long>(args.window));
  ai::kv::write(manifest, "base_seed", static_cast<long long>(split_args.seed));
  ai::kv::write(manifest, "seeds", static_cast<long long>(args.seeds));
  ai::kv::write(manifest, "epochs", static_cast<long long>(args.epochs));
  ai::kv::write(manifest, "batch_size", static_cast<long long>(args.batch_size));
  ai::kv::write(manifest, "patience", static_cast<long long>(args.patience));
  ai::kv::write(manifest, "learning_rate", args.lr);
  ai::kv::write(manifest, "embedding_dim", static_cast<long long>(args.embedding_dim));
  ai::kv::write(manifest, "hidden", static_cast<long long>(args.hidden));
  ai::kv::write(manifest, "train_claims", static_cast<long long>(splits.train.size()));
  ai::kv::write(manifest, "validation_claims",
                static_cast<long long>(splits.validation.size()));
  ai::kv::write(manifest, "test_claims", static_cast<long long>(splits.test.size()));
  for (const auto& seed_result : result.seeds) {
    const std::string prefix = "seed" + std::to_string(seed_result.seed) + "_";
    ai::kv::write(manifest, prefix + "precision", seed_result.precision);
    ai::kv::write(manifest, prefix + "recall", seed_result.recall);
    ai::kv::write(manifest, prefix + "f1", seed_result.f1);
    ai::kv::write(manifest, prefix + "accuracy", seed_result.accuracy);
    ai::kv::write(manifest, prefix + "best_epoch",
                  static_cast<long long>(seed_result.best_epoch));
  }
  ai::kv::write(manifest, "precision_mean", result.precision.mean);
  ai::kv::write(manifest, "precision_std", result.precision.stddev);
  ai::kv::write(manifest, "recall_mean", result.recall.mean);
  ai::kv::write(manifest, "recall_std", result.recall.stddev);
  ai::kv::write(manifest, "f1_mean", result.f1.mean);
  ai::kv::write(manifest, "f1_std", result.f1.stddev);
  ai::kv::write(manifest, "accuracy_mean", result.accuracy.mean);
  ai::kv::write(manifest, "accuracy_std", result.accuracy.stddev);
  // The only nondeterministic field, kept on a single line.
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  ai::kv::write(manifest, "timing",
                std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count()) +
                    " wall_s=" + ai::text::format_double(wall_s));
  write_file((fs::path(args.out_dir) / "manifest.kv").string(), manifest.str());

  if (parse_format(format) == ai::corpus::ReportFormat::Kv) {
    std::ostringstream os;
    ai::kv::write(os, "f1_mean", result.f1.mean);
    ai::kv::write(os, "f1_std", result.f1.stddev);
    std::cout << os.str();
  } else {
    std::cout << args.model << " " << config.strategy.name() << ": macro-F1 "
              << ai::text::format_fixed2(result.f1.mean) << " +/- "
              << ai::text::format_fixed2(result.f1.stddev) << " over " << args.seeds
              << " seed(s)\n";
  }
  return kExitOk;
}

int run_eval(const CorpusArgs& corpus_args, const SplitArgs& split_args,
             const std::string& checkpoint, const std::string& format,
             const std::string& out_path, double min_macro_f1) {
  const auto model = ai::models::load_classifier_file(checkpoint);
  const auto claims = load_filtered(corpus_args);
  const auto splits =
      ai::corpus::split(claims, parse_ratios(split_args.ratios), split_args.seed);

  std::vector<ai::corpus::ImpactClass3> golds, preds;
  std::vector<std::size_t> lengths;
  for (const auto& claim : splits.test) {
    golds.push_back(claim.label3);
    preds.push_back(model->predict(claim));
    lengths.push_back(claim.context.length());
  }
  const auto report = ai::eval::evaluate(
      model->family() + " " + model->strategy(), golds, preds, lengths);
  emit(out_path, ai::eval::render_report(report, parse_format(format)));

  if (min_macro_f1 > 0.0 && report.overall.macro_f1 < min_macro_f1) {
    std::cerr << "error: threshold: macro_f1 "
              << ai::text::format_fixed2(report.overall.macro_f1) << " below required "
              << ai::text::format_fixed2(min_macro_f1) << "\n";
    return kExitThreshold;
  }
  return kExitOk;
}

int run_predict(const CorpusArgs& corpus_args, const std::string& checkpoint,
                const std::string& claim_id, const std::string& topic,
                const std::string& out_path) {
  const auto model = ai::models::load_classifier_file(checkpoint);
  const auto trees = ai::corpus::load_corpus(corpus_args.corpus_path);

  auto labeled_for = [](const ai::corpus::ArgumentTree& tree,
                        const ai::corpus::ClaimNode& node) {
    ai::corpus::LabeledClaim claim;
    claim.topic = tree.topic;
    claim.claim = node;
    claim.context = ai::corpus::context_path(tree, node.id);
    if (node.votes.total() > 0) {
      claim.label3 = ai::corpus::majority_label3(node.votes);
      claim.agreement =
          ai::corpus::agreement_score(node.votes, ai::corpus::Scheme::ThreeClass);
    }
    return claim;
  };

  std::vector<ai::corpus::LabeledClaim> targets;
  if (!claim_id.empty()) {
    const ai::corpus::ArgumentTree* found_tree = nullptr;
    const ai::corpus::ClaimNode* found_node = nullptr;
    int matches = 0;
    for (const auto& tree : trees) {
      if (!topic.empty() && tree.topic != topic) continue;
      if (const auto* node = tree.find(claim_id)) {
        ++matches;
        found_tree = &tree;
        found_node = node;
      }
    }
    if (matches == 0) throw ai::DataError("claim id '" + claim_id + "' not found");
    if (matches > 1) {
      throw ai::DataError("claim id '" + claim_id +
                          "' is ambiguous; disambiguate with --topic");
    }
    if (!found_node->parent_id) {
      throw ai::DataError("claim '" + claim_id +
                          "' is a thesis and is not a prediction target");
    }
    targets.push_back(labeled_for(*found_tree, *found_node));
  } else {
    for (const auto& tree : trees) {
      for (const auto& node : tree.nodes) {
        if (!node.parent_id) continue;
        targets.push_back(labeled_for(tree, node));
      }
    }
  }

  std::ostringstream os;
  os << "# fields: topic\tclaim_id\tpredicted\tp_not_impactful\tp_medium\tp_impactful\n";
  for (const auto& claim : targets) {
    const auto proba = model->predict_proba(claim);
    int best = 0;
    for (int k = 1; k < 3; ++k) {
      if (proba[k] > proba[best]) best = k;
    }
    os << ai::text::escape_field(claim.topic) << '\t' << claim.claim.id << '\t'
       << ai::corpus::class3_name(static_cast<ai::corpus::ImpactClass3>(best));
    for (int k = 0; k < 3; ++k) os << '\t' << ai::text::format_double(proba[k]);
    os << '\n';
  }
  emit(out_path, os.str());
  return kExitOk;
}

struct SynthArgs {
  std::size_t trees = 200;
  std::size_t depth = 4;
  std::size_t depth_min = 0;  // 0 -> same as depth
  std::size_t branching = 2;
  std::size_t vocab = 40;
  double signal = 0.9;
  double noise = 0.05;
  std::size_t rule_depth = 1;
  double dup_rate = 0.0;
  std::uint64_t seed = 1;
  std::string out_dir;
};

int run_synth(const SynthArgs& args) {
  ai::synth::SynthSpec spec;
  spec.num_trees = args.trees;
  spec.depth_max = args.depth;
  spec.depth_min = args.depth_min > 0 ? args.depth_min : args.depth;
  spec.branching = args.branching;
  spec.vocab_size = args.vocab;
  spec.signal = args.signal;
  spec.noise = args.noise;
  spec.rule_depth = args.rule_depth;
  spec.duplicate_rate = args.dup_rate;
  spec.seed = args.seed;

  const auto generated = ai::synth::generate(spec);
  fs::create_directories(args.out_dir);
  {
    std::ofstream os(fs::path(args.out_dir) / "corpus.tsv", std::ios::binary);
    ai::corpus::write_corpus(generated.trees, os);
  }
  {
    std::ofstream os(fs::path(args.out_dir) / "oracle.kv", std::ios::binary);
    ai::synth::write_oracle(generated.oracle, os);
  }
  std::cout << "trees\t" << generated.trees.size() << "\n"
            << "bayes_context_pct\t"
            << ai::text::format_fixed2(generated.oracle.bayes_context_pct) << "\n"
            << "bayes_claim_only_pct\t"
            << ai::text::format_fixed2(generated.oracle.bayes_claim_only_pct) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"argument impact corpus and classifier toolkit"};
  app.require_subcommand(1);

  CorpusArgs corpus_args;
  SplitArgs split_args;
  TrainArgs train_args;
  SynthArgs synth_args;
  std::string format = "text";
  std::string out_path;
  std::string checkpoint;
  std::string claim_id, topic;
  long long hist_min_votes = 3;
  double min_macro_f1 = 0.0;

  auto* stats = app.add_subcommand("stats", "Corpus statistics tables");
  add_corpus_flags(stats, corpus_args);
  stats->add_option("--hist-min-votes", hist_min_votes,
                    "Vote-count summary lower bound (default 3)");
  stats->add_option("--format", format, "Output format: text|kv")
      ->check(CLI::IsMember({"text", "kv"}));
  stats->add_option("--out", out_path, "Write the report to a file");

  auto* filter = app.add_subcommand("filter", "Filter claims to prediction targets");
  add_corpus_flags(filter, corpus_args);
  filter->add_option("--out", out_path, "Write filtered claims to a file");

  auto* split = app.add_subcommand("split", "Stratified train/validation/test split");
  add_corpus_flags(split, corpus_args);
  add_split_flags(split, split_args);
  split->add_option("--out", train_args.out_dir, "Output directory")->required();

  auto* train = app.add_subcommand("train", "Train classifiers over one or more seeds");
  add_corpus_flags(train, corpus_args);
  add_split_flags(train, split_args);
  train->add_option("--model", train_args.model, "majority|svm|fasttext|bilstm")
      ->check(CLI::IsMember({"majority", "svm", "fasttext", "bilstm"}));
  train->add_option("--context", train_args.context,
                    "none|parent|flat|attention|gru (bilstm only)")
      ->check(CLI::IsMember({"none", "parent", "flat", "attention", "gru"}));
  train->add_option("--window", train_args.window, "Context window 1..4")
      ->check(CLI::Range(1, 4));
  train->add_option("--seeds", train_args.seeds, "Number of seeds (default 1)")
      ->check(CLI::PositiveNumber);
  train->add_option("--epochs", train_args.epochs, "Epoch cap (default 40/15)");
  train->add_option("--batch-size", train_args.batch_size, "Minibatch size (default 32)");
  train->add_option("--patience", train_args.patience, "Early-stopping patience (default 5)");
  train->add_option("--lr", train_args.lr, "Learning rate (default 1e-3 Adam / 0.8 FastText)");
  train->add_option("--embedding-dim", train_args.embedding_dim,
                    "Embedding size (default 32; the reference setup uses 100)");
  train->add_option("--hidden", train_args.hidden,
                    "Recurrent units per direction (default 16; reference 64)");
  train->add_option("--buckets", train_args.buckets, "FastText hash buckets");
  train->add_option("--jobs", train_args.jobs, "Parallel seed training (default 1)");
  train->add_option("--embeddings", train_args.embeddings_file,
                    "GloVe-format word-vector file");
  train->add_option("--lexicon", train_args.lexicon_specs,
                    "NAME=FILE lexicon word list (repeatable)");
  train->add_option("--format", format, "Summary format: text|kv")
      ->check(CLI::IsMember({"text", "kv"}));
  train->add_option("--out", train_args.out_dir, "Output directory")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
  add_corpus_flags(eval_cmd, corpus_args);
  add_split_flags(eval_cmd, split_args);
  eval_cmd->add_option("--checkpoint", checkpoint, "Model checkpoint file")->required();
  eval_cmd->add_option("--format", format, "Output format: text|kv")
      ->check(CLI::IsMember({"text", "kv"}));
  eval_cmd->add_option("--out", out_path, "Write the report to a file");
  eval_cmd->add_option("--min-macro-f1", min_macro_f1,
                       "Exit 3 when macro-F1 falls below this threshold");

  auto* predict = app.add_subcommand("predict", "Predict labels with distributions");
  add_corpus_flags(predict, corpus_args, /*with_filter=*/false);
  predict->add_option("--checkpoint", checkpoint, "Model checkpoint file")->required();
  predict->add_option("--claim-id", claim_id, "Predict one claim (default: all)");
  predict->add_option("--topic", topic, "Disambiguate --claim-id across trees");
  predict->add_option("--out", out_path, "Write predictions to a file");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic planted corpus");
  synth->add_option("--trees", synth_args.trees, "Number of trees (default 200)");
  synth->add_option("--depth", synth_args.depth, "Tree depth in levels (default 4)");
  synth->add_option("--depth-min", synth_args.depth_min,
                    "Lower depth bound (default: same as --depth)");
  synth->add_option("--branching", synth_args.branching, "Children per node (default 2)");
  synth->add_option("--vocab", synth_args.vocab, "Vocabulary size (default 40)");
  synth->add_option("--signal", synth_args.signal, "Context signal strength s (default 0.9)");
  synth->add_option("--noise", synth_args.noise, "Label noise rate eta (default 0.05)");
  synth->add_option("--rule-depth", synth_args.rule_depth,
                    "Ancestor consulted by the planted rule (default 1 = parent)");
  synth->add_option("--dup-rate", synth_args.dup_rate,
                    "Duplicate claim-text rate (default 0)");
  synth->add_option("--seed", synth_args.seed, "Generator seed (default 1)");
  synth->add_option("--out", synth_args.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (stats->parsed()) {
      return run_stats(corpus_args, hist_min_votes, format, out_path);
    }
    if (filter->parsed()) return run_filter(corpus_args, out_path);
    if (split->parsed()) return run_split(corpus_args, split_args, train_args.out_dir);
    if (train->parsed()) return run_train(corpus_args, split_args, train_args, format);
    if (eval_cmd->parsed()) {
      return run_eval(corpus_args, split_args, checkpoint, format, out_path,
                      min_macro_f1);
    }
    if (predict->parsed()) {
      return run_predict(corpus_args, checkpoint, claim_id, topic, out_path);
    }
    if (synth->parsed()) return run_synth(synth_args);
  } catch (const CLI::Error& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ai::DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return kExitData;
  } catch (const ai::NumericError& e) {
    std::cerr << "error: numeric: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
