// Copyright 2026 The nlsql Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nlsql: generate, augment, anonymize, translate, evaluate, stats.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlsql/augmenter.h"
#include "nlsql/database.h"
#include "nlsql/error.h"
#include "nlsql/eval_harness.h"
#include "nlsql/generator.h"
#include "nlsql/manifest.h"
#include "nlsql/paraphrase_index.h"
#include "nlsql/runtime_bridge.h"
#include "nlsql/schema.h"
#include "nlsql/template_lexicon.h"
#include "nlsql/text.h"
#include "nlsql/training_pair.h"

#ifndef NLSQL_DEFAULT_DATA_DIR
#define NLSQL_DEFAULT_DATA_DIR "data"
#endif

namespace {

using nlohmann::ordered_json;
using namespace nlsql;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct Flags {
  std::string schema;
  std::string values;
  std::string templates = std::string(NLSQL_DEFAULT_DATA_DIR) + "/templates/catalog.json";
  std::string lexicon = std::string(NLSQL_DEFAULT_DATA_DIR) + "/lexicon/phrases.json";
  std::string ppdb;
  double min_score = 0.0;
  std::size_t max_per_source = 50;
  std::size_t cap = 500;
  double balance_ratio = 2.0;
  double paraphrase_prob = 0.3;
  std::size_t paraphrase_dups = 3;
  double dropout_prob = 0.15;
  std::size_t dropout_dups = 1;
  std::size_t min_tokens = 3;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  bool concrete = false;
  std::string out;
  std::string in;
  std::string corpus;
  std::string benchmark;
  std::string translator = "baseline";
  std::string db;
  std::vector<std::string> text;
};

std::string EnvName(const std::string& flag) {
  std::string name = "NLSQL_";
  for (char c : flag) name += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

template <typename T>
CLI::Option* Add(CLI::App* app, const std::string& flag, T& target, const std::string& help) {
  return app->add_option("--" + flag, target, help)->envname(EnvName(flag))->capture_default_str();
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowIo("cannot write " + path);
  out << text;
  if (!out) ThrowIo("cannot write " + path);
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    WriteText(path, text);
  }
}

Schema RequireSchema(const Flags& f) {
  if (f.schema.empty()) ThrowValidation("--schema is required");
  Schema schema = LoadSchemaFile(f.schema);
  schema.Validate();
  return schema;
}

ValueIndex LoadValues(const Flags& f, const Schema& schema) {
  if (f.values.empty()) return {};
  return BuildValueIndex(schema, LoadValueFile(f.values));
}

std::vector<std::string> InputLines(const Flags& f) {
  std::vector<std::string> lines;
  if (!f.in.empty()) {
    for (std::string& l : SplitLines(ReadFile(f.in))) {
      if (!Trim(l).empty()) lines.push_back(std::move(l));
    }
  }
  for (const std::string& t : f.text) lines.push_back(t);
  if (lines.empty()) ThrowValidation("no input: pass --in <file> or text arguments");
  return lines;
}

ordered_json PairCounts(const std::vector<TrainingPair>& pairs) {
  ordered_json per_template = ordered_json::object();
  std::map<std::string, std::size_t> by_template;
  std::map<std::string, std::size_t> by_category;
  std::map<std::string, std::size_t> by_op;
  for (const TrainingPair& p : pairs) {
    ++by_template[p.template_id];
    ++by_category[p.category];
    by_op[p.augmentations.empty() ? "none" : JoinStrings(p.augmentations, "+")]++;
  }
  ordered_json j;
  j["pairs"] = pairs.size();
  j["per_template"] = by_template;
  j["per_category"] = by_category;
  j["per_augmentation"] = by_op;
  return j;
}

ordered_json BindingsJson(const BindingMap& map) {
  ordered_json arr = ordered_json::array();
  for (const Binding& b : map.entries()) {
    ordered_json j;
    j["placeholder"] = b.placeholder;
    j["table"] = b.table;
    j["column"] = b.column;
    j["constant"] = b.constant;
    j["canonical"] = b.canonical;
    j["span"] = {b.span_begin, b.span_end};
    j["ambiguous"] = b.ambiguous;
    if (b.ambiguous) {
      ordered_json c = ordered_json::array();
      for (const ColumnRef& r : b.candidates) c.push_back(r.table + "." + r.column);
      j["candidates"] = c;
    }
    arr.push_back(j);
  }
  return arr;
}

void Finish(RunManifest& m, const Flags& f, std::chrono::steady_clock::time_point start) {
  if (f.out.empty()) return;
  m.AddOutput("out", f.out);
  m.wall_seconds = SecondsSince(start);
  WriteManifest(ManifestPath(f.out), m);
}

int RunGenerate(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.out.empty()) ThrowValidation("generate: --out is required");
  const Schema schema = RequireSchema(f);
  const ValueIndex values = LoadValues(f, schema);
  const TemplateCatalog catalog = LoadTemplatesFile(f.templates, schema);
  const PhraseLexicon lexicon = LoadPhraseLexiconFile(f.lexicon);
  CheckLexiconCovers(lexicon, catalog);

  GenerationConfig config;
  config.per_template_cap = f.cap;
  config.balance_ratio_max = f.balance_ratio;
  config.seed = f.seed;
  config.anonymize_values = !f.concrete;
  config.jobs = f.jobs;
  const GenerationResult result = Generate(schema, catalog, lexicon, values, config);
  const std::vector<TrainingPair> pairs = result.Pairs();
  WriteText(f.out, SerializePairs(pairs));

  RunManifest m;
  m.command = "generate";
  m.config = {{"per_template_cap", config.per_template_cap},
              {"balance_ratio_max", config.balance_ratio_max},
              {"anonymize_values", config.anonymize_values}};
  m.AddInput("schema", f.schema);
  if (!f.values.empty()) m.AddInput("values", f.values);
  m.AddInput("templates", f.templates);
  m.AddInput("lexicon", f.lexicon);
  m.catalog_version = catalog.version;
  m.seed = f.seed;
  m.counts = PairCounts(pairs);
  ordered_json reports = ordered_json::object();
  for (const TemplateReport& r : result.reports) {
    reports[r.template_id] = {{"admissible", r.admissible}, {"retained", r.retained},
                              {"emitted", r.emitted}, {"kept_whole", r.kept_whole}};
    for (const std::string& d : r.diagnostics) std::cerr << "diagnostic: " << d << "\n";
  }
  m.counts["templates"] = reports;
  m.counts["ratio_bound"] = result.ratio_bound;
  Finish(m, f, start);
  std::cerr << "generated " << pairs.size() << " pairs from " << catalog.templates.size()
            << " templates\n";
  return kExitOk;
}

int RunAugment(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.in.empty() || f.out.empty()) ThrowValidation("augment: --in and --out are required");
  const std::vector<TrainingPair> pairs = LoadPairsFile(f.in);
  ParaphraseIndex index;
  if (!f.ppdb.empty()) {
    ParaphraseLoadResult loaded = LoadParaphraseIndex(f.ppdb, f.min_score, f.max_per_source);
    for (const MalformedLine& m : loaded.malformed) {
      std::cerr << "warning: " << f.ppdb << ":" << m.line_number << ": " << m.reason << "\n";
    }
    index = std::move(loaded.index);
  }
  ProtectedVocabulary vocab;
  if (!f.schema.empty()) {
    const Schema schema = RequireSchema(f);
    const ValueIndex values = LoadValues(f, schema);
    vocab = ProtectedVocabulary(schema, LoadPhraseLexiconFile(f.lexicon), values);
  }
  AugmentationParams params;
  params.paraphrase_prob = f.paraphrase_prob;
  params.paraphrase_duplicates = f.paraphrase_dups;
  params.dropout_prob = f.dropout_prob;
  params.dropout_duplicates = f.dropout_dups;
  params.min_tokens_remaining = f.min_tokens;
  params.seed = f.seed;
  params.jobs = f.jobs;
  const AugmentationResult result = AugmentDetailed(pairs, index, vocab, params);
  const std::vector<TrainingPair> out = result.Pairs();
  WriteText(f.out, SerializePairs(out));

  RunManifest m;
  m.command = "augment";
  m.config = {{"paraphrase_duplicates", params.paraphrase_duplicates},
              {"paraphrase_prob", params.paraphrase_prob},
              {"dropout_duplicates", params.dropout_duplicates},
              {"dropout_prob", params.dropout_prob},
              {"min_tokens_remaining", params.min_tokens_remaining},
              {"min_score", f.min_score},
              {"max_per_source", f.max_per_source}};
  m.AddInput("in", f.in);
  if (!f.ppdb.empty()) m.AddInput("ppdb", f.ppdb);
  if (!f.schema.empty()) {
    m.AddInput("schema", f.schema);
    m.AddInput("lexicon", f.lexicon);
  }
  if (!f.values.empty()) m.AddInput("values", f.values);
  m.seed = f.seed;
  m.counts = PairCounts(out);
  m.counts["input"] = pairs.size();
  m.counts["discarded_duplicates"] = result.discarded_duplicates;
  Finish(m, f, start);
  std::cerr << "augmented " << pairs.size() << " -> " << out.size() << " pairs\n";
  return kExitOk;
}

int RunAnonymize(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  const Schema schema = RequireSchema(f);
  const ValueIndex values = LoadValues(f, schema);
  const Anonymizer anonymizer(schema, values);
  std::string text;
  for (const std::string& line : InputLines(f)) {
    const AnonymizeResult r = anonymizer.Run(line);
    for (const std::string& d : r.diagnostics) std::cerr << "diagnostic: " << d << "\n";
    ordered_json j;
    j["nl"] = line;
    j["anonymized_nl"] = r.nl;
    j["bindings"] = BindingsJson(r.map);
    text += j.dump() + "\n";
  }
  Emit(f.out, text);
  RunManifest m;
  m.command = "anonymize";
  m.AddInput("schema", f.schema);
  if (!f.values.empty()) m.AddInput("values", f.values);
  if (!f.in.empty()) m.AddInput("in", f.in);
  m.counts = {{"records", SplitLines(text).size()}};
  Finish(m, f, start);
  return kExitOk;
}

std::vector<TrainingPair> CorpusFor(const Flags& f) {
  if (f.translator != "baseline") return {};
  if (f.corpus.empty()) ThrowValidation("--corpus is required with the baseline translator");
  return LoadPairsFile(f.corpus);
}

int RunTranslate(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  const Schema schema = RequireSchema(f);
  const ValueIndex values = LoadValues(f, schema);
  const Anonymizer anonymizer(schema, values);
  std::unique_ptr<Translator> translator = MakeTranslator(f.translator, CorpusFor(f));
  std::string text;
  std::size_t failures = 0;
  for (const std::string& line : InputLines(f)) {
    ordered_json j;
    j["nl"] = line;
    try {
      const AnonymizeResult r = anonymizer.Run(line);
      j["anonymized_nl"] = r.nl;
      const std::string sql = translator->Translate(r.nl);
      CheckTranslatorContract(r.nl, sql);
      j["sql"] = sql;
      j["bound_sql"] = Bind(sql, r.map, schema);
    } catch (const Error& e) {
      ++failures;
      j["error"] = e.what();
    }
    text += j.dump() + "\n";
  }
  Emit(f.out, text);
  RunManifest m;
  m.command = "translate";
  m.config = {{"translator", f.translator}};
  m.AddInput("schema", f.schema);
  if (!f.values.empty()) m.AddInput("values", f.values);
  if (!f.corpus.empty()) m.AddInput("corpus", f.corpus);
  if (!f.in.empty()) m.AddInput("in", f.in);
  m.counts = {{"records", SplitLines(text).size()}, {"failures", failures}};
  Finish(m, f, start);
  return kExitOk;
}

int RunEvaluate(const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.benchmark.empty()) ThrowValidation("evaluate: --benchmark is required");
  const Schema schema = RequireSchema(f);
  const ValueIndex values = LoadValues(f, schema);
  const BenchmarkLoad bench = LoadBenchmark(f.benchmark);
  for (const std::string& w : bench.warnings) std::cerr << "warning: " << w << "\n";
  const Database db = f.db.empty() ? CreateDatabaseFromSchema(schema, values) : Database::Open(f.db);
  std::unique_ptr<Translator> translator = MakeTranslator(f.translator, CorpusFor(f));
  const EvalReport report = Evaluate(*translator, bench.cases, db, schema, values);
  std::cout << report.Table();
  if (!f.out.empty()) WriteText(f.out, report.VerdictRecords());

  RunManifest m;
  m.command = "evaluate";
  m.config = {{"translator", f.translator}};
  m.AddInput("schema", f.schema);
  if (!f.values.empty()) m.AddInput("values", f.values);
  if (!f.db.empty()) m.AddInput("db", f.db);
  if (!f.corpus.empty()) m.AddInput("corpus", f.corpus);
  ordered_json per_variant = ordered_json::object();
  for (const auto& [variant, acc] : report.per_variant) {
    per_variant[std::string(VariantName(variant))] = {
        {"correct", acc.correct}, {"total", acc.total}, {"accuracy", acc.Display()}};
  }
  m.counts = {{"cases", report.overall.total},
              {"correct", report.overall.correct},
              {"accuracy", report.overall.Display()},
              {"per_variant", per_variant},
              {"harness_failures", report.harness_failures}};
  Finish(m, f, start);
  return report.harness_failures > 0 ? kExitRuntime : kExitOk;
}

int RunStats(const Flags& f) {
  if (f.in.empty()) ThrowValidation("stats: --in is required");
  const std::vector<TrainingPair> pairs = LoadPairsFile(f.in);
  ordered_json j = PairCounts(pairs);
  std::size_t balanced = 0;
  for (const TrainingPair& p : pairs) balanced += PlaceholdersBalanced(p) ? 1 : 0;
  j["placeholder_balanced"] = balanced;
  int status = kExitOk;
  std::ifstream probe(ManifestPath(f.in));
  if (probe) {
    const RunManifest m = ReadManifest(ManifestPath(f.in));
    const std::vector<std::string> stale = VerifyManifestDigests(m);
    const bool counts_match = m.counts.value("pairs", std::size_t{0}) == pairs.size() &&
                              m.counts.value("per_template", ordered_json{}) == j["per_template"];
    j["manifest"] = {{"command", m.command},
                     {"digests_match", stale.empty()},
                     {"stale", stale},
                     {"counts_match", counts_match}};
    if (!stale.empty() || !counts_match) status = kExitValidation;
  }
  std::cout << j.dump(2) << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  CLI::App app{"nlsql: NL-to-SQL training data synthesis and evaluation"};
  app.require_subcommand(1);

  auto common_schema = [&](CLI::App* sub) {
    Add(sub, "schema", f.schema, "schema JSON file");
    Add(sub, "values", f.values, "value JSONL file");
  };
  auto common_seed = [&](CLI::App* sub) {
    Add(sub, "seed", f.seed, "RNG seed");
    Add(sub, "jobs", f.jobs, "worker threads (0 = all cores)");
  };

  CLI::App* gen = app.add_subcommand("generate", "instantiate templates into training pairs");
  common_schema(gen);
  Add(gen, "templates", f.templates, "template catalog JSON");
  Add(gen, "lexicon", f.lexicon, "phrase lexicon JSON");
  Add(gen, "cap", f.cap, "per-template cap")->check(CLI::PositiveNumber);
  Add(gen, "balance-ratio", f.balance_ratio, "max/min retained-count ratio");
  gen->add_flag("--concrete", f.concrete, "fill filters with sample values instead of placeholders")
      ->envname("NLSQL_CONCRETE");
  Add(gen, "out", f.out, "output pairs JSONL");
  common_seed(gen);

  CLI::App* aug = app.add_subcommand("augment", "add paraphrase and dropout duplicates");
  Add(aug, "in", f.in, "input pairs JSONL");
  Add(aug, "ppdb", f.ppdb, "paraphrase TSV");
  Add(aug, "min-score", f.min_score, "minimum paraphrase score");
  Add(aug, "max-per-source", f.max_per_source, "paraphrase targets kept per source");
  common_schema(aug);
  Add(aug, "lexicon", f.lexicon, "phrase lexicon JSON");
  Add(aug, "paraphrase-prob", f.paraphrase_prob, "replacement probability");
  Add(aug, "paraphrase-dups", f.paraphrase_dups, "paraphrase attempts per pair");
  Add(aug, "dropout-prob", f.dropout_prob, "per-token drop probability");
  Add(aug, "dropout-dups", f.dropout_dups, "dropout attempts per pair");
  Add(aug, "min-tokens", f.min_tokens, "tokens that must survive dropout");
  Add(aug, "out", f.out, "output pairs JSONL");
  common_seed(aug);

  CLI::App* anon = app.add_subcommand("anonymize", "replace constants with placeholders");
  common_schema(anon);
  Add(anon, "in", f.in, "NL lines");
  Add(anon, "out", f.out, "output JSONL (default stdout)");
  anon->add_option("text", f.text, "NL queries");

  CLI::App* tr = app.add_subcommand("translate", "anonymize, translate and bind NL queries");
  common_schema(tr);
  Add(tr, "corpus", f.corpus, "training pairs for the baseline");
  Add(tr, "translator", f.translator, "baseline | subprocess:<cmd>");
  Add(tr, "in", f.in, "NL lines");
  Add(tr, "out", f.out, "output JSONL (default stdout)");
  tr->add_option("text", f.text, "NL queries");

  CLI::App* ev = app.add_subcommand("evaluate", "execution-based accuracy on a benchmark");
  common_schema(ev);
  Add(ev, "benchmark", f.benchmark, "benchmark directory or JSONL");
  Add(ev, "translator", f.translator, "baseline | subprocess:<cmd>");
  Add(ev, "corpus", f.corpus, "training pairs for the baseline");
  Add(ev, "db", f.db, "SQL seed script or SQLite file");
  Add(ev, "out", f.out, "per-case verdict JSONL");

  CLI::App* st = app.add_subcommand("stats", "recount a pairs file and check its manifest");
  Add(st, "in", f.in, "pairs JSONL");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return RunGenerate(f);
    if (aug->parsed()) return RunAugment(f);
    if (anon->parsed()) return RunAnonymize(f);
    if (tr->parsed()) return RunTranslate(f);
    if (ev->parsed()) return RunEvaluate(f);
    if (st->parsed()) return RunStats(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kRuntime || e.kind() == ErrorKind::kIo ? kExitRuntime
                                                                         : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
