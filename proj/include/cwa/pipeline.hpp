#pragma once

// Stage drivers shared by the command-line tool, and the config-driven
// end-to-end run.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwa/closure.hpp"
#include "cwa/cq.hpp"
#include "cwa/error.hpp"
#include "cwa/kif.hpp"
#include "cwa/lexicon.hpp"
#include "cwa/prover.hpp"
#include "cwa/report.hpp"
#include "cwa/taxonomy.hpp"
#include "cwa/tptp.hpp"

namespace cwa {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline Ontology load_ontology(const fs::path& path) { return parse_kif(read_file(path), path.string()); }

inline CurationFile load_curation(const std::optional<fs::path>& path) {
  if (!path) return {};
  return parse_curation(read_file(*path), path->string());
}

// Exit codes of the command-line tool.
enum class ExitCode { ok = 0, usage = 2, data = 3, prover = 4, inconsistency = 5 };

inline ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InconsistencyError*>(&e) || dynamic_cast<const ConflictError*>(&e))
    return ExitCode::inconsistency;
  if (dynamic_cast<const ProverError*>(&e)) return ExitCode::prover;
  return ExitCode::data;
}

// An error raised inside a named stage; keeps the original exit code.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::exception& cause)
      : Error(stage + ": " + cause.what()), stage_(std::move(stage)), code_(exit_code_for(cause)) {}

  const std::string& stage() const { return stage_; }
  ExitCode code() const { return code_; }

 private:
  std::string stage_;
  ExitCode code_;
};

template <class F>
auto run_stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

// ---------------------------------------------------------------------------
// CQ generation

struct CqSources {
  std::map<RelationKind, fs::path> relations;
  std::optional<fs::path> mapping;
  std::optional<fs::path> templates;
};

struct CqGeneration {
  std::vector<CompetencyQuestion> cqs;
  std::map<std::string, GenerationStats> stats;  // per generator
};

inline CqGeneration generate_cqs(const CqSources& src) {
  if (!src.mapping) throw ConfigError("CQ generation needs a mapping file");
  MappingIndex mapping(load_mapping(read_file(*src.mapping)));
  std::vector<RelationPair> pairs;
  for (const auto& [kind, path] : src.relations) {
    auto loaded = load_synset_relations(read_file(path), kind);
    pairs.insert(pairs.end(), loaded.begin(), loaded.end());
  }
  CqGeneration out;
  auto add = [&](std::vector<CompetencyQuestion> cqs) {
    out.cqs.insert(out.cqs.end(), std::make_move_iterator(cqs.begin()), std::make_move_iterator(cqs.end()));
  };
  add(gen_hyponymy_qp1(pairs, mapping, &out.stats["hyponymy-1"]));
  add(gen_hyponymy_qp2(pairs, mapping, &out.stats["hyponymy-2"]));
  add(gen_antonymy_cqs(pairs, mapping, &out.stats["antonymy-1"]));
  if (src.templates)
    for (const auto& t : parse_templates(read_file(*src.templates)))
      add(gen_template_cqs(pairs, mapping, t, &out.stats[t.name]));
  std::stable_sort(out.cqs.begin(), out.cqs.end(), [](const CompetencyQuestion& a, const CompetencyQuestion& b) {
    return pattern_less(a.pattern, b.pattern);
  });
  return out;
}

inline std::string generation_stats_text(const std::map<std::string, GenerationStats>& stats) {
  std::vector<std::vector<std::string>> rows{{"generator", "pairs", "skipped_unmapped", "ineligible", "generated"}};
  for (const auto& [name, s] : stats)
    rows.push_back({name, std::to_string(s.pairs), std::to_string(s.skipped_unmapped), std::to_string(s.ineligible),
                    std::to_string(s.generated)});
  return detail::render_table(rows);
}

// ---------------------------------------------------------------------------
// Emission and evaluation

// Writes one problem file per CQ test; returns the jobs in CQ order, truth
// before falsity.
inline std::vector<ProverJob> emit_problems(const TptpEmitter& emitter, const std::vector<CompetencyQuestion>& cqs,
                                            const std::string& mode, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<ProverJob> jobs;
  for (const auto& q : cqs) {
    for (auto pol : {Polarity::truth, Polarity::falsity}) {
      fs::path path = dir / problem_file_name(q.id, pol);
      write_file(path, emitter.problem(pol == Polarity::truth ? q.truth_test : q.falsity_test,
                                       ProblemMetadata{q.id, q.pattern, mode, pol}));
      jobs.push_back(ProverJob{q.id, q.pattern, pol, path.string()});
    }
  }
  return jobs;
}

struct OracleRun {
  std::vector<Verdict> verdicts;
  std::vector<std::string> unrecognized;  // CQ ids left to a prover
};

// Oracle verdicts for every CQ. Shapes the oracle cannot decide are recorded
// with both tests gave-up.
inline OracleRun run_oracle(const Taxonomy& tax, const std::vector<CompetencyQuestion>& cqs) {
  OracleRun run;
  for (const auto& q : cqs) {
    if (recognize_cq(q.conjecture)) {
      run.verdicts.push_back(oracle_verdict(tax, q));
      continue;
    }
    run.unrecognized.push_back(q.id);
    ProverOutcome gave_up;
    gave_up.status = ProverStatus::gave_up;
    run.verdicts.push_back(Verdict{q.id, q.pattern, VerdictValue::unknown, gave_up, gave_up});
  }
  return run;
}

inline std::string journal_text(const std::vector<Verdict>& verdicts) {
  std::string out;
  for (const auto& v : verdicts)
    for (const auto& r : journal_records(v)) out += journal_line(r);
  return out;
}

// Truth tests first over the whole batch; falsity tests follow for CQs whose
// truth test did not prove, or for all CQs without short-circuiting.
inline std::vector<Verdict> run_prover_batch(const std::vector<ProverJob>& jobs, const ProverConfig& config,
                                             const fs::path& journal, bool short_circuit, bool resume,
                                             const std::set<std::string>& axiom_names) {
  config.validate();
  std::vector<ProverJob> truth;
  std::vector<ProverJob> falsity;
  for (const auto& j : jobs) (j.polarity == Polarity::truth ? truth : falsity).push_back(j);
  run_jobs(truth, config, journal, resume, axiom_names);
  std::set<std::string> proved;
  if (short_circuit)
    for (const auto& r : read_journal_file(journal))
      if (r.polarity == Polarity::truth && r.outcome.status == ProverStatus::proved) proved.insert(r.cq_id);
  std::vector<ProverJob> second;
  for (const auto& j : falsity)
    if (!proved.count(j.cq_id)) second.push_back(j);
  run_jobs(second, config, journal, true, axiom_names);
  auto records = read_journal_file(journal);
  bool any_ran = false;
  for (const auto& r : records)
    if (r.outcome.status != ProverStatus::error) any_ran = true;
  if (!records.empty() && !any_ran)
    throw ProverError("every prover run failed; first output: " + records.front().outcome.output.substr(0, 400));
  return verdicts_from_journal(records);
}

// ---------------------------------------------------------------------------
// Config-driven pipeline

struct PipelineConfig {
  fs::path ontology;
  std::optional<fs::path> curation;
  std::vector<ClosureMode> modes = all_closure_modes();
  CqSources sources;
  fs::path output = "cwa-out";
  bool oracle = true;
  std::optional<ProverConfig> prover;
  bool prune = true;
  bool short_circuit = true;
  bool resume = false;
};

namespace detail {

inline bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError(key + ": expected a boolean, got '" + std::string(v) + "'");
}

inline double parse_number(const std::string& key, std::string_view v) {
  try {
    std::size_t used = 0;
    double d = std::stod(std::string(v), &used);
    if (used != v.size()) throw std::invalid_argument("trailing text");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + std::string(v) + "'");
  }
}

inline std::vector<ClosureMode> parse_modes(std::string_view v) {
  std::vector<ClosureMode> out;
  std::string item;
  std::istringstream in{std::string(v)};
  while (std::getline(in, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(closure_mode_from_string(t));
  }
  if (out.empty()) throw ConfigError("modes: empty list");
  return out;
}

}  // namespace detail

// Applies CWA_PROVER_COMMAND, CWA_PROVER_TIMEOUT, CWA_PROVER_MEMORY and
// CWA_PROVER_WORKERS on top of the file values.
inline void apply_env_overrides(PipelineConfig& cfg) {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    return v && *v ? std::optional<std::string>(v) : std::nullopt;
  };
  if (auto v = env("CWA_PROVER_COMMAND")) {
    if (!cfg.prover) cfg.prover = ProverConfig{};
    cfg.prover->command = *v;
  }
  if (!cfg.prover) return;
  if (auto v = env("CWA_PROVER_TIMEOUT")) cfg.prover->time_limit = detail::parse_number("CWA_PROVER_TIMEOUT", *v);
  if (auto v = env("CWA_PROVER_MEMORY"))
    cfg.prover->memory_mb = static_cast<std::size_t>(detail::parse_number("CWA_PROVER_MEMORY", *v));
  if (auto v = env("CWA_PROVER_WORKERS"))
    cfg.prover->workers = static_cast<std::size_t>(detail::parse_number("CWA_PROVER_WORKERS", *v));
}

// Flat `key = value` lines, `#` comments. Relative paths resolve against
// `base`.
inline PipelineConfig parse_pipeline_config(std::string_view text, const fs::path& base = {}) {
  PipelineConfig cfg;
  bool have_ontology = false;
  auto path = [&](std::string_view v) { return fs::path(v).is_absolute() ? fs::path(v) : base / fs::path(v); };
  auto prover = [&]() -> ProverConfig& {
    if (!cfg.prover) cfg.prover = ProverConfig{};
    return *cfg.prover;
  };
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
    std::string key(detail::trim(t.substr(0, eq)));
    std::string value(detail::trim(t.substr(eq + 1)));
    if (key == "ontology") {
      cfg.ontology = path(value);
      have_ontology = true;
    } else if (key == "curation") {
      cfg.curation = path(value);
    } else if (key == "modes") {
      cfg.modes = detail::parse_modes(value);
    } else if (key.rfind("relations.", 0) == 0) {
      cfg.sources.relations[relation_kind_from_string(key.substr(10))] = path(value);
    } else if (key == "mapping") {
      cfg.sources.mapping = path(value);
    } else if (key == "templates") {
      cfg.sources.templates = path(value);
    } else if (key == "output") {
      cfg.output = path(value);
    } else if (key == "oracle") {
      cfg.oracle = detail::parse_bool(key, value);
    } else if (key == "prover.command") {
      prover().command = value;
    } else if (key == "prover.timeout") {
      prover().time_limit = detail::parse_number(key, value);
    } else if (key == "prover.memory") {
      prover().memory_mb = static_cast<std::size_t>(detail::parse_number(key, value));
    } else if (key == "prover.workers") {
      prover().workers = static_cast<std::size_t>(detail::parse_number(key, value));
    } else if (key == "prune") {
      cfg.prune = detail::parse_bool(key, value);
    } else if (key == "short_circuit") {
      cfg.short_circuit = detail::parse_bool(key, value);
    } else if (key == "resume") {
      cfg.resume = detail::parse_bool(key, value);
    } else {
      throw ConfigError("line " + std::to_string(n) + ": unknown key '" + key + "'");
    }
  }
  if (!have_ontology) throw ConfigError("config has no ontology");
  if (cfg.prover && cfg.prover->command.empty()) throw ConfigError("prover settings given without prover.command");
  return cfg;
}

inline PipelineConfig load_pipeline_config(const fs::path& file) {
  PipelineConfig cfg = parse_pipeline_config(read_file(file), file.parent_path());
  apply_env_overrides(cfg);
  if (cfg.prover) cfg.prover->validate();
  return cfg;
}

inline std::string mode_file_name(ClosureMode m) {
  std::string s(to_string(m));
  std::replace(s.begin(), s.end(), '+', '_');
  return s;
}

struct PipelineSummary {
  std::vector<std::string> log;  // one line per stage step
};

// parse -> close -> stats -> gen-cqs -> emit -> run -> report. Reports use
// the owa journal as baseline for exclusive counts.
inline PipelineSummary run_pipeline(const PipelineConfig& cfg) {
  PipelineSummary summary;
  const fs::path out = cfg.output;
  fs::create_directories(out);

  Ontology original = run_stage("parse", [&] { return load_ontology(cfg.ontology); });
  CurationFile curation = run_stage("parse", [&] { return load_curation(cfg.curation); });
  summary.log.push_back("parse: " + std::to_string(original.size()) + " axioms");

  std::vector<std::pair<ClosureMode, ClosureResult>> closed;
  run_stage("close", [&] {
    ClosureOptions opts;
    opts.prune = cfg.prune;
    for (auto m : cfg.modes) {
      ClosureResult r = apply_closure(original, m, curation, opts);
      write_file(out / "closed" / (mode_file_name(m) + ".kif"), serialize_kif(r.ontology));
      std::string notes;
      for (const auto& n : r.notes) notes += n + "\n";
      write_file(out / "closed" / (mode_file_name(m) + ".notes.txt"), notes);
      summary.log.push_back("close: " + std::string(to_string(m)) + " " + std::to_string(r.ontology.size()) +
                            " axioms");
      closed.emplace_back(m, std::move(r));
    }
    return 0;
  });

  run_stage("stats", [&] {
    std::vector<std::pair<std::string, SizeStats>> versions;
    std::string counts = "mode,generated,unpruned\n";
    for (const auto& [m, r] : closed) {
      versions.emplace_back(std::string(to_string(m)), count_metrics(r.ontology));
      counts += std::string(to_string(m)) + "," + std::to_string(r.generated) + "," + std::to_string(r.unpruned) + "\n";
    }
    write_file(out / "stats.csv", size_table_csv(versions));
    write_file(out / "stats.txt", size_table_text(versions));
    write_file(out / "pruning.csv", counts);
    return 0;
  });

  if (!cfg.sources.mapping) {
    summary.log.push_back("gen-cqs: no mapping configured, stopping after stats");
    return summary;
  }
  CqGeneration gen = run_stage("gen-cqs", [&] { return generate_cqs(cfg.sources); });
  run_stage("gen-cqs", [&] {
    write_file(out / "cqs.kif", write_cq_corpus(gen.cqs));
    write_file(out / "cqs.stats.txt", generation_stats_text(gen.stats));
    return 0;
  });
  summary.log.push_back("gen-cqs: " + std::to_string(gen.cqs.size()) + " CQs");
  std::vector<std::string> expected;
  for (const auto& q : gen.cqs) expected.push_back(q.id);

  std::map<std::string, std::map<ClosureMode, std::vector<Verdict>>> verdicts;  // by runner
  std::map<ClosureMode, std::vector<JournalRecord>> prover_records;
  std::vector<std::string> contradictions;
  for (const auto& [m, r] : closed) {
    const std::string mode(to_string(m));
    const std::string stem = mode_file_name(m);
    std::vector<ProverJob> jobs;
    std::optional<TptpEmitter> emitter;
    run_stage("emit", [&] {
      emitter.emplace(r.ontology);
      jobs = emit_problems(*emitter, gen.cqs, mode, out / "problems" / stem);
      return 0;
    });
    run_stage("run", [&] {
      if (cfg.oracle) {
        OracleRun o = run_oracle(build_taxonomy(r.ontology), gen.cqs);
        write_file(out / "journal" / (stem + ".oracle.jsonl"), journal_text(o.verdicts));
        verdicts["oracle"][m] = o.verdicts;
        summary.log.push_back("run: oracle " + mode + " (" + std::to_string(o.unrecognized.size()) +
                              " CQs outside the structural fragment)");
      }
      if (cfg.prover) {
        std::set<std::string> names;
        for (const auto& [n, id] : emitter->axiom_names()) names.insert(n);
        fs::path journal = out / "journal" / (stem + ".prover.jsonl");
        fs::create_directories(journal.parent_path());
        verdicts["prover"][m] = run_prover_batch(jobs, *cfg.prover, journal, cfg.short_circuit, cfg.resume, names);
        prover_records[m] = read_journal_file(journal);
        summary.log.push_back("run: prover " + mode);
      }
      for (const auto& [runner, by_mode] : verdicts) {
        auto it = by_mode.find(m);
        if (it == by_mode.end()) continue;
        for (const auto& v : it->second)
          if (v.value == VerdictValue::contradictory) contradictions.push_back(runner + " " + mode + " " + v.cq_id);
      }
      return 0;
    });
  }

  run_stage("report", [&] {
    std::string consistency;
    for (const auto& [runner, by_mode] : verdicts) {
      const std::vector<Verdict>* baseline = nullptr;
      if (auto it = by_mode.find(ClosureMode::owa); it != by_mode.end()) baseline = &it->second;
      std::string summary_text;
      for (const auto& [m, vs] : by_mode) {
        const std::string stem = mode_file_name(m);
        const auto* base = (baseline && m != ClosureMode::owa) ? baseline : nullptr;
        CompetencyReport rep = competency_report(vs, base, &expected);
        write_file(out / "reports" / (stem + "." + runner + ".competency.csv"), rep.to_csv());
        write_file(out / "reports" / (stem + "." + runner + ".competency.txt"), rep.to_text());
        summary_text += "== " + std::string(to_string(m)) + " ==\n" + rep.to_text();
        ConsistencyReport c = check_consistency_signals(vs, base);
        if (!c.clean()) consistency += runner + " " + std::string(to_string(m)) + "\n" + c.to_text();
      }
      write_file(out / "reports" / ("competency." + runner + ".txt"), summary_text);
    }
    for (const auto& [m, recs] : prover_records) {
      EfficiencyReport e = efficiency_report(recs);
      write_file(out / "reports" / (mode_file_name(m) + ".prover.efficiency.csv"), e.to_csv());
      write_file(out / "reports" / (mode_file_name(m) + ".prover.efficiency.txt"), e.to_text());
    }
    write_file(out / "reports" / "consistency.txt", consistency);
    summary.log.push_back("report: written to " + (out / "reports").string());
    if (!contradictions.empty()) {
      std::string names;
      for (const auto& c : contradictions) names += "\n  " + c;
      throw InconsistencyError("both tests proved for:" + names);
    }
    return 0;
  });
  return summary;
}

}  // namespace cwa
