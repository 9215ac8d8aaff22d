// cwa: closed world augmentation and competency evaluation for
// SUMO-style ontologies.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cwa/cwa.hpp"

namespace fs = std::filesystem;

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") std::cout << text;
  else cwa::write_file(out, text);
}

std::optional<fs::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

std::vector<cwa::CompetencyQuestion> load_cqs(const std::string& path) {
  return cwa::read_cq_corpus(cwa::read_file(path));
}

struct ProverFlags {
  std::string command;
  double timeout = 300;
  std::size_t memory = 2048;
  std::size_t workers = 1;

  void attach(CLI::App* app) {
    app->add_option("--prover", command, "prover command; {problem}, {timeout} and {memory} are substituted");
    app->add_option("--timeout", timeout, "seconds per test")->capture_default_str();
    app->add_option("--memory", memory, "address-space limit in MiB")->capture_default_str();
    app->add_option("--workers", workers, "concurrent prover processes")->capture_default_str();
  }

  cwa::ProverConfig config() const {
    cwa::ProverConfig c;
    c.command = command;
    c.time_limit = timeout;
    c.memory_mb = memory;
    c.workers = workers;
    try {
      c.validate();
    } catch (const cwa::ConfigError& e) {
      throw cwa::ProverError(e.what());
    }
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed world augmentation and competency evaluation for SUMO-style ontologies"};
  app.require_subcommand(1);

  // parse
  auto* parse = app.add_subcommand("parse", "parse an ontology and summarize its taxonomy");
  std::string parse_in;
  bool parse_dot = false, parse_edges = false, parse_print = false;
  parse->add_option("ontology", parse_in, "KIF file")->required();
  parse->add_flag("--dot", parse_dot, "print the taxonomy as a DOT graph");
  parse->add_flag("--edges", parse_edges, "print the taxonomy as a TSV edge list");
  parse->add_flag("--print", parse_print, "re-serialize the ontology");

  // stats
  auto* stats = app.add_subcommand("stats", "size metrics of ontologies");
  std::vector<std::string> stats_in;
  std::string stats_curation, stats_out;
  bool stats_modes = false, stats_csv = false, stats_no_prune = false;
  stats->add_option("ontology", stats_in, "KIF files")->required();
  stats->add_flag("--modes", stats_modes, "close the single input under every mode and compare");
  stats->add_option("--curation", stats_curation, "curation file for --modes");
  stats->add_flag("--no-prune", stats_no_prune, "keep redundant CWA axioms");
  stats->add_flag("--csv", stats_csv, "CSV instead of an aligned table");
  stats->add_option("-o,--output", stats_out, "output file");

  // close
  auto* close = app.add_subcommand("close", "apply a closed world augmentation");
  std::string close_in, close_mode, close_curation, close_out;
  bool close_no_prune = false, close_strict = false;
  close->add_option("ontology", close_in, "KIF file")->required();
  close->add_option("--mode", close_mode, "owa, subclass-only, subclass+disjointness or subclass+nondisjointness")
      ->required();
  close->add_option("--curation", close_curation, "curation KIF file");
  close->add_flag("--no-prune", close_no_prune, "keep redundant CWA axioms");
  close->add_flag("--strict-curation", close_strict, "fail on sibling pairs that need curation");
  close->add_option("-o,--output", close_out, "output file");

  // suggest-curation
  auto* suggest = app.add_subcommand("suggest-curation", "list curation candidates for a closure mode");
  std::string suggest_in, suggest_mode, suggest_out;
  suggest->add_option("ontology", suggest_in, "KIF file")->required();
  suggest->add_option("--mode", suggest_mode, "subclass+disjointness or subclass+nondisjointness")->required();
  suggest->add_option("-o,--output", suggest_out, "output file");

  // gen-cqs
  auto* gencq = app.add_subcommand("gen-cqs", "generate competency questions");
  std::string gen_mapping, gen_hypo, gen_anto, gen_templates, gen_out;
  std::vector<std::string> gen_relations;
  gencq->add_option("--mapping", gen_mapping, "synset to concept TSV")->required();
  gencq->add_option("--hyponymy", gen_hypo, "hyponymy pairs TSV");
  gencq->add_option("--antonymy", gen_anto, "antonymy pairs TSV");
  gencq->add_option("--relation", gen_relations, "KIND=FILE for other relation kinds");
  gencq->add_option("--templates", gen_templates, "question pattern templates");
  gencq->add_option("-o,--output", gen_out, "CQ corpus file");

  // emit
  auto* emitc = app.add_subcommand("emit", "write TPTP problems for every CQ test");
  std::string emit_in, emit_cqs, emit_dir, emit_mode;
  emitc->add_option("ontology", emit_in, "KIF file")->required();
  emitc->add_option("--cqs", emit_cqs, "CQ corpus")->required();
  emitc->add_option("-o,--output", emit_dir, "problem directory")->required();
  emitc->add_option("--mode", emit_mode, "mode label for the problem headers");

  // run
  auto* run = app.add_subcommand("run", "evaluate CQs with the structural oracle or an external prover");
  std::string run_in, run_cqs, run_journal, run_work;
  bool run_oracle = false, run_resume = false, run_no_short = false;
  ProverFlags run_prover;
  run->add_option("ontology", run_in, "KIF file")->required();
  run->add_option("--cqs", run_cqs, "CQ corpus")->required();
  run->add_option("--journal", run_journal, "results journal (JSON lines)")->required();
  run->add_flag("--oracle", run_oracle, "decide from the taxonomy instead of running a prover");
  run_prover.attach(run);
  run->add_option("--work-dir", run_work, "where problem files are written");
  run->add_flag("--resume", run_resume, "skip tests already in the journal");
  run->add_flag("--no-short-circuit", run_no_short, "run the falsity test even when the truth test proved");

  // report
  auto* report = app.add_subcommand("report", "competency and efficiency tables from a journal");
  std::string rep_journal, rep_baseline, rep_cqs, rep_out;
  bool rep_efficiency = false, rep_csv = false;
  report->add_option("--journal", rep_journal, "results journal")->required();
  report->add_option("--baseline", rep_baseline, "baseline journal for exclusive counts");
  report->add_option("--cqs", rep_cqs, "CQ corpus, to detect missing results");
  report->add_flag("--efficiency", rep_efficiency, "time and axiom usage table instead of competency");
  report->add_flag("--csv", rep_csv, "CSV instead of an aligned table");
  report->add_option("-o,--output", rep_out, "output file");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "run every stage from a config file");
  std::string pipe_config;
  pipe->add_option("config", pipe_config, "key = value config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(cwa::ExitCode::usage);
  }

  try {
    if (*parse) {
      cwa::Ontology o = cwa::load_ontology(parse_in);
      cwa::Taxonomy tax = cwa::build_taxonomy(o);
      for (const auto& w : tax.warnings()) std::cerr << "warning: " << w << "\n";
      if (parse_print) std::cout << cwa::serialize_kif(o);
      if (parse_dot) std::cout << tax.to_dot();
      if (parse_edges) std::cout << tax.to_tsv();
      if (!parse_print && !parse_dot && !parse_edges) {
        std::cout << "axioms\t" << o.size() << "\nclasses\t" << tax.size() << "\nsubclass edges\t" << tax.edge_count()
                  << "\n";
        for (const auto& p : tax.find_conflicts()) std::cout << "conflict\t" << p << "\n";
      }
    } else if (*stats) {
      std::vector<std::pair<std::string, cwa::SizeStats>> versions;
      std::string extra;
      if (stats_modes) {
        if (stats_in.size() != 1) throw CLI::ValidationError("--modes takes exactly one ontology");
        cwa::Ontology o = cwa::load_ontology(stats_in[0]);
        cwa::CurationFile cur = cwa::load_curation(opt_path(stats_curation));
        cwa::ClosureOptions opts;
        opts.prune = !stats_no_prune;
        extra = "\nmode\tgenerated\tunpruned\n";
        for (auto m : cwa::all_closure_modes()) {
          cwa::ClosureResult r = cwa::apply_closure(o, m, cur, opts);
          versions.emplace_back(std::string(cwa::to_string(m)), cwa::count_metrics(r.ontology));
          extra += std::string(cwa::to_string(m)) + "\t" + std::to_string(r.generated) + "\t" +
                   std::to_string(r.unpruned) + "\n";
        }
      } else {
        for (const auto& f : stats_in) versions.emplace_back(f, cwa::count_metrics(cwa::load_ontology(f)));
      }
      emit(stats_csv ? cwa::size_table_csv(versions) : cwa::size_table_text(versions) + extra, stats_out);
    } else if (*close) {
      cwa::ClosureMode mode = cwa::closure_mode_from_string(close_mode);
      cwa::ClosureOptions opts;
      opts.prune = !close_no_prune;
      opts.strict_curation = close_strict;
      cwa::ClosureResult r =
          cwa::apply_closure(cwa::load_ontology(close_in), mode, cwa::load_curation(opt_path(close_curation)), opts);
      for (const auto& n : r.notes) std::cerr << "note: " << n << "\n";
      emit(cwa::serialize_kif(r.ontology), close_out);
    } else if (*suggest) {
      cwa::ClosureMode mode = cwa::closure_mode_from_string(suggest_mode);
      cwa::Taxonomy tax = cwa::build_taxonomy(cwa::load_ontology(suggest_in));
      cwa::CurationSuggestion s = cwa::suggest_curation(tax, mode);
      std::string text = s.candidates.to_kif();
      for (const auto& p : s.undecided) text += "; undecided: " + p.first + " " + p.second + "\n";
      emit(text, suggest_out);
    } else if (*gencq) {
      cwa::CqSources src;
      src.mapping = gen_mapping;
      if (!gen_hypo.empty()) src.relations[cwa::RelationKind::hyponymy] = gen_hypo;
      if (!gen_anto.empty()) src.relations[cwa::RelationKind::antonymy] = gen_anto;
      for (const auto& r : gen_relations) {
        auto eq = r.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--relation expects KIND=FILE");
        src.relations[cwa::relation_kind_from_string(r.substr(0, eq))] = r.substr(eq + 1);
      }
      src.templates = opt_path(gen_templates);
      cwa::CqGeneration g = cwa::generate_cqs(src);
      std::cerr << cwa::generation_stats_text(g.stats);
      emit(cwa::write_cq_corpus(g.cqs), gen_out);
    } else if (*emitc) {
      cwa::TptpEmitter emitter(cwa::load_ontology(emit_in));
      auto jobs = cwa::emit_problems(emitter, load_cqs(emit_cqs), emit_mode, emit_dir);
      std::cerr << jobs.size() << " problems written to " << emit_dir << "\n";
    } else if (*run) {
      cwa::Ontology o = cwa::load_ontology(run_in);
      auto cqs = load_cqs(run_cqs);
      std::vector<cwa::Verdict> verdicts;
      if (run_oracle) {
        cwa::OracleRun r = cwa::run_oracle(cwa::build_taxonomy(o), cqs);
        cwa::write_file(run_journal, cwa::journal_text(r.verdicts));
        if (!r.unrecognized.empty())
          std::cerr << r.unrecognized.size() << " CQ(s) outside the structural fragment recorded as gave-up\n";
        verdicts = std::move(r.verdicts);
      } else {
        if (run_prover.command.empty()) throw CLI::ValidationError("run needs --oracle or --prover");
        cwa::ProverConfig cfg = run_prover.config();
        cwa::TptpEmitter emitter(o);
        fs::path work = run_work.empty() ? fs::path(run_journal).parent_path() / "problems" : fs::path(run_work);
        auto jobs = cwa::emit_problems(emitter, cqs, "", work);
        std::set<std::string> names;
        for (const auto& [n, id] : emitter.axiom_names()) names.insert(n);
        if (fs::path(run_journal).has_parent_path()) fs::create_directories(fs::path(run_journal).parent_path());
        verdicts = cwa::run_prover_batch(jobs, cfg, run_journal, !run_no_short, run_resume, names);
      }
      for (const auto& v : verdicts) std::cout << v.cq_id << "\t" << cwa::to_string(v.value) << "\n";
      cwa::require_no_contradictions(verdicts);
    } else if (*report) {
      auto records = cwa::read_journal_file(rep_journal);
      if (rep_efficiency) {
        cwa::EfficiencyReport e = cwa::efficiency_report(records);
        emit(rep_csv ? e.to_csv() : e.to_text(), rep_out);
      } else {
        auto verdicts = cwa::verdicts_from_journal(records);
        std::optional<std::vector<cwa::Verdict>> baseline;
        if (!rep_baseline.empty()) baseline = cwa::verdicts_from_journal(cwa::read_journal_file(rep_baseline));
        std::optional<std::vector<std::string>> expected;
        if (!rep_cqs.empty()) {
          expected.emplace();
          for (const auto& q : load_cqs(rep_cqs)) expected->push_back(q.id);
        }
        cwa::CompetencyReport r =
            cwa::competency_report(verdicts, baseline ? &*baseline : nullptr, expected ? &*expected : nullptr);
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        emit(rep_csv ? r.to_csv() : r.to_text(), rep_out);
      }
    } else if (*pipe) {
      cwa::PipelineConfig cfg = cwa::run_stage("config", [&] {
        try {
          return cwa::load_pipeline_config(pipe_config);
        } catch (const cwa::ConfigError& e) {
          if (std::string(e.what()).find("prover") != std::string::npos) throw cwa::ProverError(e.what());
          throw;
        }
      });
      for (const auto& line : cwa::run_pipeline(cfg).log) std::cerr << line << "\n";
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(cwa::ExitCode::usage);
  } catch (const cwa::StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const cwa::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(cwa::ExitCode::usage);
  } catch (const cwa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(cwa::exit_code_for(e));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(cwa::ExitCode::data);
  }
  return 0;
}
