#pragma once

// External prover harness, dual-test verdicts and the structural oracle.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cwa/cq.hpp"
#include "cwa/error.hpp"
#include "cwa/kif.hpp"
#include "cwa/taxonomy.hpp"
#include "cwa/tptp.hpp"

namespace cwa {

struct ProverConfig {
  std::string command;  // e.g. "vampire --mode casc -t {timeout} -m {memory} {problem}"
  double time_limit = 300.0;
  std::size_t memory_mb = 2048;
  std::size_t workers = 1;
  double grace = 5.0;

  void validate() const {
    if (!(time_limit > 0)) throw ConfigError("prover time limit must be positive");
    if (workers == 0) throw ConfigError("prover worker count must be positive");
    std::size_t n = 0;
    for (auto pos = command.find("{problem}"); pos != std::string::npos; pos = command.find("{problem}", pos + 1)) ++n;
    if (n != 1) throw ConfigError("prover command must contain {problem} exactly once");
  }
};

enum class ProverStatus { proved, counter_satisfiable, timeout, gave_up, error };

inline std::string_view to_string(ProverStatus s) {
  switch (s) {
    case ProverStatus::proved: return "proved";
    case ProverStatus::counter_satisfiable: return "counter-satisfiable";
    case ProverStatus::timeout: return "timeout";
    case ProverStatus::gave_up: return "gave-up";
    case ProverStatus::error: return "error";
  }
  return "error";
}

inline ProverStatus prover_status_from_string(std::string_view s) {
  for (auto st : {ProverStatus::proved, ProverStatus::counter_satisfiable, ProverStatus::timeout, ProverStatus::gave_up,
                  ProverStatus::error})
    if (to_string(st) == s) return st;
  throw Error("unknown prover status: " + std::string(s));
}

struct ProverOutcome {
  ProverStatus status = ProverStatus::error;
  double seconds = 0.0;
  std::vector<std::string> used_axioms;
  std::string szs;     // raw SZS status word, if any
  std::string output;  // captured output, kept for errors only
  int exit_code = 0;
  bool killed = false;
};

// SZS status word to outcome status; nullopt for words we do not know.
inline std::optional<ProverStatus> map_szs(std::string_view word) {
  if (word == "Theorem" || word == "Unsatisfiable" || word == "ContradictoryAxioms") return ProverStatus::proved;
  if (word == "CounterSatisfiable" || word == "Satisfiable") return ProverStatus::counter_satisfiable;
  if (word == "Timeout") return ProverStatus::timeout;
  if (word == "GaveUp" || word == "ResourceOut" || word == "MemoryOut" || word == "Unknown" || word == "Incomplete" ||
      word == "Inappropriate")
    return ProverStatus::gave_up;
  if (word == "Error" || word == "OSError" || word == "InputError" || word == "SyntaxError") return ProverStatus::error;
  return std::nullopt;
}

// First `SZS status <Word>` occurrence.
inline std::optional<std::string> find_szs_status(std::string_view output) {
  static const std::regex re(R"(SZS status\s+([A-Za-z]+))");
  std::cmatch m;
  if (std::regex_search(output.begin(), output.end(), m, re)) return m[1].str();
  return std::nullopt;
}

// Axiom names cited by a proof: input formulas with role axiom, and names in
// file(..., name) source annotations. Restricted to `known` when non-empty.
inline std::vector<std::string> extract_used_axioms(std::string_view output, const std::set<std::string>& known = {}) {
  std::string_view body = output;
  auto start = output.find("SZS output start");
  if (start != std::string_view::npos) {
    auto end = output.find("SZS output end", start);
    body = output.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
  }
  static const std::regex role(R"((?:fof|cnf)\(\s*([A-Za-z0-9_]+)\s*,\s*axiom\s*,)");
  static const std::regex file(R"(file\(\s*[^,()]*,\s*([A-Za-z0-9_]+)\s*\))");
  std::set<std::string> names;
  std::string text(body);
  for (const auto* re : {&role, &file})
    for (std::sregex_iterator it(text.begin(), text.end(), *re), end; it != end; ++it) names.insert((*it)[1].str());
  std::vector<std::string> out;
  for (const auto& n : names)
    if (known.empty() || known.count(n)) out.push_back(n);
  return out;
}

inline std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

inline std::string expand_command(const ProverConfig& config, const std::string& problem) {
  std::string cmd = config.command;
  auto replace = [&](std::string_view key, const std::string& value) {
    for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key, pos + value.size()))
      cmd.replace(pos, key.size(), value);
  };
  replace("{timeout}", std::to_string(static_cast<long>(std::ceil(config.time_limit))));
  replace("{memory}", std::to_string(config.memory_mb));
  replace("{problem}", shell_quote(problem));
  return cmd;
}

namespace detail {

// Runs `/bin/sh -c cmd` in its own process group with an address-space cap.
// SIGTERM goes to the group at the limit, SIGKILL after the grace period.
struct ProcessResult {
  std::string output;
  int exit_code = -1;
  bool killed = false;
  double seconds = 0.0;
};

inline ProcessResult run_process(const std::string& cmd, double limit, double grace, std::size_t memory_mb) {
  int fds[2];
  if (pipe(fds) != 0) throw Error(std::string("pipe failed: ") + std::strerror(errno));
  auto t0 = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw Error(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);
    if (memory_mb > 0) {
      rlimit rl{};
      rl.rlim_cur = rl.rlim_max = static_cast<rlim_t>(memory_mb) * 1024 * 1024;
      setrlimit(RLIMIT_AS, &rl);
    }
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    int devnull = open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(fds[1]);
  ProcessResult r;
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  bool termed = false;
  bool eof = false;
  bool reaped = false;
  int wstatus = 0;
  char buf[65536];
  while (!eof || !reaped) {
    double now = elapsed();
    if (!termed && now >= limit) {
      killpg(pid, SIGTERM);
      termed = r.killed = true;
    }
    if (termed && now >= limit + grace) {
      killpg(pid, SIGKILL);
    }
    if (!reaped) {
      pid_t w = waitpid(pid, &wstatus, WNOHANG);
      if (w == pid) {
        reaped = true;
        r.seconds = elapsed();
        // Stragglers left behind by the shell would keep the pipe open.
        killpg(pid, SIGKILL);
      }
    }
    if (!eof) {
      double next = termed ? limit + grace : limit;
      int wait_ms = static_cast<int>(std::clamp((next - now) * 1000.0, 1.0, 50.0));
      pollfd p{fds[0], POLLIN, 0};
      int rc = poll(&p, 1, wait_ms);
      if (rc > 0) {
        ssize_t n = read(fds[0], buf, sizeof buf);
        if (n > 0) r.output.append(buf, static_cast<std::size_t>(n));
        else if (n == 0 || (errno != EINTR && errno != EAGAIN)) eof = true;
      }
    } else if (!reaped) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  close(fds[0]);
  if (WIFEXITED(wstatus)) r.exit_code = WEXITSTATUS(wstatus);
  else if (WIFSIGNALED(wstatus)) r.exit_code = 128 + WTERMSIG(wstatus);
  return r;
}

}  // namespace detail

inline ProverOutcome run_prover(const std::string& problem_path, const ProverConfig& config,
                                const std::set<std::string>& axiom_names = {}) {
  config.validate();
  ProverOutcome out;
  if (!std::filesystem::exists(problem_path)) {
    out.status = ProverStatus::error;
    out.output = "problem file not found: " + problem_path;
    return out;
  }
  detail::ProcessResult p;
  try {
    p = detail::run_process(expand_command(config, problem_path), config.time_limit, config.grace, config.memory_mb);
  } catch (const Error& e) {
    out.status = ProverStatus::error;
    out.output = e.what();
    return out;
  }
  out.seconds = p.seconds;
  out.exit_code = p.exit_code;
  out.killed = p.killed;
  auto word = find_szs_status(p.output);
  std::optional<ProverStatus> mapped = word ? map_szs(*word) : std::nullopt;
  if (word) out.szs = *word;
  if (mapped) {
    out.status = *mapped;
  } else if (p.killed) {
    out.status = ProverStatus::timeout;
  } else {
    out.status = ProverStatus::error;
  }
  if (out.status == ProverStatus::proved) out.used_axioms = extract_used_axioms(p.output, axiom_names);
  if (out.status == ProverStatus::error) {
    constexpr std::size_t keep = 64 * 1024;
    out.output = p.output.size() > keep ? p.output.substr(0, keep) : p.output;
    if (!word && out.output.empty()) out.output = "no SZS status; exit code " + std::to_string(p.exit_code);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class VerdictValue { passing, non_passing, unknown, contradictory };

inline std::string_view to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::passing: return "passing";
    case VerdictValue::non_passing: return "non-passing";
    case VerdictValue::unknown: return "unknown";
    case VerdictValue::contradictory: return "contradictory";
  }
  return "unknown";
}

inline VerdictValue classify(bool truth_proved, bool falsity_proved) {
  if (truth_proved && falsity_proved) return VerdictValue::contradictory;
  if (truth_proved) return VerdictValue::passing;
  if (falsity_proved) return VerdictValue::non_passing;
  return VerdictValue::unknown;
}

struct Verdict {
  std::string cq_id;
  std::string pattern;
  VerdictValue value = VerdictValue::unknown;
  std::optional<ProverOutcome> truth;
  std::optional<ProverOutcome> falsity;  // absent when short-circuited

  bool truth_proved() const { return truth && truth->status == ProverStatus::proved; }
  bool falsity_proved() const { return falsity && falsity->status == ProverStatus::proved; }
  bool resolved() const { return value == VerdictValue::passing || value == VerdictValue::non_passing; }
};

// One line of the results journal.
struct JournalRecord {
  std::string cq_id;
  std::string pattern;
  Polarity polarity = Polarity::truth;
  ProverOutcome outcome;
};

inline nlohmann::json to_json(const JournalRecord& r) {
  nlohmann::json j;
  j["cq"] = r.cq_id;
  j["pattern"] = r.pattern;
  j["polarity"] = std::string(to_string(r.polarity));
  j["status"] = std::string(to_string(r.outcome.status));
  j["seconds"] = r.outcome.seconds;
  j["used"] = r.outcome.used_axioms;
  if (!r.outcome.szs.empty()) j["szs"] = r.outcome.szs;
  if (r.outcome.status == ProverStatus::error && !r.outcome.output.empty()) j["output"] = r.outcome.output;
  return j;
}

inline JournalRecord journal_record_from_json(const nlohmann::json& j) {
  JournalRecord r;
  r.cq_id = j.at("cq").get<std::string>();
  r.pattern = j.value("pattern", "");
  r.polarity = polarity_from_string(j.at("polarity").get<std::string>());
  r.outcome.status = prover_status_from_string(j.at("status").get<std::string>());
  r.outcome.seconds = j.value("seconds", 0.0);
  if (j.contains("used")) r.outcome.used_axioms = j.at("used").get<std::vector<std::string>>();
  r.outcome.szs = j.value("szs", "");
  r.outcome.output = j.value("output", "");
  return r;
}

inline std::string journal_line(const JournalRecord& r) { return to_json(r).dump() + "\n"; }

// Reads a JSONL journal; a truncated final line from an interrupted run is
// ignored, any other malformed line is an error.
inline std::vector<JournalRecord> read_journal(std::istream& in) {
  std::vector<JournalRecord> out;
  std::string line;
  std::size_t n = 0;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  for (const auto& l : lines) {
    ++n;
    if (detail::trim(l).empty()) continue;
    try {
      out.push_back(journal_record_from_json(nlohmann::json::parse(l)));
    } catch (const std::exception& e) {
      if (n == lines.size()) break;
      throw MalformedRowError(std::string("bad journal record: ") + e.what(), n);
    }
  }
  return out;
}

inline std::vector<JournalRecord> read_journal_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read journal " + path.string());
  return read_journal(in);
}

// Pairs the truth and falsity records of each CQ, in first-seen order.
// Later records for the same (CQ, polarity) replace earlier ones.
inline std::vector<Verdict> verdicts_from_journal(const std::vector<JournalRecord>& records) {
  std::vector<Verdict> out;
  std::map<std::string, std::size_t> pos;
  for (const auto& r : records) {
    auto it = pos.find(r.cq_id);
    if (it == pos.end()) {
      it = pos.emplace(r.cq_id, out.size()).first;
      out.push_back(Verdict{r.cq_id, r.pattern, VerdictValue::unknown, std::nullopt, std::nullopt});
    }
    Verdict& v = out[it->second];
    (r.polarity == Polarity::truth ? v.truth : v.falsity) = r.outcome;
  }
  for (auto& v : out) v.value = classify(v.truth_proved(), v.falsity_proved());
  return out;
}

// ---------------------------------------------------------------------------
// Batch evaluation

struct ProverJob {
  std::string cq_id;
  std::string pattern;
  Polarity polarity = Polarity::truth;
  std::string problem_path;
};

// Serializes journal appends from concurrent workers.
class JournalWriter {
 public:
  explicit JournalWriter(const std::filesystem::path& path) : out_(path, std::ios::app) {
    if (!out_) throw Error("cannot open journal " + path.string());
  }

  void append(const JournalRecord& r) {
    std::lock_guard lock(mutex_);
    out_ << journal_line(r);
    out_.flush();
  }

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

// Runs jobs over a fixed pool of workers. Jobs already present in the
// journal are skipped when `resume` is set; returns the new records in job
// order.
inline std::vector<JournalRecord> run_jobs(const std::vector<ProverJob>& jobs, const ProverConfig& config,
                                           const std::filesystem::path& journal, bool resume,
                                           const std::set<std::string>& axiom_names = {}) {
  config.validate();
  std::set<std::pair<std::string, Polarity>> done;
  if (resume && std::filesystem::exists(journal))
    for (const auto& r : read_journal_file(journal)) done.emplace(r.cq_id, r.polarity);
  if (!resume) std::ofstream(journal, std::ios::trunc);
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!done.count({jobs[i].cq_id, jobs[i].polarity})) todo.push_back(i);
  std::vector<std::optional<JournalRecord>> results(jobs.size());
  JournalWriter writer(journal);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < todo.size(); k = next++) {
      const ProverJob& job = jobs[todo[k]];
      JournalRecord rec{job.cq_id, job.pattern, job.polarity, run_prover(job.problem_path, config, axiom_names)};
      writer.append(rec);
      results[todo[k]] = std::move(rec);
    }
  };
  std::vector<std::thread> pool;
  std::size_t n = std::min(config.workers, std::max<std::size_t>(todo.size(), 1));
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::vector<JournalRecord> out;
  for (auto& r : results)
    if (r) out.push_back(std::move(*r));
  return out;
}

struct EvaluateOptions {
  bool short_circuit = true;
  std::string mode;
  std::filesystem::path work_dir = std::filesystem::temp_directory_path();
};

inline std::string problem_file_name(const std::string& cq_id, Polarity p) {
  return SymbolTable::sanitize(cq_id) + "." + std::string(to_string(p)) + ".p";
}

// Truth test first, then the falsity test unless the first proved and
// short-circuiting is on.
inline Verdict evaluate_cq(const TptpEmitter& emitter, const CompetencyQuestion& cq, const ProverConfig& config,
                           const EvaluateOptions& options = {}) {
  std::set<std::string> names;
  for (const auto& [n, id] : emitter.axiom_names()) names.insert(n);
  std::filesystem::create_directories(options.work_dir);
  auto run = [&](const Formula& f, Polarity p) {
    auto path = options.work_dir / problem_file_name(cq.id, p);
    {
      std::ofstream out(path);
      out << emitter.problem(f, ProblemMetadata{cq.id, cq.pattern, options.mode, p});
    }
    return run_prover(path.string(), config, names);
  };
  Verdict v{cq.id, cq.pattern, VerdictValue::unknown, std::nullopt, std::nullopt};
  v.truth = run(cq.truth_test, Polarity::truth);
  if (!(options.short_circuit && v.truth_proved())) v.falsity = run(cq.falsity_test, Polarity::falsity);
  v.value = classify(v.truth_proved(), v.falsity_proved());
  return v;
}

// Throws naming every contradictory CQ.
inline void require_no_contradictions(const std::vector<Verdict>& verdicts) {
  std::string names;
  for (const auto& v : verdicts)
    if (v.value == VerdictValue::contradictory) names += " " + v.cq_id;
  if (!names.empty()) throw InconsistencyError("both tests proved for:" + names);
}

// ---------------------------------------------------------------------------
// Structural oracle

enum class OracleAnswer { truth_proved, falsity_proved, unknown, contradictory };

inline std::string_view to_string(OracleAnswer a) {
  switch (a) {
    case OracleAnswer::truth_proved: return "truth-proved";
    case OracleAnswer::falsity_proved: return "falsity-proved";
    case OracleAnswer::unknown: return "unknown";
    case OracleAnswer::contradictory: return "contradictory";
  }
  return "unknown";
}

enum class CqShape { common_instance, subsumption, distinctness };

struct RecognizedCq {
  CqShape shape;
  std::string c1;
  std::string c2;
};

namespace detail {

inline std::optional<std::pair<std::string, std::string>> instance_of(const Formula& f) {
  if (f.kind != Formula::Kind::atom || structural_name(f.predicate) != "instance" || f.terms.size() != 2) return std::nullopt;
  if (f.terms[0].kind != Term::Kind::variable || f.terms[1].kind != Term::Kind::constant) return std::nullopt;
  return std::pair{f.terms[0].name, f.terms[1].name};
}

}  // namespace detail

// Recognizes the three conjecture shapes the oracle decides:
//   (exists (?X) (and (instance ?X A) (instance ?X B)))
//   (forall (?X) (=> (instance ?X A) (instance ?X B)))
//   (forall (?X ?Y) (=> (and (instance ?X A) (instance ?Y B)) (not (equal ?X ?Y))))
inline std::optional<RecognizedCq> recognize_cq(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind == K::existential && f.variables.size() == 1) {
    const Formula& b = f.children[0];
    if (b.kind != K::conjunction || b.children.size() != 2) return std::nullopt;
    auto x = detail::instance_of(b.children[0]);
    auto y = detail::instance_of(b.children[1]);
    if (x && y && x->first == f.variables[0] && y->first == f.variables[0])
      return RecognizedCq{CqShape::common_instance, x->second, y->second};
    return std::nullopt;
  }
  if (f.kind != K::universal) return std::nullopt;
  const Formula& b = f.children[0];
  if (b.kind != K::implication) return std::nullopt;
  const Formula& lhs = b.children[0];
  const Formula& rhs = b.children[1];
  if (f.variables.size() == 1) {
    auto x = detail::instance_of(lhs);
    auto y = detail::instance_of(rhs);
    if (x && y && x->first == f.variables[0] && y->first == f.variables[0])
      return RecognizedCq{CqShape::subsumption, x->second, y->second};
    return std::nullopt;
  }
  if (f.variables.size() == 2 && f.variables[0] != f.variables[1]) {
    if (lhs.kind != K::conjunction || lhs.children.size() != 2) return std::nullopt;
    if (rhs.kind != K::negation || rhs.children[0].kind != K::equal) return std::nullopt;
    auto x = detail::instance_of(lhs.children[0]);
    auto y = detail::instance_of(lhs.children[1]);
    const auto& eq = rhs.children[0].terms;
    if (!x || !y || x->first == y->first) return std::nullopt;
    std::set<std::string> bound(f.variables.begin(), f.variables.end());
    std::set<std::string> used{x->first, y->first};
    std::set<std::string> compared;
    for (const auto& t : eq)
      if (t.kind == Term::Kind::variable) compared.insert(t.name);
    if (bound == used && used == compared) return RecognizedCq{CqShape::distinctness, x->second, y->second};
  }
  return std::nullopt;
}

namespace detail {

// Every model has an instance of a outside b.
inline bool forced_outside(const Taxonomy& tax, std::size_t a, std::size_t b) {
  const Bitset& outside = tax.disjoint_partners(b);
  if (tax.descendants(a).intersects(outside)) return true;
  const auto& facts = tax.facts();
  for (const auto& p : facts.nondisjoint) {
    std::size_t m1 = tax.index_of(p.first);
    std::size_t m2 = tax.index_of(p.second);
    if ((tax.ancestors(m1).test(a) && outside.test(m2)) || (tax.ancestors(m2).test(a) && outside.test(m1))) return true;
  }
  for (const auto& p : facts.inheritable_nondisjoint) {
    std::size_t i1 = tax.index_of(p.first);
    std::size_t i2 = tax.index_of(p.second);
    if ((tax.share_descendant(i1, a) && tax.descendants(i2).intersects(outside)) ||
        (tax.share_descendant(i2, a) && tax.descendants(i1).intersects(outside)))
      return true;
  }
  return false;
}

}  // namespace detail

// Decides a recognized conjecture from the taxonomy alone. Any structural
// conflict makes the fragment inconsistent, reported as contradictory.
// Classes unknown to the taxonomy are treated as isolated.
inline OracleAnswer oracle_entails(const Taxonomy& tax, const Formula& conjecture) {
  auto shape = recognize_cq(conjecture);
  if (!shape) throw UnrecognizedShapeError("conjecture shape not decidable structurally: " + to_kif(conjecture));
  if (!tax.consistent()) return OracleAnswer::contradictory;
  const bool known = tax.has_class(shape->c1) && tax.has_class(shape->c2);
  const bool same = shape->c1 == shape->c2;
  switch (shape->shape) {
    case CqShape::common_instance:
    case CqShape::distinctness: {
      PairStatus s = known ? tax.pair_status(shape->c1, shape->c2) : same ? PairStatus::nondisjoint : PairStatus::open;
      bool common = shape->shape == CqShape::common_instance;
      if (s == PairStatus::nondisjoint) return common ? OracleAnswer::truth_proved : OracleAnswer::falsity_proved;
      if (s == PairStatus::disjoint) return common ? OracleAnswer::falsity_proved : OracleAnswer::truth_proved;
      return OracleAnswer::unknown;
    }
    case CqShape::subsumption: {
      if (same) return OracleAnswer::truth_proved;
      if (!known) return OracleAnswer::unknown;
      if (tax.subclass_closed(shape->c1, shape->c2)) return OracleAnswer::truth_proved;
      if (detail::forced_outside(tax, tax.index_of(shape->c1), tax.index_of(shape->c2)))
        return OracleAnswer::falsity_proved;
      return OracleAnswer::unknown;
    }
  }
  return OracleAnswer::unknown;
}

inline OracleAnswer oracle_entails(const Taxonomy& tax, const CompetencyQuestion& cq) {
  return oracle_entails(tax, cq.conjecture);
}

// Oracle answer as a journal-compatible verdict: the proved test gets status
// proved, the other counter-satisfiable; undecided tests get gave-up.
inline Verdict oracle_verdict(const Taxonomy& tax, const CompetencyQuestion& cq) {
  OracleAnswer a = oracle_entails(tax, cq);
  auto outcome = [](ProverStatus s) {
    ProverOutcome o;
    o.status = s;
    return o;
  };
  Verdict v{cq.id, cq.pattern, VerdictValue::unknown, std::nullopt, std::nullopt};
  switch (a) {
    case OracleAnswer::truth_proved:
      v.truth = outcome(ProverStatus::proved);
      v.falsity = outcome(ProverStatus::counter_satisfiable);
      break;
    case OracleAnswer::falsity_proved:
      v.truth = outcome(ProverStatus::counter_satisfiable);
      v.falsity = outcome(ProverStatus::proved);
      break;
    case OracleAnswer::contradictory:
      v.truth = outcome(ProverStatus::proved);
      v.falsity = outcome(ProverStatus::proved);
      break;
    case OracleAnswer::unknown:
      v.truth = outcome(ProverStatus::gave_up);
      v.falsity = outcome(ProverStatus::gave_up);
      break;
  }
  v.value = classify(v.truth_proved(), v.falsity_proved());
  return v;
}

inline std::vector<JournalRecord> journal_records(const Verdict& v) {
  std::vector<JournalRecord> out;
  if (v.truth) out.push_back(JournalRecord{v.cq_id, v.pattern, Polarity::truth, *v.truth});
  if (v.falsity) out.push_back(JournalRecord{v.cq_id, v.pattern, Polarity::falsity, *v.falsity});
  return out;
}

// ---------------------------------------------------------------------------
// Consistency signals

struct ConsistencyReport {
  std::vector<std::string> contradictory;
  std::vector<std::string> lost_vs_baseline;  // resolved in the baseline, not here
  std::optional<ProverOutcome> satisfiability;

  bool clean() const {
    return contradictory.empty() && lost_vs_baseline.empty() &&
           (!satisfiability || satisfiability->status != ProverStatus::proved);
  }

  std::string to_text() const {
    std::string out;
    for (const auto& id : contradictory) out += "contradictory\t" + id + "\n";
    for (const auto& id : lost_vs_baseline) out += "unresolved-vs-baseline\t" + id + "\n";
    if (satisfiability) out += "satisfiability\t" + std::string(to_string(satisfiability->status)) + "\n";
    return out;
  }
};

inline ConsistencyReport check_consistency_signals(const std::vector<Verdict>& verdicts,
                                                   const std::vector<Verdict>* baseline = nullptr,
                                                   std::optional<ProverOutcome> satisfiability = std::nullopt) {
  ConsistencyReport r;
  std::set<std::string> resolved;
  for (const auto& v : verdicts) {
    if (v.value == VerdictValue::contradictory) r.contradictory.push_back(v.cq_id);
    if (v.resolved()) resolved.insert(v.cq_id);
  }
  if (baseline) {
    for (const auto& b : *baseline)
      if (b.resolved() && !resolved.count(b.cq_id)) r.lost_vs_baseline.push_back(b.cq_id);
  }
  r.satisfiability = std::move(satisfiability);
  return r;
}

// Runs the prover on the ontology with a `$false` conjecture; proved means
// the axioms are contradictory, counter-satisfiable that a model exists.
inline ProverOutcome run_satisfiability_check(const Ontology& ontology, const ProverConfig& config,
                                              const std::filesystem::path& work_dir) {
  std::filesystem::create_directories(work_dir);
  auto path = work_dir / "satisfiability.p";
  std::ofstream(path) << "% satisfiability check\n" << TptpEmitter(ontology).axiom_lines()
                       << "fof(goal, conjecture, $false).\n";
  return run_prover(path.string(), config);
}

}  // namespace cwa
