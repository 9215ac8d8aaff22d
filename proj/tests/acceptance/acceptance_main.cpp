// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
//
// A real prover is used for the trichotomy check only when
// CWA_PROVER_COMMAND is set (10 s per test).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cwa/cwa.hpp"
#include "fixtures.hpp"
#include "random_taxonomy.hpp"
#include "small_model.hpp"

using namespace cwa;
using cwa::testing::fixture_ontology;
using cwa::testing::fixture_path;
using cwa::testing::fixture_text;
using cwa::testing::TempDir;

namespace {

constexpr unsigned kSeed = 20260101;
constexpr int kRandomTaxonomies = 200;

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<ClosureMode> kDisjointModes{ClosureMode::subclass_disjointness, ClosureMode::subclass_nondisjointness};

CompetencyQuestion birth_death_cq() {
  MappingIndex m(load_mapping(fixture_text("mapping.tsv")));
  auto cqs = gen_antonymy_cqs(load_synset_relations(fixture_text("antonymy.tsv"), RelationKind::antonymy), m);
  if (cqs.size() != 1) throw Error("antonymy fixture should give one CQ");
  return cqs[0];
}

std::vector<TaxonomyFacts> random_corpus() {
  std::mt19937 rng(kSeed);
  std::vector<TaxonomyFacts> out;
  for (int i = 0; i < kRandomTaxonomies; ++i) out.push_back(cwa::testing::random_facts(rng));
  return out;
}

CurationFile auto_curation(const Taxonomy& tax, ClosureMode mode) {
  return mode == ClosureMode::subclass_disjointness ? suggest_curation(tax, mode).candidates : CurationFile{};
}

// A CQ corpus over a fixture ontology: every class maps to itself by
// equivalence, every sibling pair is an antonymy pair, every edge a
// hyponymy pair.
std::vector<CompetencyQuestion> synthetic_corpus(const Taxonomy& tax) {
  auto synset = [](const std::string& c) {
    std::string s;
    for (char ch : c) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s + "#n#1";
  };
  std::string mapping, antonymy, hyponymy;
  for (const auto& c : tax.classes()) {
    mapping += synset(c) + "\t" + c + "=\n";
    for (const auto& p : tax.direct_superclasses(c)) hyponymy += synset(c) + "\t" + synset(p) + "\n";
  }
  for (auto [a, b] : tax.sibling_pairs()) antonymy += synset(tax.name(a)) + "\t" + synset(tax.name(b)) + "\n";
  MappingIndex m(load_mapping(mapping));
  auto pairs = load_synset_relations(hyponymy, RelationKind::hyponymy);
  auto ant = load_synset_relations(antonymy, RelationKind::antonymy);
  pairs.insert(pairs.end(), ant.begin(), ant.end());
  auto out = gen_hyponymy_qp1(pairs, m);
  for (auto* gen : {&gen_hyponymy_qp2, &gen_antonymy_cqs}) {
    auto more = (*gen)(pairs, m, nullptr);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

struct Corpus {
  std::string name;
  Ontology ontology;
  std::vector<CompetencyQuestion> cqs;
};

std::vector<Corpus> fixture_corpora() {
  std::vector<Corpus> out;
  CqSources toy;
  toy.mapping = fixture_path("toy_mapping.tsv");
  toy.relations[RelationKind::antonymy] = fixture_path("toy_antonymy.tsv");
  toy.relations[RelationKind::hyponymy] = fixture_path("toy_hyponymy.tsv");
  out.push_back({"toy_ont_a", fixture_ontology("toy_ont_a.kif"), generate_cqs(toy).cqs});
  for (const char* name : {"agent.kif", "bloodcell.kif", "radiating.kif"}) {
    Ontology o = fixture_ontology(name);
    out.push_back({name, o, synthetic_corpus(build_taxonomy(o))});
  }
  return out;
}

std::size_t resolved(const Ontology& closed, const std::vector<CompetencyQuestion>& cqs) {
  Taxonomy t = build_taxonomy(closed);
  std::size_t n = 0;
  for (const auto& q : cqs) n += oracle_verdict(t, q).resolved();
  return n;
}

// ---------------------------------------------------------------------------

Check ac1() {
  Check c;
  auto t0 = Clock::now();
  Ontology toy = fixture_ontology("toy_ont_a.kif");
  CompetencyQuestion q = birth_death_cq();
  const std::map<ClosureMode, VerdictValue> want{{ClosureMode::owa, VerdictValue::unknown},
                                                 {ClosureMode::subclass_only, VerdictValue::unknown},
                                                 {ClosureMode::subclass_disjointness, VerdictValue::passing},
                                                 {ClosureMode::subclass_nondisjointness, VerdictValue::non_passing}};
  std::optional<ProverConfig> prover;
  if (const char* cmd = std::getenv("CWA_PROVER_COMMAND"); cmd && *cmd) {
    prover = ProverConfig{};
    prover->command = cmd;
    prover->time_limit = 10.0;
  }
  TempDir dir;
  std::string got;
  for (const auto& [mode, expected] : want) {
    Ontology closed = apply_closure(toy, mode, {}).ontology;
    VerdictValue v = oracle_verdict(build_taxonomy(closed), q).value;
    got += std::string(got.empty() ? "" : ", ") + std::string(to_string(v));
    c.expect(v == expected, "oracle " + std::string(to_string(mode)) + " gave " + std::string(to_string(v)));
    if (prover) {
      EvaluateOptions opt;
      opt.work_dir = dir / mode_file_name(mode);
      opt.mode = std::string(to_string(mode));
      VerdictValue pv = evaluate_cq(TptpEmitter(closed), q, *prover, opt).value;
      // a sound prover may stay undecided within the limit, never disagree
      c.expect(pv == expected || pv == VerdictValue::unknown,
               "prover " + std::string(to_string(mode)) + " gave " + std::string(to_string(pv)));
    }
  }
  double secs = seconds_since(t0);
  c.expect(secs < 60.0, "took " + std::to_string(secs) + " s");
  if (c.ok) c.detail = "oracle: " + got + (prover ? "; prover agreed" : "; no external prover configured");
  return c;
}

Check ac2(const std::vector<TaxonomyFacts>& corpus) {
  Check c;
  auto t0 = Clock::now();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < corpus.size() && c.ok; ++i) {
    Ontology o = cwa::testing::facts_ontology(corpus[i]);
    Taxonomy t = build_taxonomy(o);
    c.expect(t.find_conflicts().empty(), "generator produced a conflicting taxonomy #" + std::to_string(i));
    for (auto mode : kDisjointModes) {
      Taxonomy closed = build_taxonomy(apply_closure(o, mode, auto_curation(t, mode)).ontology);
      c.expect(closed.find_conflicts().empty(), "conflicts after " + std::string(to_string(mode)) + " on #" + std::to_string(i));
      for (auto [a, b] : closed.sibling_pairs()) {
        ++pairs;
        auto s = closed.pair_status(a, b);
        c.expect(s == PairStatus::disjoint || s == PairStatus::nondisjoint,
                 "open pair {" + closed.name(a) + ", " + closed.name(b) + "} after " + std::string(to_string(mode)) +
                     " on #" + std::to_string(i));
      }
    }
  }
  double secs = seconds_since(t0);
  c.expect(secs < 300.0, "took " + std::to_string(secs) + " s");
  if (c.ok) c.detail = std::to_string(corpus.size()) + " taxonomies x 2 modes, " + std::to_string(pairs) + " sibling pairs decided";
  return c;
}

Check ac3(const std::vector<TaxonomyFacts>& corpus) {
  Check c;
  auto t0 = Clock::now();
  std::size_t compared = 0;
  auto compare = [&](const TaxonomyFacts& f, const std::string& label) {
    Taxonomy t(f);
    cwa::testing::SmallModel m(f);
    for (const auto& a : t.classes())
      for (const auto& b : t.classes()) {
        ++compared;
        if (t.pair_status(a, b) != m.status(a, b))
          c.fail(label + ": {" + a + ", " + b + "} " + std::string(to_string(t.pair_status(a, b))) + " vs " +
                 std::string(to_string(m.status(a, b))));
      }
  };
  for (std::size_t i = 0; i < corpus.size() && c.ok; ++i) {
    compare(corpus[i], "#" + std::to_string(i));
    Ontology o = cwa::testing::facts_ontology(corpus[i]);
    Taxonomy t = build_taxonomy(o);
    for (auto mode : kDisjointModes)
      compare(build_taxonomy(apply_closure(o, mode, auto_curation(t, mode)).ontology).facts(),
              "#" + std::to_string(i) + " " + std::string(to_string(mode)));
  }
  double secs = seconds_since(t0);
  c.expect(secs < 600.0, "took " + std::to_string(secs) + " s");
  if (c.ok) c.detail = std::to_string(compared) + " pairs agree (original and closed taxonomies)";
  return c;
}

Check ac4() {
  Check c;
  std::string summary;
  for (const auto& corpus : fixture_corpora()) {
    Taxonomy owa_tax = build_taxonomy(corpus.ontology);
    bool has_default = false;
    for (auto [a, b] : owa_tax.sibling_pairs()) has_default |= owa_tax.pair_status(a, b) == PairStatus::open;
    std::size_t owa = resolved(corpus.ontology, corpus.cqs);
    std::size_t sub = resolved(apply_closure(corpus.ontology, ClosureMode::subclass_only, {}).ontology, corpus.cqs);
    c.expect(owa <= sub, corpus.name + ": subclass-only below owa");
    summary += corpus.name + " " + percent_2dp(owa, corpus.cqs.size()) + "/" + percent_2dp(sub, corpus.cqs.size());
    for (auto mode : kDisjointModes) {
      std::size_t d = resolved(apply_closure(corpus.ontology, mode, {}).ontology, corpus.cqs);
      c.expect(sub <= d, corpus.name + ": " + std::string(to_string(mode)) + " below subclass-only");
      if (has_default) c.expect(sub < d, corpus.name + ": " + std::string(to_string(mode)) + " not strictly above subclass-only");
      summary += "/" + percent_2dp(d, corpus.cqs.size());
    }
    summary += "; ";
  }
  if (c.ok) c.detail = "resolved% owa/sub/disj/nondisj: " + summary.substr(0, summary.size() - 2);
  return c;
}

Check ac5() {
  Check c;
  std::size_t checked = 0;
  for (const auto& corpus : fixture_corpora()) {
    Taxonomy owa = build_taxonomy(corpus.ontology);
    std::set<ClassPair> defaults;
    for (auto [a, b] : owa.sibling_pairs())
      if (owa.pair_status(a, b) == PairStatus::open && !owa.has_disjoint_descendants(a, b))
        defaults.emplace(owa.name(a), owa.name(b));
    Taxonomy dis = build_taxonomy(apply_closure(corpus.ontology, ClosureMode::subclass_disjointness, {}).ontology);
    Taxonomy nd = build_taxonomy(apply_closure(corpus.ontology, ClosureMode::subclass_nondisjointness, {}).ontology);
    for (const auto& q : corpus.cqs) {
      if (q.pattern != "antonymy-1" || !defaults.count(ClassPair(q.c1, q.c2))) continue;
      ++checked;
      auto vd = oracle_verdict(dis, q).value;
      auto vn = oracle_verdict(nd, q).value;
      c.expect(vd == VerdictValue::passing, q.id + " is " + std::string(to_string(vd)) + " in disjointness mode");
      c.expect(vn == VerdictValue::non_passing, q.id + " is " + std::string(to_string(vn)) + " in non-disjointness mode");
    }
  }
  c.expect(checked > 0, "no antonymy CQ over a default sibling pair in the fixtures");
  if (c.ok) c.detail = std::to_string(checked) + " antonymy CQs flip passing/non-passing";
  return c;
}

Check ac6() {
  Check c;
  auto comp = complete_subclass(build_taxonomy(fixture_ontology("toy_ont_a.kif")));
  Ontology displayed_set = fixture_ontology("displayed_axioms.kif");
  const Formula& displayed = displayed_set.axioms()[7].formula;
  std::size_t leaves = 0;
  bool found_root = false;
  for (const auto& a : comp) {
    const Formula& body = a.formula.children.at(0);
    const std::string cls = body.children.at(0).terms.at(1).name;
    if (cls == "OrganismProcess") {
      found_root = true;
      c.expect(canonicalize(a.formula) == canonicalize(displayed), "OrganismProcess completion differs: " + to_kif(a.formula));
      c.expect(body.children.at(1).children.size() == 11, "OrganismProcess completion is not 11 disjuncts");
    } else {
      Formula want = parse_formula("(forall (?X) (=> ($subclass ?X " + cls + ") (equal ?X " + cls + ")))");
      c.expect(canonicalize(a.formula) == canonicalize(want), "leaf form differs for " + cls);
      ++leaves;
    }
  }
  c.expect(found_root, "no completion axiom for OrganismProcess");
  c.expect(leaves == 10, "expected 10 leaf axioms, got " + std::to_string(leaves));
  if (c.ok) c.detail = "11-disjunct root axiom and 10 equality-only leaf axioms";
  return c;
}

Check ac7() {
  Check c;
  double me = measure_mE({2.0, 4.0});
  c.expect(std::fabs(me - 375.0) <= 375.0 * 1e-9, "mE([2,4]) = " + std::to_string(me));
  auto rec = [](const std::string& id, Polarity pol, ProverStatus s, double secs, std::vector<std::string> used) {
    JournalRecord r{id, "antonymy-1", pol, {}};
    r.outcome.status = s;
    r.outcome.seconds = secs;
    r.outcome.used_axioms = std::move(used);
    return r;
  };
  // Hand computation: proved truth tests take 1, 2 and 5 s, cite 2, 3 and
  // 4 axioms out of 5 distinct names: t = 8/3, N = 5, A = 3,
  // mE = 1000 * (1 + 1/2 + 1/5) / 3 = 1700/3. The timeout does not count.
  std::vector<JournalRecord> j{
      rec("a", Polarity::truth, ProverStatus::proved, 1.0, {"orig_1", "cwad_1"}),
      rec("b", Polarity::truth, ProverStatus::proved, 2.0, {"orig_1", "cwad_1", "sup_1"}),
      rec("c", Polarity::truth, ProverStatus::proved, 5.0, {"orig_2", "cwad_1", "sup_1", "comp_3"}),
      rec("d", Polarity::truth, ProverStatus::timeout, 300.0, {}),
      rec("a", Polarity::falsity, ProverStatus::counter_satisfiable, 0.5, {}),
      rec("d", Polarity::falsity, ProverStatus::proved, 4.0, {"cwad_2"}),
  };
  EfficiencyReport r = efficiency_report(j);
  const EfficiencyRow& t = r.rows.at(0);
  const EfficiencyRow& f = r.rows.at(1);
  c.expect(t.solved == 3, "truth solved " + std::to_string(t.solved));
  c.expect(t.t == 8.0 / 3.0, "truth t " + std::to_string(t.t));
  c.expect(t.N == 5, "truth N " + std::to_string(t.N));
  c.expect(t.A == 3.0, "truth A " + std::to_string(t.A));
  c.expect(std::fabs(t.mE - 1700.0 / 3.0) <= 1e-9 * 1700.0 / 3.0, "truth mE " + std::to_string(t.mE));
  c.expect(f.solved == 1 && f.t == 4.0 && f.N == 1 && f.A == 1.0 && f.mE == 250.0, "falsity row");
  c.expect(r.totals.at(0).N == 5 && r.totals.at(1).N == 1, "totals");
  if (c.ok) c.detail = "mE([2,4]) = " + fixed(me, 9) + "; t, N, A, mE match hand counts";
  return c;
}

Check ac8() {
  Check c;
  // Hand counts live in the fixture header.
  std::map<std::string, std::vector<std::size_t>> table;
  std::regex row(R"(^;\s+(original|subclass-only|subclass\+disjointness|subclass\+nondisjointness)\s+([\d\s]+)$)");
  std::istringstream in(fixture_text("toy_ont_a.kif"));
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (!std::regex_match(line, m, row)) continue;
    std::istringstream nums(m[2].str());
    std::vector<std::size_t> v;
    for (std::size_t x; nums >> x;) v.push_back(x);
    table[m[1].str()] = v;
  }
  c.expect(table.size() == 4, "fixture header does not list four versions");
  Ontology o = fixture_ontology("toy_ont_a.kif");
  auto values = [](const SizeStats& s) {
    return std::vector<std::size_t>{s.axioms, s.unit_clauses, s.formulae, s.atoms, s.forall_blocks, s.exists_blocks,
                                    s.iff, s.implies, s.and_, s.or_, s.not_, s.equalities};
  };
  std::vector<std::size_t> atoms;
  std::string summary;
  for (auto mode : all_closure_modes()) {
    const std::string label = mode == ClosureMode::owa ? "original" : std::string(to_string(mode));
    SizeStats s = count_metrics(apply_closure(o, mode, {}).ontology);
    c.expect(table.count(label) && table[label] == values(s), label + " counts differ: " + s.csv_row());
    atoms.push_back(s.atoms);
    summary += (summary.empty() ? "" : " -> ") + std::to_string(s.atoms);
  }
  c.expect(atoms.size() == 4 && atoms[0] <= atoms[1] && atoms[1] <= atoms[2] && atoms[1] <= atoms[3],
           "atom counts not monotone: " + summary);
  if (c.ok) c.detail = "atoms " + summary + ", all hand counts match";
  return c;
}

Check ac9() {
  Check c;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(CWA_FIXTURE_DIR)) {
    if (e.path().extension() != ".kif" || e.path().filename() == "templates.kif") continue;
    ++files;
    Ontology a = load_ontology(e.path());
    std::string once = serialize_kif(a);
    Ontology b = parse_kif(once);
    c.expect(structurally_equal(a, b), "round trip changed " + e.path().filename().string());
    c.expect(serialize_kif(b) == once, "serialization not stable for " + e.path().filename().string());
  }
  Ontology displayed_set = fixture_ontology("displayed_axioms.kif");
  for (const auto& a : displayed_set.axioms())
    c.expect(parse_formula(to_kif(a.formula)) == a.formula, "displayed axiom does not round-trip: " + to_kif(a.formula));

  TempDir dir;
  auto run = [&](const std::string& name) {
    auto cfg = dir / (name + ".cfg");
    write_file(cfg, "ontology = " + fixture_path("toy_ont_a.kif").string() + "\nmapping = " +
                        fixture_path("toy_mapping.tsv").string() + "\nrelations.antonymy = " +
                        fixture_path("toy_antonymy.tsv").string() + "\nrelations.hyponymy = " +
                        fixture_path("toy_hyponymy.tsv").string() + "\ntemplates = " +
                        fixture_path("templates.kif").string() + "\noutput = " + (dir / name).string() + "\n");
    run_pipeline(load_pipeline_config(cfg));
    std::map<std::string, std::string> snap;
    for (const auto& e : fs::recursive_directory_iterator(dir / name))
      if (e.is_regular_file()) snap[fs::relative(e.path(), dir / name).string()] = read_file(e.path());
    return snap;
  };
  auto first = run("a");
  auto second = run("b");
  c.expect(!first.empty() && first == second, "pipeline outputs differ between runs");
  if (c.ok)
    c.detail = std::to_string(files) + " fixtures and " + std::to_string(displayed_set.size()) +
               " displayed axioms round-trip; " + std::to_string(first.size()) + " pipeline files byte-identical";
  return c;
}

Check ac10() {
  Check c;
  TempDir dir;
  auto problem = (dir / "p.p").string();
  std::ofstream(problem) << TptpEmitter(fixture_ontology("toy_ont_a.kif")).problem(birth_death_cq().truth_test, {});
  auto config = [](const std::string& script, double limit) {
    ProverConfig p;
    p.command = "sh " + cwa::testing::stub(script) + " {problem}";
    p.time_limit = limit;
    p.memory_mb = 0;
    return p;
  };
  const std::vector<std::pair<std::string, ProverStatus>> cases{{"theorem.sh", ProverStatus::proved},
                                                                {"countersat.sh", ProverStatus::counter_satisfiable},
                                                                {"gaveup.sh", ProverStatus::gave_up},
                                                                {"garbage.sh", ProverStatus::error},
                                                                {"crash.sh", ProverStatus::error}};
  for (const auto& [script, want] : cases) {
    ProverStatus got = run_prover(problem, config(script, 10.0)).status;
    c.expect(got == want, script + " gave " + std::string(to_string(got)));
  }
  double worst = 0;
  for (const char* script : {"sleep.sh", "sleep_ignore_term.sh"}) {
    const double limit = 1.0;
    auto t0 = Clock::now();
    ProverOutcome o = run_prover(problem, config(script, limit));
    double wall = seconds_since(t0);
    worst = std::max(worst, wall);
    c.expect(o.status == ProverStatus::timeout, std::string(script) + " gave " + std::string(to_string(o.status)));
    c.expect(wall < limit + 5.0, std::string(script) + " took " + std::to_string(wall) + " s");
  }
  if (c.ok) c.detail = "5 scripted outcomes correct; sleepers stopped after at most " + fixed(worst, 2) + " s (limit 1 s)";
  return c;
}

}  // namespace

int main() {
  const auto corpus = random_corpus();
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"trichotomy on ToyOnt-A", ac1},
      {"closure totality and consistency", [&] { return ac2(corpus); }},
      {"pair_status vs small-model oracle", [&] { return ac3(corpus); }},
      {"resolved% monotone across modes", ac4},
      {"antonymy duality", ac5},
      {"completion axiom shape", ac6},
      {"efficiency metrics arithmetic", ac7},
      {"size metrics", ac8},
      {"round-trip and determinism", ac9},
      {"prover harness robustness", ac10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = Clock::now();
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::printf("AC%zu %s %s (%.2f s): %s\n", i + 1, c.ok ? "PASS" : "FAIL", criteria[i].first, seconds_since(t0),
                c.detail.c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
