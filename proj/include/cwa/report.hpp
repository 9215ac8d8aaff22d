#pragma once

// Competency, efficiency and size tables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwa/kif.hpp"
#include "cwa/prover.hpp"

namespace cwa {

// 100 * num / den with two decimals, ties to even.
inline std::string percent_2dp(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return "0.00";
  std::uint64_t scaled = num * 10000;
  std::uint64_t q = scaled / den;
  std::uint64_t rem = scaled % den;
  if (2 * rem > den || (2 * rem == den && (q % 2) == 1)) ++q;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu.%02llu", static_cast<unsigned long long>(q / 100),
                static_cast<unsigned long long>(q % 100));
  return buf;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Known patterns first in a fixed order, then the rest alphabetically.
inline int pattern_rank(std::string_view p) {
  static const char* const order[] = {"hypo-noun-1", "hypo-noun-2", "hypo-verb-1", "hypo-verb-2", "antonymy-1"};
  for (int i = 0; i < 5; ++i)
    if (p == order[i]) return i;
  return 5;
}

inline bool pattern_less(const std::string& a, const std::string& b) {
  int ra = pattern_rank(a);
  int rb = pattern_rank(b);
  return ra != rb ? ra < rb : a < b;
}

namespace detail {

// Right-aligned text table; the first column is left-aligned.
inline std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return "";
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::string pad(width[i] - r[i].size(), ' ');
      line += i == 0 ? r[i] + pad : "  " + pad + r[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

inline std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += "\n";
  }
  return out;
}

}  // namespace detail

struct CompetencyRow {
  std::string pattern;
  std::size_t cqs = 0;
  std::size_t truth = 0;
  std::size_t falsity = 0;
  std::size_t truth_exclusive = 0;
  std::size_t falsity_exclusive = 0;

  std::string resolved_percent() const { return percent_2dp(truth + falsity, cqs); }
};

struct CompetencyReport {
  std::vector<CompetencyRow> rows;  // per pattern
  CompetencyRow total;
  bool with_baseline = false;
  std::vector<std::string> warnings;

  std::vector<std::vector<std::string>> cells() const {
    std::vector<std::vector<std::string>> out{
        {"pattern", "cqs", "truth", "truth_exclusive", "falsity", "falsity_exclusive", "resolved_pct"}};
    auto add = [&](const CompetencyRow& r) {
      out.push_back({r.pattern, std::to_string(r.cqs), std::to_string(r.truth),
                     with_baseline ? std::to_string(r.truth_exclusive) : "", std::to_string(r.falsity),
                     with_baseline ? std::to_string(r.falsity_exclusive) : "", r.resolved_percent()});
    };
    for (const auto& r : rows) add(r);
    add(total);
    return out;
  }

  std::string to_csv() const { return detail::csv(cells()); }

  std::string to_text() const {
    std::vector<std::vector<std::string>> out{{"pattern", "CQs", "(+)", "(-)", "%"}};
    for (const auto* r : [&] {
           std::vector<const CompetencyRow*> all;
           for (const auto& x : rows) all.push_back(&x);
           all.push_back(&total);
           return all;
         }()) {
      auto with_ex = [&](std::size_t n, std::size_t ex) {
        return with_baseline ? std::to_string(n) + " (" + std::to_string(ex) + ")" : std::to_string(n);
      };
      out.push_back({r->pattern, std::to_string(r->cqs), with_ex(r->truth, r->truth_exclusive),
                     with_ex(r->falsity, r->falsity_exclusive), r->resolved_percent()});
    }
    std::string text = detail::render_table(out);
    for (const auto& w : warnings) text += "warning: " + w + "\n";
    return text;
  }
};

// Per-pattern counts of proved tests. With a baseline, exclusive counts are
// tests proved here and not proved in the baseline. `expected` lists CQ ids
// that should be present; missing ones produce a warning.
inline CompetencyReport competency_report(const std::vector<Verdict>& verdicts,
                                          const std::vector<Verdict>* baseline = nullptr,
                                          const std::vector<std::string>* expected = nullptr) {
  CompetencyReport rep;
  rep.with_baseline = baseline != nullptr;
  std::map<std::string, std::pair<bool, bool>> base;
  if (baseline)
    for (const auto& b : *baseline) base[b.cq_id] = {b.truth_proved(), b.falsity_proved()};
  std::map<std::string, CompetencyRow> by_pattern;
  rep.total.pattern = "Total";
  for (const auto& v : verdicts) {
    CompetencyRow& row = by_pattern[v.pattern];
    row.pattern = v.pattern;
    auto it = base.find(v.cq_id);
    bool bt = it != base.end() && it->second.first;
    bool bf = it != base.end() && it->second.second;
    for (CompetencyRow* r : {&row, &rep.total}) {
      ++r->cqs;
      if (v.truth_proved()) {
        ++r->truth;
        if (baseline && !bt) ++r->truth_exclusive;
      }
      if (v.falsity_proved()) {
        ++r->falsity;
        if (baseline && !bf) ++r->falsity_exclusive;
      }
    }
  }
  for (auto& [p, r] : by_pattern) rep.rows.push_back(r);
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const CompetencyRow& a, const CompetencyRow& b) { return pattern_less(a.pattern, b.pattern); });
  if (expected) {
    std::set<std::string> have;
    for (const auto& v : verdicts) have.insert(v.cq_id);
    std::vector<std::string> missing;
    for (const auto& id : *expected)
      if (!have.count(id)) missing.push_back(id);
    if (!missing.empty()) {
      std::string w = "journal incomplete, missing " + std::to_string(missing.size()) + " CQ(s):";
      for (const auto& id : missing) w += " " + id;
      rep.warnings.push_back(w);
    }
  }
  return rep;
}

struct EfficiencyRow {
  std::string pattern;
  Polarity polarity = Polarity::truth;
  std::size_t solved = 0;
  double t = 0.0;   // mean seconds over solved tests
  double mE = 0.0;  // 1000 * mean of 1/seconds over solved tests
  std::size_t N = 0;  // distinct axioms used over all proofs
  double A = 0.0;     // mean axioms per proof
  std::map<std::string, std::size_t> n_by_provenance;
};

// Times below one millisecond are clamped so that instantaneous answers do
// not make the inverse mean infinite.
constexpr double kMinSolveSeconds = 0.001;

inline double mean_time(const std::vector<double>& times) {
  if (times.empty()) return 0.0;
  double s = 0;
  for (double t : times) s += t;
  return s / static_cast<double>(times.size());
}

inline double measure_mE(const std::vector<double>& times) {
  if (times.empty()) return 0.0;
  double s = 0;
  for (double t : times) s += 1.0 / std::max(t, kMinSolveSeconds);
  return 1000.0 * s / static_cast<double>(times.size());
}

inline std::string provenance_bucket(const std::string& axiom_name) {
  for (auto p : {Provenance::original, Provenance::completion, Provenance::cwa_disjoint, Provenance::cwa_nondisjoint,
                 Provenance::curation, Provenance::support})
    if (axiom_name.rfind(id_prefix(p), 0) == 0) return std::string(to_string(p));
  return "other";
}

struct EfficiencyReport {
  std::vector<EfficiencyRow> rows;
  std::vector<EfficiencyRow> totals;  // truth, falsity
  std::vector<std::string> notes;

  std::vector<std::vector<std::string>> cells(int digits) const {
    std::vector<std::vector<std::string>> out{{"pattern", "polarity", "solved", "t", "mE", "N", "A"}};
    auto add = [&](const EfficiencyRow& r) {
      out.push_back({r.pattern, std::string(to_string(r.polarity)), std::to_string(r.solved), fixed(r.t, digits),
                     fixed(r.mE, digits), std::to_string(r.N), fixed(r.A, digits)});
    };
    for (const auto& r : rows) add(r);
    for (const auto& r : totals) add(r);
    return out;
  }

  std::string to_csv() const { return detail::csv(cells(6)); }
  std::string to_text() const {
    std::string text = detail::render_table(cells(2));
    for (const auto& n : notes) text += "note: " + n + "\n";
    return text;
  }
};

namespace detail {

inline EfficiencyRow efficiency_cell(std::string pattern, Polarity pol, const std::vector<const ProverOutcome*>& proved) {
  EfficiencyRow row;
  row.pattern = std::move(pattern);
  row.polarity = pol;
  row.solved = proved.size();
  std::vector<double> times;
  std::set<std::string> names;
  std::size_t cited = 0;
  std::size_t with_proof = 0;
  for (const auto* o : proved) {
    times.push_back(o->seconds);
    if (!o->used_axioms.empty()) {
      ++with_proof;
      cited += o->used_axioms.size();
    }
    names.insert(o->used_axioms.begin(), o->used_axioms.end());
  }
  row.t = mean_time(times);
  row.mE = measure_mE(times);
  row.N = names.size();
  row.A = with_proof ? static_cast<double>(cited) / static_cast<double>(with_proof) : 0.0;
  for (const auto& n : names) ++row.n_by_provenance[provenance_bucket(n)];
  return row;
}

}  // namespace detail

// Only proved outcomes enter the cells. A averages over proofs that
// reported axiom names.
inline EfficiencyReport efficiency_report(const std::vector<JournalRecord>& records) {
  EfficiencyReport rep;
  std::map<std::pair<std::string, Polarity>, std::vector<const ProverOutcome*>> cells;
  std::map<Polarity, std::vector<const ProverOutcome*>> totals{{Polarity::truth, {}}, {Polarity::falsity, {}}};
  std::set<std::string> patterns;
  bool missing_proofs = false;
  for (const auto& r : records) {
    patterns.insert(r.pattern);
    if (r.outcome.status != ProverStatus::proved) continue;
    cells[{r.pattern, r.polarity}].push_back(&r.outcome);
    totals[r.polarity].push_back(&r.outcome);
    if (r.outcome.used_axioms.empty()) missing_proofs = true;
  }
  std::vector<std::string> ordered(patterns.begin(), patterns.end());
  std::sort(ordered.begin(), ordered.end(), pattern_less);
  for (const auto& p : ordered)
    for (auto pol : {Polarity::truth, Polarity::falsity}) rep.rows.push_back(detail::efficiency_cell(p, pol, cells[{p, pol}]));
  for (auto pol : {Polarity::truth, Polarity::falsity})
    rep.totals.push_back(detail::efficiency_cell("Total", pol, totals[pol]));
  if (missing_proofs) rep.notes.push_back("some proved tests reported no axiom names; N and A cover the rest only");
  return rep;
}

// Size table: one column per ontology version, rows in the order
// axioms, unit clauses, formulae, atoms, forall, exists, iff, implies, and,
// or, not, equalities.
inline std::string size_table_csv(const std::vector<std::pair<std::string, SizeStats>>& versions) {
  std::string out = "version," + SizeStats::csv_header() + "\n";
  for (const auto& [name, s] : versions) out += name + "," + s.csv_row() + "\n";
  return out;
}

inline std::string size_table_text(const std::vector<std::pair<std::string, SizeStats>>& versions) {
  static const char* const labels[] = {"Axioms", "Unit clauses", "Formulae", "Atoms", "forall (blocks)",
                                       "exists (blocks)", "<=>", "=>", "and", "or", "not", "equal"};
  std::vector<std::vector<std::string>> rows{{""}};
  for (const auto& [name, s] : versions) rows[0].push_back(name);
  for (std::size_t i = 0; i < 12; ++i) {
    std::vector<std::string> row{labels[i]};
    for (const auto& [name, s] : versions) {
      const std::size_t v[] = {s.axioms, s.unit_clauses, s.formulae, s.atoms, s.forall_blocks, s.exists_blocks,
                               s.iff, s.implies, s.and_, s.or_, s.not_, s.equalities};
      row.push_back(std::to_string(v[i]));
    }
    rows.push_back(std::move(row));
  }
  return detail::render_table(rows);
}

}  // namespace cwa
