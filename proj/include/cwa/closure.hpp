#pragma once

// Closed world augmentations of the structural fragment: subclass
// completion, the disjointness assumption and the non-disjointness
// assumption, plus the support axioms for the two non-disjointness
// predicates.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwa/error.hpp"
#include "cwa/kif.hpp"
#include "cwa/taxonomy.hpp"

namespace cwa {

enum class ClosureMode { owa, subclass_only, subclass_disjointness, subclass_nondisjointness };

inline std::string_view to_string(ClosureMode m) {
  switch (m) {
    case ClosureMode::owa: return "owa";
    case ClosureMode::subclass_only: return "subclass-only";
    case ClosureMode::subclass_disjointness: return "subclass+disjointness";
    case ClosureMode::subclass_nondisjointness: return "subclass+nondisjointness";
  }
  return "owa";
}

inline const std::vector<ClosureMode>& all_closure_modes() {
  static const std::vector<ClosureMode> modes{ClosureMode::owa, ClosureMode::subclass_only,
                                              ClosureMode::subclass_disjointness,
                                              ClosureMode::subclass_nondisjointness};
  return modes;
}

inline ClosureMode closure_mode_from_string(std::string_view s) {
  for (auto m : all_closure_modes())
    if (to_string(m) == s) return m;
  throw ConfigError("unknown closure mode: " + std::string(s));
}

// Manually decided pairs, applied before a closure runs.
struct CurationFile {
  std::set<ClassPair> nondisjoint;
  std::set<ClassPair> inheritable_nondisjoint;
  std::set<ClassPair> disjoint;

  bool empty() const { return nondisjoint.empty() && inheritable_nondisjoint.empty() && disjoint.empty(); }

  void validate() const {
    auto check_self = [](const std::set<ClassPair>& s) {
      for (const auto& p : s)
        if (p.first == p.second) throw ConflictError("curation relates " + p.first + " to itself");
    };
    check_self(nondisjoint);
    check_self(inheritable_nondisjoint);
    check_self(disjoint);
    auto overlap = [](const std::set<ClassPair>& a, const std::set<ClassPair>& b, std::string_view what) {
      for (const auto& p : a)
        if (b.count(p))
          throw ConflictError("curation pair {" + p.first + ", " + p.second + "} declared " + std::string(what));
    };
    overlap(nondisjoint, inheritable_nondisjoint, "both nonDisjoint and inheritableNonDisjoint");
    overlap(nondisjoint, disjoint, "both nonDisjoint and disjoint");
    overlap(inheritable_nondisjoint, disjoint, "both inheritableNonDisjoint and disjoint");
  }

  // Unit clauses in a fixed order: disjoint, nonDisjoint, inheritableNonDisjoint.
  std::vector<Axiom> axioms(bool disjoint_only = false) const {
    std::vector<Axiom> out;
    auto emit = [&](const std::set<ClassPair>& s, const char* pred) {
      for (const auto& p : s) {
        Axiom a;
        a.id = "cur_" + std::to_string(out.size() + 1);
        a.formula = Formula::atom(pred, {Term::constant(p.first), Term::constant(p.second)});
        a.provenance = Provenance::curation;
        out.push_back(std::move(a));
      }
    };
    emit(disjoint, "$disjoint");
    if (!disjoint_only) {
      emit(nondisjoint, "$nonDisjoint");
      emit(inheritable_nondisjoint, "$inheritableNonDisjoint");
    }
    return out;
  }

  std::string to_kif() const {
    std::string out;
    for (const auto& a : axioms()) out += cwa::to_kif(a.formula) + "\n";
    return out;
  }
};

// Reads curation unit clauses; anything other than a ground disjoint,
// nonDisjoint or inheritableNonDisjoint atom is rejected.
inline CurationFile parse_curation(std::string_view text, std::string_view source = "<curation>") {
  Ontology o = parse_kif(text, source);
  CurationFile c;
  for (const auto& a : o.axioms()) {
    const Formula& f = a.formula;
    std::string_view pred = f.kind == Formula::Kind::atom ? detail::structural_name(f.predicate) : "";
    bool ok = (pred == "disjoint" || pred == "nonDisjoint" || pred == "inheritableNonDisjoint") &&
              f.terms.size() == 2 && f.terms[0].kind == Term::Kind::constant &&
              f.terms[1].kind == Term::Kind::constant;
    if (!ok) throw Error(a.source + ": curation entries must be ground disjoint/nonDisjoint/inheritableNonDisjoint atoms");
    ClassPair p(f.terms[0].name, f.terms[1].name);
    (pred == "disjoint" ? c.disjoint : pred == "nonDisjoint" ? c.nondisjoint : c.inheritable_nondisjoint).insert(p);
  }
  c.validate();
  return c;
}

// Generated axioms of one closure step, before and after redundancy pruning.
struct ClosureOutput {
  std::vector<Axiom> axioms;
  std::size_t unpruned = 0;
  std::vector<std::string> notes;
};

struct ClosureOptions {
  bool prune = true;
  // Raise instead of noting sibling pairs that are non-disjoint only through
  // an unstated common subclass.
  bool strict_curation = false;
};

inline std::vector<Axiom> support_axioms() {
  static const char* const texts[] = {
      "(forall (CLASS1 CLASS2) (=> ($nonDisjoint CLASS1 CLASS2) (not ($disjoint CLASS1 CLASS2))))",
      "(forall (CLASS1 CLASS2) (=> ($inheritableNonDisjoint CLASS1 CLASS2) (not ($disjoint CLASS1 CLASS2))))",
      "(forall (CLASS1 CLASS2) (=> ($inheritableNonDisjoint CLASS1 CLASS2) ($inheritableNonDisjoint CLASS2 CLASS1)))",
      "(forall (CLASS1 CLASS2 SUBCLASS) (=> (and ($inheritableNonDisjoint CLASS1 CLASS2) ($subclass SUBCLASS CLASS1)) "
      "($inheritableNonDisjoint SUBCLASS CLASS2)))",
  };
  std::vector<Axiom> out;
  for (const char* t : texts) {
    Axiom a;
    a.id = "sup_" + std::to_string(out.size() + 1);
    a.formula = parse_formula(t);
    a.provenance = Provenance::support;
    out.push_back(std::move(a));
  }
  return out;
}

// One forward completion implication per class, disjuncts in lexicographic
// order after the equality.
inline std::vector<Axiom> complete_subclass(const Taxonomy& tax) {
  std::vector<Axiom> out;
  const Term x = Term::variable("?X");
  for (std::size_t c = 0; c < tax.size(); ++c) {
    const Term self = Term::constant(tax.name(c));
    Formula eq = Formula::equal(x, self);
    Formula rhs;
    if (tax.children(c).empty()) {
      rhs = std::move(eq);
    } else {
      std::vector<Formula> disjuncts{std::move(eq)};
      for (auto k : tax.children(c)) disjuncts.push_back(Formula::atom("$subclass", {x, Term::constant(tax.name(k))}));
      rhs = Formula::disjunction(std::move(disjuncts));
    }
    Axiom a;
    a.id = "comp_" + std::to_string(out.size() + 1);
    a.formula = Formula::universal({"?X"}, Formula::implication(Formula::atom("$subclass", {x, self}), std::move(rhs)));
    a.provenance = Provenance::completion;
    out.push_back(std::move(a));
  }
  return out;
}

namespace detail {

inline Taxonomy merge_curation(const Taxonomy& tax, const CurationFile& curation, bool disjoint_only) {
  curation.validate();
  Taxonomy merged = disjoint_only ? tax.with_pairs(curation.disjoint, {}, {})
                                  : tax.with_pairs(curation.disjoint, curation.nondisjoint,
                                                   curation.inheritable_nondisjoint);
  auto conflicts = merged.find_conflicts();
  if (!conflicts.empty()) {
    std::string msg = "structural conflicts before closure:";
    for (const auto& p : conflicts) msg += " {" + p.first + ", " + p.second + "}";
    throw ConflictError(msg);
  }
  return merged;
}

// Per-class partner sets over a list of pairs.
inline std::vector<Bitset> partner_sets(const Taxonomy& tax, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<Bitset> partners(tax.size(), Bitset(tax.size()));
  for (auto [a, b] : pairs) {
    partners[a].set(b);
    partners[b].set(a);
  }
  return partners;
}

// Is {a,b} below some other pair of the set, i.e. a ⊑* d1 and b ⊑* d2?
inline bool dominated_below(const Taxonomy& tax, const std::vector<Bitset>& partners, std::size_t a, std::size_t b) {
  bool found = false;
  tax.ancestors(a).for_each([&](std::size_t d1) {
    if (found) return;
    Bitset hit = partners[d1] & tax.ancestors(b);
    hit.for_each([&](std::size_t d2) {
      if (!((d1 == a && d2 == b) || (d1 == b && d2 == a))) found = true;
    });
  });
  return found;
}

// Is {a,b} above some other pair of the set, i.e. m1 ⊑* a and m2 ⊑* b?
inline bool dominated_above(const Taxonomy& tax, const std::vector<Bitset>& partners, std::size_t a, std::size_t b) {
  bool found = false;
  tax.descendants(a).for_each([&](std::size_t m1) {
    if (found) return;
    Bitset hit = partners[m1] & tax.descendants(b);
    hit.for_each([&](std::size_t m2) {
      if (!((m1 == a && m2 == b) || (m1 == b && m2 == a))) found = true;
    });
  });
  return found;
}

inline std::vector<std::pair<std::size_t, std::size_t>> indexed(const Taxonomy& tax, const std::set<ClassPair>& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : s) out.emplace_back(tax.index_of(p.first), tax.index_of(p.second));
  return out;
}

inline Axiom pair_axiom(const std::string& id, const char* pred, const ClassPair& p, Provenance prov) {
  Axiom a;
  a.id = id;
  a.formula = Formula::atom(pred, {Term::constant(p.first), Term::constant(p.second)});
  a.provenance = prov;
  return a;
}

inline std::string pair_text(const char* pred, const ClassPair& p) {
  return "(" + std::string(pred) + " " + p.first + " " + p.second + ")";
}

}  // namespace detail

// Sibling pairs whose non-disjointness rests on a common subclass that no
// stated fact explains, with the predicate a curator would most likely use.
inline std::vector<std::pair<ClassPair, bool>> unexplained_sibling_pairs(const Taxonomy& tax) {
  std::vector<std::pair<ClassPair, bool>> out;  // (pair, inheritable)
  for (auto [a, b] : tax.sibling_pairs()) {
    if (!tax.share_descendant(a, b) || tax.stated_nondisjoint(a, b)) continue;
    out.emplace_back(ClassPair(tax.name(a), tax.name(b)), !tax.has_disjoint_descendants(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline ClosureOutput assume_disjointness(const Taxonomy& tax, const CurationFile& curation,
                                         const ClosureOptions& options = {}) {
  Taxonomy merged = detail::merge_curation(tax, curation, false);
  ClosureOutput out;

  auto unexplained = unexplained_sibling_pairs(merged);
  if (!unexplained.empty()) {
    if (options.strict_curation) {
      std::string msg = "curation incomplete; sibling pairs non-disjoint only through a common subclass:";
      for (const auto& [p, inh] : unexplained) msg += " {" + p.first + ", " + p.second + "}";
      throw CurationIncompleteError(msg);
    }
    for (const auto& [p, inh] : unexplained)
      out.notes.push_back("curation: suggest " + detail::pair_text(inh ? "$inheritableNonDisjoint" : "$nonDisjoint", p));
  }

  std::vector<std::pair<std::size_t, std::size_t>> emitted;
  for (auto [a, b] : merged.sibling_pairs())
    if (merged.pair_status(a, b) == PairStatus::open) emitted.emplace_back(a, b);
  out.unpruned = emitted.size();

  std::vector<ClassPair> kept;
  if (options.prune) {
    auto all = detail::indexed(merged, merged.facts().disjoint);
    all.insert(all.end(), emitted.begin(), emitted.end());
    auto partners = detail::partner_sets(merged, all);
    for (auto [a, b] : emitted)
      if (!detail::dominated_below(merged, partners, a, b)) kept.emplace_back(merged.name(a), merged.name(b));
  } else {
    for (auto [a, b] : emitted) kept.emplace_back(merged.name(a), merged.name(b));
  }
  std::sort(kept.begin(), kept.end());
  for (const auto& p : kept)
    out.axioms.push_back(detail::pair_axiom("cwad_" + std::to_string(out.axioms.size() + 1), "$disjoint", p,
                                            Provenance::cwa_disjoint));
  return out;
}

// Sibling pairs not derived disjoint become inheritableNonDisjoint when no
// pair of their subclasses is disjoint; otherwise nonDisjoint, and the
// direct-subclass pairs below them are examined in turn.
inline ClosureOutput assume_nondisjointness(const Taxonomy& tax, const CurationFile& curation,
                                            const ClosureOptions& options = {}) {
  Taxonomy merged = detail::merge_curation(tax, curation, true);
  ClosureOutput out;

  std::set<std::pair<std::size_t, std::size_t>> visited;
  std::vector<std::pair<std::size_t, std::size_t>> work = merged.sibling_pairs();
  std::vector<std::pair<std::size_t, std::size_t>> inheritable;
  std::vector<std::pair<std::size_t, std::size_t>> plain;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (a > b) std::swap(a, b);
    if (a == b || merged.comparable(a, b) || merged.derived_disjoint(a, b)) continue;
    if (!visited.emplace(a, b).second) continue;
    if (!merged.has_disjoint_descendants(a, b)) {
      inheritable.emplace_back(a, b);
      continue;
    }
    plain.emplace_back(a, b);
    std::vector<std::size_t> left{a};
    std::vector<std::size_t> right{b};
    left.insert(left.end(), merged.children(a).begin(), merged.children(a).end());
    right.insert(right.end(), merged.children(b).begin(), merged.children(b).end());
    for (auto l : left)
      for (auto r : right)
        if (!(l == a && r == b)) work.emplace_back(l, r);
  }
  out.unpruned = inheritable.size() + plain.size();

  std::vector<std::pair<ClassPair, const char*>> kept;
  if (options.prune) {
    const auto& facts = merged.facts();
    std::vector<std::pair<std::size_t, std::size_t>> kept_inh;
    auto all_inh = detail::indexed(merged, facts.inheritable_nondisjoint);
    all_inh.insert(all_inh.end(), inheritable.begin(), inheritable.end());
    auto inh_partners = detail::partner_sets(merged, all_inh);
    for (auto [a, b] : inheritable) {
      ClassPair p(merged.name(a), merged.name(b));
      if (facts.inheritable_nondisjoint.count(p) || detail::dominated_below(merged, inh_partners, a, b)) continue;
      kept_inh.emplace_back(a, b);
      kept.emplace_back(p, "$inheritableNonDisjoint");
    }
    std::set<ClassPair> kept_inh_pairs;
    for (auto [a, b] : kept_inh) kept_inh_pairs.emplace(merged.name(a), merged.name(b));
    // Non-disjointness already derivable without any emitted nonDisjoint.
    Taxonomy with_inh = merged.with_pairs({}, {}, kept_inh_pairs);
    auto all_plain = detail::indexed(merged, facts.nondisjoint);
    all_plain.insert(all_plain.end(), plain.begin(), plain.end());
    auto plain_partners = detail::partner_sets(merged, all_plain);
    for (auto [a, b] : plain) {
      ClassPair p(merged.name(a), merged.name(b));
      if (with_inh.derived_nondisjoint(a, b) || detail::dominated_above(merged, plain_partners, a, b)) continue;
      kept.emplace_back(p, "$nonDisjoint");
    }
  } else {
    for (auto [a, b] : inheritable) kept.emplace_back(ClassPair(merged.name(a), merged.name(b)), "$inheritableNonDisjoint");
    for (auto [a, b] : plain) kept.emplace_back(ClassPair(merged.name(a), merged.name(b)), "$nonDisjoint");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : std::string_view(x.second) < std::string_view(y.second);
  });
  for (const auto& [p, pred] : kept)
    out.axioms.push_back(detail::pair_axiom("cwan_" + std::to_string(out.axioms.size() + 1), pred, p,
                                            Provenance::cwa_nondisjoint));
  return out;
}

struct CurationSuggestion {
  CurationFile candidates;
  std::vector<ClassPair> undecided;  // non-disjointness mode: open sibling pairs
};

inline CurationSuggestion suggest_curation(const Taxonomy& tax, ClosureMode mode) {
  CurationSuggestion s;
  if (mode == ClosureMode::subclass_disjointness) {
    for (const auto& [p, inh] : unexplained_sibling_pairs(tax))
      (inh ? s.candidates.inheritable_nondisjoint : s.candidates.nondisjoint).insert(p);
  } else if (mode == ClosureMode::subclass_nondisjointness) {
    for (auto [a, b] : tax.sibling_pairs())
      if (tax.pair_status(a, b) == PairStatus::open) s.undecided.emplace_back(tax.name(a), tax.name(b));
    std::sort(s.undecided.begin(), s.undecided.end());
  } else {
    throw ConfigError("suggest-curation needs a disjoint-closure mode, got " + std::string(to_string(mode)));
  }
  return s;
}

struct ClosureResult {
  Ontology ontology;
  std::size_t generated = 0;  // CWA pair axioms after pruning
  std::size_t unpruned = 0;   // before pruning
  std::vector<std::string> notes;
};

inline ClosureResult apply_closure(const Ontology& ontology, ClosureMode mode, const CurationFile& curation,
                                   const ClosureOptions& options = {}) {
  ClosureResult r;
  std::vector<Axiom> originals(ontology.axioms());
  for (auto& a : originals) r.ontology.add(std::move(a));
  if (mode == ClosureMode::owa) return r;

  Taxonomy tax = build_taxonomy(ontology);
  for (const auto& w : tax.warnings()) r.notes.push_back("taxonomy: " + w);
  for (auto& a : support_axioms()) r.ontology.add(std::move(a));
  for (auto& a : complete_subclass(tax)) r.ontology.add(std::move(a));
  if (mode == ClosureMode::subclass_only) return r;
  bool nd_mode = mode == ClosureMode::subclass_nondisjointness;
  for (auto& a : curation.axioms(nd_mode)) r.ontology.add(std::move(a));
  ClosureOutput gen = nd_mode ? assume_nondisjointness(tax, curation, options)
                              : assume_disjointness(tax, curation, options);
  r.generated = gen.axioms.size();
  r.unpruned = gen.unpruned;
  r.notes.insert(r.notes.end(), gen.notes.begin(), gen.notes.end());
  for (auto& a : gen.axioms) r.ontology.add(std::move(a));
  return r;
}

}  // namespace cwa
