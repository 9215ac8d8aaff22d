#pragma once

// Competency questions instantiated from WordNet relation pairs.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwa/error.hpp"
#include "cwa/kif.hpp"
#include "cwa/lexicon.hpp"

namespace cwa {

struct CompetencyQuestion {
  std::string id;
  std::string pattern;  // hypo-noun-1, ..., antonymy-1, or a template name
  RelationPair source;
  std::string c1;
  std::string c2;
  Formula conjecture;
  Formula truth_test;
  Formula falsity_test;
};

struct TestPair {
  Formula truth;
  Formula falsity;
};

inline TestPair make_tests(const Formula& conjecture) {
  auto free = free_variables(conjecture);
  if (!free.empty()) throw OpenFormulaError("conjecture has free variable " + free.front() + ": " + to_kif(conjecture));
  return TestPair{conjecture, Formula::negation(conjecture)};
}

struct GenerationStats {
  std::size_t pairs = 0;
  std::size_t skipped_unmapped = 0;
  std::size_t ineligible = 0;  // mapped, but the pattern's guard rejects s1
  std::size_t generated = 0;

  GenerationStats& operator+=(const GenerationStats& o) {
    pairs += o.pairs;
    skipped_unmapped += o.skipped_unmapped;
    ineligible += o.ineligible;
    generated += o.generated;
    return *this;
  }
};

// Set of mapping relations a pattern accepts for one endpoint.
struct RelationGuard {
  bool equivalence = true;
  bool subsumption = true;
  bool instance = true;

  bool accepts(MappingRelation r) const {
    switch (r) {
      case MappingRelation::equivalence: return equivalence;
      case MappingRelation::subsumption: return subsumption;
      case MappingRelation::instance: return instance;
    }
    return false;
  }

  static RelationGuard any() { return {}; }
  static RelationGuard only(std::string_view symbols) {
    if (symbols == "any") return any();
    RelationGuard g{false, false, false};
    for (char c : symbols) {
      if (c == '=') g.equivalence = true;
      else if (c == '+') g.subsumption = true;
      else if (c == '@') g.instance = true;
      else throw TemplateError("invalid mapping guard '" + std::string(symbols) + "'");
    }
    return g;
  }
};

namespace detail {

inline Formula substitute(const Formula& f, const std::string& c1, const std::string& c2) {
  Formula r = f;
  auto fix = [&](auto& self, Term& t) -> void {
    if (t.kind == Term::Kind::constant) {
      if (t.name == "<C1>") t.name = c1;
      else if (t.name == "<C2>") t.name = c2;
    }
    for (auto& a : t.args) self(self, a);
  };
  for (auto& t : r.terms) fix(fix, t);
  for (auto& c : r.children) c = substitute(c, c1, c2);
  return r;
}

inline bool mentions_constant(const Formula& f, std::string_view name) {
  auto in_term = [&](auto& self, const Term& t) -> bool {
    if (t.kind == Term::Kind::constant && t.name == name) return true;
    return std::any_of(t.args.begin(), t.args.end(), [&](const Term& a) { return self(self, a); });
  };
  if (std::any_of(f.terms.begin(), f.terms.end(), [&](const Term& t) { return in_term(in_term, t); })) return true;
  return std::any_of(f.children.begin(), f.children.end(), [&](const Formula& c) { return mentions_constant(c, name); });
}

inline Formula instance_atom(const std::string& var, const std::string& cls) {
  return Formula::atom("$instance", {Term::variable(var), Term::constant(cls)});
}

}  // namespace detail

struct QpTemplate {
  std::string name;
  RelationKind kind = RelationKind::antonymy;
  RelationGuard guard1;
  RelationGuard guard2;
  Formula skeleton;  // uses constants <C1> and <C2>

  void validate() const {
    if (!is_closed(skeleton)) throw TemplateError("template " + name + " leaves variables free");
    for (const char* p : {"<C1>", "<C2>"})
      if (!detail::mentions_constant(skeleton, p)) throw TemplateError("template " + name + " never uses " + p);
  }

  Formula instantiate(const std::string& c1, const std::string& c2) const {
    return detail::substitute(skeleton, c1, c2);
  }
};

// Parses `(qp-template NAME KIND GUARD1 GUARD2 SKELETON)` entries.
inline std::vector<QpTemplate> parse_templates(std::string_view text) {
  std::vector<QpTemplate> out;
  detail::Reader reader(text);
  for (;;) {
    std::optional<detail::Annotation> ignored;
    auto e = reader.next(ignored);
    if (!e) break;
    auto where = [&] { return std::to_string(e->line) + ":" + std::to_string(e->column) + ": "; };
    if (!e->is_list || e->items.empty() || e->items[0].is_list || e->items[0].token != "qp-template")
      throw TemplateError(where() + "expected (qp-template ...)");
    if (e->items.size() != 6)
      throw TemplateError(where() + "qp-template takes NAME KIND GUARD1 GUARD2 SKELETON");
    for (std::size_t i = 1; i <= 4; ++i)
      if (e->items[i].is_list) throw TemplateError(where() + "template header fields must be symbols");
    QpTemplate t;
    t.name = e->items[1].token;
    try {
      t.kind = relation_kind_from_string(e->items[2].token);
    } catch (const ConfigError& err) {
      throw TemplateError(where() + err.what());
    }
    t.guard1 = RelationGuard::only(e->items[3].token);
    t.guard2 = RelationGuard::only(e->items[4].token);
    detail::Builder builder;
    t.skeleton = builder.formula(e->items[5]);
    t.validate();
    out.push_back(std::move(t));
  }
  return out;
}

namespace detail {

inline std::string cq_id(const std::string& pattern, const RelationPair& p, const std::string& c1, const std::string& c2) {
  return pattern + ":" + p.s1.id + ":" + p.s2.id + ":" + c1 + ":" + c2;
}

// Shared driver: per pair, every accepted (C1, C2) concept combination.
template <class Build>
std::vector<CompetencyQuestion> generate(const std::vector<RelationPair>& pairs, const MappingIndex& mapping,
                                         const RelationGuard& g1, const RelationGuard& g2, GenerationStats* stats,
                                         Build&& build) {
  std::vector<CompetencyQuestion> out;
  std::set<std::string> ids;
  GenerationStats local;
  for (const auto& pair : pairs) {
    ++local.pairs;
    auto l1 = mapping.concepts_for(pair.s1.id);
    auto l2 = mapping.concepts_for(pair.s2.id);
    if (l1.empty() || l2.empty()) {
      ++local.skipped_unmapped;
      continue;
    }
    std::vector<std::string> cs1;
    std::vector<std::string> cs2;
    for (const auto& l : l1)
      if (g1.accepts(l.relation) && (cs1.empty() || cs1.back() != l.concept_name)) cs1.push_back(l.concept_name);
    for (const auto& l : l2)
      if (g2.accepts(l.relation) && (cs2.empty() || cs2.back() != l.concept_name)) cs2.push_back(l.concept_name);
    if (cs1.empty() || cs2.empty()) {
      ++local.ineligible;
      continue;
    }
    for (const auto& c1 : cs1) {
      for (const auto& c2 : cs2) {
        auto [pattern, conjecture] = build(pair, c1, c2);
        std::string id = cq_id(pattern, pair, c1, c2);
        if (!ids.insert(id).second) continue;
        auto tests = make_tests(conjecture);
        out.push_back(CompetencyQuestion{std::move(id), std::move(pattern), pair, c1, c2, std::move(conjecture),
                                         std::move(tests.truth), std::move(tests.falsity)});
        ++local.generated;
      }
    }
  }
  if (stats) *stats += local;
  return out;
}

inline std::vector<RelationPair> of_kind(const std::vector<RelationPair>& pairs, RelationKind kind) {
  std::vector<RelationPair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out), [&](const RelationPair& p) { return p.kind == kind; });
  return out;
}

inline std::string hypo_pattern(const RelationPair& p, int number) {
  return std::string(p.s1.pos == PartOfSpeech::noun ? "hypo-noun-" : "hypo-verb-") + std::to_string(number);
}

}  // namespace detail

inline Formula common_instance_conjecture(const std::string& c1, const std::string& c2) {
  return Formula::existential(
      {"?X"}, Formula::conjunction({detail::instance_atom("?X", c1), detail::instance_atom("?X", c2)}));
}

inline Formula subsumption_conjecture(const std::string& c1, const std::string& c2) {
  return Formula::universal({"?X"}, Formula::implication(detail::instance_atom("?X", c1), detail::instance_atom("?X", c2)));
}

inline Formula distinctness_conjecture(const std::string& c1, const std::string& c2) {
  return Formula::universal(
      {"?X", "?Y"},
      Formula::implication(Formula::conjunction({detail::instance_atom("?X", c1), detail::instance_atom("?Y", c2)}),
                           Formula::negation(Formula::equal(Term::variable("?X"), Term::variable("?Y")))));
}

// s1 mapped by subsumption or instance: the two concept sets meet.
inline std::vector<CompetencyQuestion> gen_hyponymy_qp1(const std::vector<RelationPair>& pairs,
                                                        const MappingIndex& mapping, GenerationStats* stats = nullptr) {
  return detail::generate(detail::of_kind(pairs, RelationKind::hyponymy), mapping, RelationGuard::only("+@"),
                          RelationGuard::any(), stats, [](const RelationPair& p, const std::string& c1, const std::string& c2) {
                            return std::pair{detail::hypo_pattern(p, 1), common_instance_conjecture(c1, c2)};
                          });
}

// s1 mapped by equivalence: the hypernym's concepts subsume the hyponym's.
inline std::vector<CompetencyQuestion> gen_hyponymy_qp2(const std::vector<RelationPair>& pairs,
                                                        const MappingIndex& mapping, GenerationStats* stats = nullptr) {
  return detail::generate(detail::of_kind(pairs, RelationKind::hyponymy), mapping, RelationGuard::only("="),
                          RelationGuard::any(), stats, [](const RelationPair& p, const std::string& c1, const std::string& c2) {
                            return std::pair{detail::hypo_pattern(p, 2), subsumption_conjecture(c1, c2)};
                          });
}

inline std::vector<CompetencyQuestion> gen_antonymy_cqs(const std::vector<RelationPair>& pairs,
                                                        const MappingIndex& mapping, GenerationStats* stats = nullptr) {
  return detail::generate(detail::of_kind(pairs, RelationKind::antonymy), mapping, RelationGuard::any(),
                          RelationGuard::any(), stats, [](const RelationPair&, const std::string& c1, const std::string& c2) {
                            return std::pair{std::string("antonymy-1"), distinctness_conjecture(c1, c2)};
                          });
}

inline std::vector<CompetencyQuestion> gen_template_cqs(const std::vector<RelationPair>& pairs,
                                                        const MappingIndex& mapping, const QpTemplate& tmpl,
                                                        GenerationStats* stats = nullptr) {
  tmpl.validate();
  return detail::generate(detail::of_kind(pairs, tmpl.kind), mapping, tmpl.guard1, tmpl.guard2, stats,
                          [&](const RelationPair&, const std::string& c1, const std::string& c2) {
                            return std::pair{tmpl.name, tmpl.instantiate(c1, c2)};
                          });
}

// Writes CQs as KIF conjectures, each preceded by `; cq:`, `; pattern:` and
// `; pair:` header comments.
inline std::string write_cq_corpus(const std::vector<CompetencyQuestion>& cqs) {
  std::string out;
  for (const auto& q : cqs) {
    out += "; cq: " + q.id + "\n";
    out += "; pattern: " + q.pattern + "\n";
    out += "; pair: " + std::string(to_string(q.source.kind)) + " " + q.source.s1.id + " " + q.source.s2.id + " " +
           q.c1 + " " + q.c2 + "\n";
    out += to_kif(q.conjecture) + "\n";
  }
  return out;
}

inline std::vector<CompetencyQuestion> read_cq_corpus(std::string_view text) {
  std::vector<CompetencyQuestion> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  CompetencyQuestion cur;
  bool have_id = false;
  bool have_pair = false;
  std::string body;
  auto flush = [&] {
    if (!have_id) return;
    if (!have_pair || body.empty()) throw MalformedRowError("incomplete CQ record " + cur.id, n);
    cur.conjecture = parse_formula(body);
    auto tests = make_tests(cur.conjecture);
    cur.truth_test = std::move(tests.truth);
    cur.falsity_test = std::move(tests.falsity);
    out.push_back(std::move(cur));
    cur = CompetencyQuestion{};
    have_id = have_pair = false;
    body.clear();
  };
  auto header = [](const std::string& l, std::string_view tag) {
    return l.rfind(tag, 0) == 0 ? std::optional<std::string>(std::string(detail::trim(l.substr(tag.size()))))
                                : std::nullopt;
  };
  while (std::getline(in, line)) {
    ++n;
    if (auto v = header(line, "; cq:")) {
      flush();
      cur.id = *v;
      have_id = true;
    } else if (auto p = header(line, "; pattern:")) {
      cur.pattern = *p;
    } else if (auto q = header(line, "; pair:")) {
      std::istringstream fields(*q);
      std::string kind, s1, s2;
      fields >> kind >> s1 >> s2 >> cur.c1 >> cur.c2;
      auto a = parse_synset_id(s1);
      auto b = parse_synset_id(s2);
      if (!a || !b || cur.c2.empty()) throw MalformedRowError("malformed pair header", n);
      cur.source = RelationPair{relation_kind_from_string(kind), *a, *b};
      have_pair = true;
    } else if (!detail::trim(line).empty() && detail::trim(line).front() != ';') {
      if (!have_id) throw MalformedRowError("conjecture without a `; cq:` header", n);
      body += line + "\n";
    }
  }
  flush();
  return out;
}

}  // namespace cwa
