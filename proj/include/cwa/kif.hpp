#pragma once

// SUO-KIF style axioms: AST, parser, serializer and size metrics.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cwa/error.hpp"

namespace cwa {

struct Term {
  enum class Kind { variable, constant, function };

  Kind kind = Kind::constant;
  std::string name;
  std::vector<Term> args;  // function applications only

  static Term variable(std::string name) { return Term{Kind::variable, std::move(name), {}}; }
  static Term constant(std::string name) { return Term{Kind::constant, std::move(name), {}}; }
  static Term function(std::string name, std::vector<Term> args) {
    return Term{Kind::function, std::move(name), std::move(args)};
  }

  bool is_variable() const { return kind == Kind::variable; }

  bool operator==(const Term&) const = default;
};

struct Formula {
  enum class Kind { atom, equal, negation, conjunction, disjunction, implication, equivalence, universal, existential };

  Kind kind = Kind::atom;
  std::string predicate;               // atom
  std::vector<Term> terms;             // atom arguments, or the two sides of equal
  std::vector<Formula> children;       // connective operands, quantifier body
  std::vector<std::string> variables;  // quantifier block

  static Formula atom(std::string predicate, std::vector<Term> terms) {
    Formula f;
    f.kind = Kind::atom;
    f.predicate = std::move(predicate);
    f.terms = std::move(terms);
    return f;
  }
  static Formula equal(Term lhs, Term rhs) {
    Formula f;
    f.kind = Kind::equal;
    f.terms = {std::move(lhs), std::move(rhs)};
    return f;
  }
  static Formula negation(Formula body) { return connective(Kind::negation, {std::move(body)}); }
  static Formula conjunction(std::vector<Formula> operands) { return connective(Kind::conjunction, std::move(operands)); }
  static Formula disjunction(std::vector<Formula> operands) { return connective(Kind::disjunction, std::move(operands)); }
  static Formula implication(Formula lhs, Formula rhs) {
    return connective(Kind::implication, {std::move(lhs), std::move(rhs)});
  }
  static Formula equivalence(Formula lhs, Formula rhs) {
    return connective(Kind::equivalence, {std::move(lhs), std::move(rhs)});
  }
  static Formula universal(std::vector<std::string> vars, Formula body) {
    return quantifier(Kind::universal, std::move(vars), std::move(body));
  }
  static Formula existential(std::vector<std::string> vars, Formula body) {
    return quantifier(Kind::existential, std::move(vars), std::move(body));
  }

  bool is_atomic() const { return kind == Kind::atom || kind == Kind::equal; }
  bool is_quantifier() const { return kind == Kind::universal || kind == Kind::existential; }

  bool operator==(const Formula&) const = default;

 private:
  static Formula connective(Kind kind, std::vector<Formula> operands) {
    Formula f;
    f.kind = kind;
    f.children = std::move(operands);
    return f;
  }
  static Formula quantifier(Kind kind, std::vector<std::string> vars, Formula body) {
    Formula f;
    f.kind = kind;
    f.variables = std::move(vars);
    f.children.push_back(std::move(body));
    return f;
  }
};

enum class Provenance { original, completion, cwa_disjoint, cwa_nondisjoint, curation, support };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::original: return "original";
    case Provenance::completion: return "completion";
    case Provenance::cwa_disjoint: return "cwa-disjoint";
    case Provenance::cwa_nondisjoint: return "cwa-nondisjoint";
    case Provenance::curation: return "curation";
    case Provenance::support: return "support";
  }
  return "original";
}

inline std::optional<Provenance> provenance_from_string(std::string_view s) {
  for (auto p : {Provenance::original, Provenance::completion, Provenance::cwa_disjoint, Provenance::cwa_nondisjoint,
                 Provenance::curation, Provenance::support}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

// Axiom-name prefix per provenance; TPTP names reuse it so used-axiom lists
// reported by provers can be bucketed by origin.
inline std::string_view id_prefix(Provenance p) {
  switch (p) {
    case Provenance::original: return "orig_";
    case Provenance::completion: return "comp_";
    case Provenance::cwa_disjoint: return "cwad_";
    case Provenance::cwa_nondisjoint: return "cwan_";
    case Provenance::curation: return "cur_";
    case Provenance::support: return "sup_";
  }
  return "orig_";
}

struct Axiom {
  std::string id;
  Formula formula;
  Provenance provenance = Provenance::original;
  std::string source = "generated";  // "file:line" for parsed axioms
};

std::string to_kif(const Formula& f);
Formula alpha_normalize(const Formula& f);

class Ontology {
 public:
  Ontology() = default;

  // Appends the axiom unless an alpha-equivalent formula with the same
  // provenance is already present. Returns false when dropped.
  bool add(Axiom axiom) {
    if (ids_.count(axiom.id)) throw Error("duplicate axiom id: " + axiom.id);
    std::string key = std::string(to_string(axiom.provenance)) + "|" + to_kif(alpha_normalize(axiom.formula));
    if (!keys_.insert(std::move(key)).second) return false;
    ids_.emplace(axiom.id, axioms_.size());
    std::set<std::string> preds;
    collect_predicates(axiom.formula, preds);
    for (const auto& p : preds) index_[p].push_back(axiom.id);
    axioms_.push_back(std::move(axiom));
    return true;
  }

  void append(const std::vector<Axiom>& axioms) {
    for (const auto& a : axioms) add(a);
  }

  const std::vector<Axiom>& axioms() const { return axioms_; }
  std::size_t size() const { return axioms_.size(); }
  bool empty() const { return axioms_.empty(); }

  const Axiom* find(std::string_view id) const {
    auto it = ids_.find(std::string(id));
    return it == ids_.end() ? nullptr : &axioms_[it->second];
  }

  // Ids of axioms mentioning the predicate, in axiom order.
  std::vector<std::string> with_predicate(std::string_view predicate) const {
    auto it = index_.find(std::string(predicate));
    return it == index_.end() ? std::vector<std::string>{} : it->second;
  }

  std::size_t count(Provenance p) const {
    return static_cast<std::size_t>(
        std::count_if(axioms_.begin(), axioms_.end(), [p](const Axiom& a) { return a.provenance == p; }));
  }

 private:
  static void collect_predicates(const Formula& f, std::set<std::string>& out) {
    if (f.kind == Formula::Kind::atom) out.insert(f.predicate);
    for (const auto& c : f.children) collect_predicates(c, out);
  }

  std::vector<Axiom> axioms_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::set<std::string> keys_;
  std::map<std::string, std::vector<std::string>> index_;
};

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline void write_term(std::string& out, const Term& t) {
  if (t.kind != Term::Kind::function) {
    out += t.name;
    return;
  }
  out += '(';
  out += t.name;
  for (const auto& a : t.args) {
    out += ' ';
    write_term(out, a);
  }
  out += ')';
}

inline std::string_view connective_name(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::negation: return "not";
    case Formula::Kind::conjunction: return "and";
    case Formula::Kind::disjunction: return "or";
    case Formula::Kind::implication: return "=>";
    case Formula::Kind::equivalence: return "<=>";
    case Formula::Kind::universal: return "forall";
    case Formula::Kind::existential: return "exists";
    case Formula::Kind::equal: return "equal";
    case Formula::Kind::atom: break;
  }
  return "";
}

inline void write_formula(std::string& out, const Formula& f) {
  using K = Formula::Kind;
  out += '(';
  switch (f.kind) {
    case K::atom:
      out += f.predicate;
      for (const auto& t : f.terms) {
        out += ' ';
        write_term(out, t);
      }
      break;
    case K::equal:
      out += "equal ";
      write_term(out, f.terms[0]);
      out += ' ';
      write_term(out, f.terms[1]);
      break;
    case K::universal:
    case K::existential: {
      out += connective_name(f.kind);
      out += " (";
      for (std::size_t i = 0; i < f.variables.size(); ++i) {
        if (i) out += ' ';
        out += f.variables[i];
      }
      out += ") ";
      write_formula(out, f.children[0]);
      break;
    }
    default:
      out += connective_name(f.kind);
      for (const auto& c : f.children) {
        out += ' ';
        write_formula(out, c);
      }
      break;
  }
  out += ')';
}

}  // namespace detail

inline std::string to_kif(const Formula& f) {
  std::string out;
  detail::write_formula(out, f);
  return out;
}

// One axiom per line. Non-original axioms are preceded by an `; @axiom`
// annotation so that provenance and id survive a re-parse.
inline std::string serialize_kif(const Ontology& ontology) {
  std::string out;
  for (const auto& a : ontology.axioms()) {
    if (a.provenance != Provenance::original) {
      out += "; @axiom ";
      out += a.id;
      out += ' ';
      out += to_string(a.provenance);
      out += '\n';
    }
    detail::write_formula(out, a.formula);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct SExpr {
  bool is_list = false;
  std::string token;
  std::vector<SExpr> items;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Annotation {
  std::string id;
  Provenance provenance;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Reads the next top-level expression; nullopt at end of input.
  std::optional<SExpr> next(std::optional<Annotation>& annotation) {
    skip_space(&annotation);
    if (pos_ >= text_.size()) return std::nullopt;
    return read();
  }

 private:
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space(std::optional<Annotation>* annotation) {
    while (pos_ < text_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        std::size_t line = line_;
        std::size_t col = col_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && peek() != '\n') advance();
        if (annotation) parse_annotation(text_.substr(start, pos_ - start), line, col, *annotation);
      } else {
        break;
      }
    }
  }

  static void parse_annotation(std::string_view comment, std::size_t line, std::size_t col,
                               std::optional<Annotation>& annotation) {
    constexpr std::string_view tag = "; @axiom ";
    if (comment.substr(0, tag.size()) != tag) return;
    std::istringstream in{std::string(comment.substr(tag.size()))};
    std::string id;
    std::string prov;
    in >> id >> prov;
    auto p = provenance_from_string(prov);
    if (id.empty() || !p) throw SyntaxError("malformed @axiom annotation", line, col);
    annotation = Annotation{id, *p};
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = peek();
    if (c == ')') throw SyntaxError("unbalanced ')'", line_, col_);
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip_space(nullptr);
        if (pos_ >= text_.size()) throw SyntaxError("unbalanced '(': missing ')'", e.line, e.column);
        if (peek() == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == '"') {
      std::size_t start = pos_;
      advance();
      while (pos_ < text_.size() && peek() != '"') {
        if (peek() == '\\' && pos_ + 1 < text_.size()) advance();
        advance();
      }
      if (pos_ >= text_.size()) throw SyntaxError("unterminated string", e.line, e.column);
      advance();
      e.token = std::string(text_.substr(start, pos_ - start));
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = peek();
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"') break;
      advance();
    }
    e.token = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline bool is_upper_token(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

inline bool is_connective(std::string_view s) {
  return s == "and" || s == "or" || s == "not" || s == "=>" || s == "<=>" || s == "forall" || s == "exists" ||
         s == "equal";
}

// Heads made only of operator characters that are not a known connective,
// e.g. "<=" or "->", are rejected rather than read as predicates.
inline bool looks_like_operator(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::string_view("<=>-|&~!").find(c) != std::string_view::npos; });
}

class Builder {
 public:
  Formula formula(const SExpr& e) {
    if (!e.is_list) throw SyntaxError("expected a formula, found '" + e.token + "'", e.line, e.column);
    if (e.items.empty()) throw SyntaxError("empty formula", e.line, e.column);
    const SExpr& head = e.items[0];
    if (head.is_list) throw SyntaxError("unsupported construct: formula in predicate position", head.line, head.column);
    const std::string& op = head.token;
    const std::size_t n = e.items.size() - 1;
    auto arity = [&](bool ok, const char* expected) {
      if (!ok) throw SyntaxError("wrong arity for '" + op + "': expected " + expected, e.line, e.column);
    };
    if (op == "and" || op == "or") {
      arity(n >= 2, "at least 2 operands");
      std::vector<Formula> operands;
      for (std::size_t i = 1; i <= n; ++i) operands.push_back(formula(e.items[i]));
      return op == "and" ? Formula::conjunction(std::move(operands)) : Formula::disjunction(std::move(operands));
    }
    if (op == "not") {
      arity(n == 1, "1 operand");
      return Formula::negation(formula(e.items[1]));
    }
    if (op == "=>" || op == "<=>") {
      arity(n == 2, "2 operands");
      Formula lhs = formula(e.items[1]);
      Formula rhs = formula(e.items[2]);
      return op == "=>" ? Formula::implication(std::move(lhs), std::move(rhs))
                        : Formula::equivalence(std::move(lhs), std::move(rhs));
    }
    if (op == "forall" || op == "exists") {
      arity(n == 2, "a variable list and a body");
      const SExpr& vars = e.items[1];
      if (!vars.is_list || vars.items.empty())
        throw SyntaxError("quantifier needs a non-empty variable list", vars.line, vars.column);
      std::vector<std::string> names;
      for (const auto& v : vars.items) {
        if (v.is_list || (!(v.token.size() > 1 && v.token[0] == '?') && !is_upper_token(v.token)))
          throw SyntaxError("invalid quantified variable", v.line, v.column);
        names.push_back(v.token);
      }
      for (const auto& v : names) scope_.push_back(v);
      Formula body = formula(e.items[2]);
      scope_.resize(scope_.size() - names.size());
      return op == "forall" ? Formula::universal(std::move(names), std::move(body))
                            : Formula::existential(std::move(names), std::move(body));
    }
    if (op == "equal") {
      arity(n == 2, "2 terms");
      return Formula::equal(term(e.items[1]), term(e.items[2]));
    }
    if (looks_like_operator(op)) throw SyntaxError("unknown connective '" + op + "'", head.line, head.column);
    if (op[0] == '?' || bound(op))
      throw SyntaxError("unsupported construct: variable in predicate position", head.line, head.column);
    if (op[0] == '"') throw SyntaxError("string in predicate position", head.line, head.column);
    std::vector<Term> args;
    for (std::size_t i = 1; i <= n; ++i) args.push_back(term(e.items[i]));
    return Formula::atom(op, std::move(args));
  }

 private:
  bool bound(const std::string& name) const {
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
  }

  Term term(const SExpr& e) {
    if (!e.is_list) {
      if ((e.token.size() > 1 && e.token[0] == '?') || bound(e.token)) return Term::variable(e.token);
      if (e.token == "?") throw SyntaxError("empty variable name", e.line, e.column);
      return Term::constant(e.token);
    }
    if (e.items.empty()) throw SyntaxError("empty term", e.line, e.column);
    const SExpr& head = e.items[0];
    if (head.is_list || head.token[0] == '?' || head.token[0] == '"' || bound(head.token))
      throw SyntaxError("unsupported construct: non-constant function symbol", e.line, e.column);
    if (is_connective(head.token) || looks_like_operator(head.token))
      throw SyntaxError("unsupported construct: formula used as a term", e.line, e.column);
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i]));
    return Term::function(head.token, std::move(args));
  }

  std::vector<std::string> scope_;
};

}  // namespace detail

// Parses a sequence of top-level formulas. Axioms without an `; @axiom`
// annotation get provenance=original and id orig_<ordinal>.
inline Ontology parse_kif(std::string_view text, std::string_view source_name = "<input>") {
  Ontology ontology;
  detail::Reader reader(text);
  std::size_t ordinal = 0;
  for (;;) {
    std::optional<detail::Annotation> annotation;
    auto expr = reader.next(annotation);
    if (!expr) break;
    detail::Builder builder;
    Axiom axiom;
    axiom.formula = builder.formula(*expr);
    axiom.source = std::string(source_name) + ":" + std::to_string(expr->line);
    if (annotation) {
      axiom.id = annotation->id;
      axiom.provenance = annotation->provenance;
    } else {
      axiom.id = "orig_" + std::to_string(++ordinal);
    }
    if (ontology.find(axiom.id)) throw SyntaxError("duplicate axiom id " + axiom.id, expr->line, expr->column);
    ontology.add(std::move(axiom));
  }
  return ontology;
}

inline Formula parse_formula(std::string_view text) {
  detail::Reader reader(text);
  std::optional<detail::Annotation> ignored;
  auto expr = reader.next(ignored);
  if (!expr) throw SyntaxError("expected a formula", 1, 1);
  detail::Builder builder;
  Formula f = builder.formula(*expr);
  if (reader.next(ignored)) throw SyntaxError("trailing input after formula", 1, 1);
  return f;
}

// ---------------------------------------------------------------------------
// Variables and normal forms

namespace detail {

inline void free_vars(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::variable) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end() &&
        std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
  }
  for (const auto& a : t.args) free_vars(a, bound, out);
}

inline void free_vars(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  for (const auto& t : f.terms) free_vars(t, bound, out);
  if (f.is_quantifier()) {
    for (const auto& v : f.variables) bound.push_back(v);
    free_vars(f.children[0], bound, out);
    bound.resize(bound.size() - f.variables.size());
    return;
  }
  for (const auto& c : f.children) free_vars(c, bound, out);
}

inline Term rename(const Term& t, const std::vector<std::pair<std::string, std::string>>& map) {
  Term r = t;
  if (t.kind == Term::Kind::variable) {
    for (auto it = map.rbegin(); it != map.rend(); ++it) {
      if (it->first == t.name) {
        r.name = it->second;
        break;
      }
    }
  }
  for (auto& a : r.args) a = rename(a, map);
  return r;
}

inline Formula rename(const Formula& f, std::vector<std::pair<std::string, std::string>>& map, std::size_t& counter) {
  Formula r = f;
  for (auto& t : r.terms) t = rename(t, map);
  if (f.is_quantifier()) {
    for (auto& v : r.variables) {
      std::string fresh = "?V" + std::to_string(++counter);
      map.emplace_back(v, fresh);
      v = fresh;
    }
    r.children[0] = rename(f.children[0], map, counter);
    map.resize(map.size() - f.variables.size());
    return r;
  }
  for (auto& c : r.children) c = rename(c, map, counter);
  return r;
}

inline Formula sort_commutative(const Formula& f) {
  Formula r = f;
  for (auto& c : r.children) c = sort_commutative(c);
  if (r.kind == Formula::Kind::conjunction || r.kind == Formula::Kind::disjunction) {
    std::sort(r.children.begin(), r.children.end(),
              [](const Formula& a, const Formula& b) { return to_kif(a) < to_kif(b); });
  }
  return r;
}

}  // namespace detail

// Free variables in order of first occurrence.
inline std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  detail::free_vars(f, bound, out);
  return out;
}

inline bool is_closed(const Formula& f) { return free_variables(f).empty(); }

// Renames bound variables to ?V1, ?V2, ... in binding order and free
// variables to ?F1, ?F2, ... in occurrence order.
inline Formula alpha_normalize(const Formula& f) {
  std::vector<std::pair<std::string, std::string>> map;
  std::size_t free_counter = 0;
  for (const auto& v : free_variables(f)) map.emplace_back(v, "?F" + std::to_string(++free_counter));
  std::size_t counter = 0;
  return detail::rename(f, map, counter);
}

// Alpha-normalized, with conjunction/disjunction operands sorted.
inline Formula canonicalize(const Formula& f) { return detail::sort_commutative(alpha_normalize(f)); }

inline bool alpha_equivalent(const Formula& a, const Formula& b) { return alpha_normalize(a) == alpha_normalize(b); }

// Structural equality of ontologies: same axioms, ids and provenance in the
// same order, formulas equal up to bound-variable renaming.
inline bool structurally_equal(const Ontology& a, const Ontology& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Axiom& x = a.axioms()[i];
    const Axiom& y = b.axioms()[i];
    if (x.id != y.id || x.provenance != y.provenance || !alpha_equivalent(x.formula, y.formula)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Size metrics

struct SizeStats {
  std::size_t axioms = 0;
  std::size_t unit_clauses = 0;
  std::size_t formulae = 0;
  std::size_t atoms = 0;  // including equalities
  std::size_t forall_blocks = 0;
  std::size_t exists_blocks = 0;
  std::size_t iff = 0;
  std::size_t implies = 0;
  std::size_t and_ = 0;
  std::size_t or_ = 0;
  std::size_t not_ = 0;
  std::size_t equalities = 0;

  SizeStats& operator+=(const SizeStats& o) {
    axioms += o.axioms;
    unit_clauses += o.unit_clauses;
    formulae += o.formulae;
    atoms += o.atoms;
    forall_blocks += o.forall_blocks;
    exists_blocks += o.exists_blocks;
    iff += o.iff;
    implies += o.implies;
    and_ += o.and_;
    or_ += o.or_;
    not_ += o.not_;
    equalities += o.equalities;
    return *this;
  }

  bool operator==(const SizeStats&) const = default;

  static std::string csv_header() {
    return "axioms,unit_clauses,formulae,atoms,forall_blocks,exists_blocks,iff,implies,and,or,not,equalities";
  }

  std::string csv_row() const {
    std::ostringstream out;
    out << axioms << ',' << unit_clauses << ',' << formulae << ',' << atoms << ',' << forall_blocks << ','
        << exists_blocks << ',' << iff << ',' << implies << ',' << and_ << ',' << or_ << ',' << not_ << ','
        << equalities;
    return out.str();
  }
};

namespace detail {

inline void count(const Formula& f, SizeStats& s) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::atom: ++s.atoms; break;
    case K::equal:
      ++s.atoms;
      ++s.equalities;
      break;
    case K::negation: ++s.not_; break;
    // n-ary operators count as n-1 binary connectives.
    case K::conjunction: s.and_ += f.children.size() - 1; break;
    case K::disjunction: s.or_ += f.children.size() - 1; break;
    case K::implication: ++s.implies; break;
    case K::equivalence: ++s.iff; break;
    case K::universal: ++s.forall_blocks; break;
    case K::existential: ++s.exists_blocks; break;
  }
  for (const auto& c : f.children) count(c, s);
}

}  // namespace detail

inline bool is_unit_clause(const Formula& f) {
  if (f.is_atomic()) return true;
  return f.kind == Formula::Kind::negation && f.children[0].is_atomic();
}

inline SizeStats count_metrics(const Ontology& ontology) {
  SizeStats s;
  for (const auto& a : ontology.axioms()) {
    ++s.axioms;
    if (is_unit_clause(a.formula))
      ++s.unit_clauses;
    else
      ++s.formulae;
    detail::count(a.formula, s);
  }
  return s;
}

}  // namespace cwa
