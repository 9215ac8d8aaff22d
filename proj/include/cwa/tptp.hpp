#pragma once

// TPTP first-order form output for external provers.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwa/error.hpp"
#include "cwa/kif.hpp"

namespace cwa {

enum class SymbolKind { predicate, constant, function };

// Reversible map from KIF identifiers to TPTP lower words. Predicates get
// `s__`, constants `c__`, functions `f__`; clashes after lowercasing take a
// numeric suffix in insertion order.
class SymbolTable {
 public:
  const std::string& mangle(SymbolKind kind, const std::string& name) {
    auto key = std::pair{kind, name};
    auto it = forward_.find(key);
    if (it != forward_.end()) return it->second;
    std::string base = std::string(prefix(kind)) + sanitize(name);
    std::string candidate = base;
    for (int n = 2; used_.count(candidate); ++n) candidate = base + "_" + std::to_string(n);
    used_.insert(candidate);
    backward_.emplace(candidate, key);
    return forward_.emplace(key, candidate).first->second;
  }

  std::string lookup(SymbolKind kind, const std::string& name) const {
    auto it = forward_.find(std::pair{kind, name});
    if (it == forward_.end()) throw Error("symbol not in table: " + name);
    return it->second;
  }

  std::string demangle(const std::string& tptp) const {
    auto it = backward_.find(tptp);
    if (it == backward_.end()) throw Error("unknown TPTP symbol: " + tptp);
    return it->second.second;
  }

  bool contains(SymbolKind kind, const std::string& name) const { return forward_.count(std::pair{kind, name}) != 0; }
  std::size_t size() const { return forward_.size(); }

  // Mangles all symbols of the formulas, in sorted order per kind, so the
  // table depends only on the symbol set.
  void add_all(const std::vector<const Formula*>& formulas) {
    std::set<std::pair<SymbolKind, std::string>> symbols;
    for (const auto* f : formulas) collect(*f, symbols);
    for (const auto& [kind, name] : symbols) mangle(kind, name);
  }

  // name \t kind \t tptp, one row per symbol.
  std::string to_tsv() const {
    std::string out;
    for (const auto& [key, value] : forward_) {
      const char* k = key.first == SymbolKind::predicate ? "predicate" : key.first == SymbolKind::constant ? "constant" : "function";
      out += key.second + "\t" + k + "\t" + value + "\n";
    }
    return out;
  }

  static std::string sanitize(std::string_view name) {
    std::string out;
    for (char c : name) {
      unsigned char u = static_cast<unsigned char>(c);
      if (std::isalnum(u)) out += static_cast<char>(std::tolower(u));
      else if (c == '_' || c == '-') out += '_';
      else if (c == '$' && out.empty()) continue;
      else out += '_';
    }
    if (out.empty()) out = "x";
    return out;
  }

 private:
  static std::string_view prefix(SymbolKind k) {
    switch (k) {
      case SymbolKind::predicate: return "s__";
      case SymbolKind::constant: return "c__";
      case SymbolKind::function: return "f__";
    }
    return "s__";
  }

  static void collect(const Term& t, std::set<std::pair<SymbolKind, std::string>>& out) {
    if (t.kind == Term::Kind::constant) out.emplace(SymbolKind::constant, t.name);
    if (t.kind == Term::Kind::function) out.emplace(SymbolKind::function, t.name);
    for (const auto& a : t.args) collect(a, out);
  }

  static void collect(const Formula& f, std::set<std::pair<SymbolKind, std::string>>& out) {
    if (f.kind == Formula::Kind::atom) out.emplace(SymbolKind::predicate, f.predicate);
    for (const auto& t : f.terms) collect(t, out);
    for (const auto& c : f.children) collect(c, out);
  }

  std::map<std::pair<SymbolKind, std::string>, std::string> forward_;
  std::map<std::string, std::pair<SymbolKind, std::string>> backward_;
  std::set<std::string> used_;
};

namespace detail {

class FofWriter {
 public:
  explicit FofWriter(const SymbolTable& table) : table_(table) {}

  std::string closed(const Formula& f) {
    vars_.clear();
    taken_.clear();
    auto free = free_variables(f);
    if (free.empty()) return formula(f);
    return formula(Formula::universal(free, f));
  }

 private:
  std::string var_name(const std::string& kif) {
    std::string base;
    for (char c : kif) {
      unsigned char u = static_cast<unsigned char>(c);
      if (std::isalnum(u) || c == '_') base += base.empty() ? static_cast<char>(std::toupper(u)) : c;
    }
    if (base.empty() || !std::isupper(static_cast<unsigned char>(base[0]))) base = "V" + base;
    std::string name = base;
    for (int n = 2; taken_.count(name); ++n) name = base + "_" + std::to_string(n);
    taken_.insert(name);
    return name;
  }

  std::string term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::variable: {
        for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
          if (it->first == t.name) return it->second;
        throw UnsupportedConstructError("unbound variable " + t.name);
      }
      case Term::Kind::constant: return table_.lookup(SymbolKind::constant, t.name);
      case Term::Kind::function: {
        std::string out = table_.lookup(SymbolKind::function, t.name) + "(";
        for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? "," : "") + term(t.args[i]);
        return out + ")";
      }
    }
    return "";
  }

  std::string joined(const Formula& f, std::string_view op) {
    std::string out = "(";
    for (std::size_t i = 0; i < f.children.size(); ++i) {
      if (i) out += " " + std::string(op) + " ";
      out += formula(f.children[i]);
    }
    return out + ")";
  }

  std::string formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::atom: {
        std::string out = table_.lookup(SymbolKind::predicate, f.predicate);
        if (f.terms.empty()) return out;
        out += "(";
        for (std::size_t i = 0; i < f.terms.size(); ++i) out += (i ? "," : "") + term(f.terms[i]);
        return out + ")";
      }
      case K::equal: return "(" + term(f.terms[0]) + " = " + term(f.terms[1]) + ")";
      case K::negation: return "~ " + formula(f.children[0]);
      case K::conjunction: return joined(f, "&");
      case K::disjunction: return joined(f, "|");
      case K::implication: return joined(f, "=>");
      case K::equivalence: return joined(f, "<=>");
      case K::universal:
      case K::existential: {
        std::string out = f.kind == K::universal ? "(! [" : "(? [";
        for (std::size_t i = 0; i < f.variables.size(); ++i) {
          std::string v = var_name(f.variables[i]);
          vars_.emplace_back(f.variables[i], v);
          out += (i ? "," : "") + v;
        }
        out += "] : " + formula(f.children[0]) + ")";
        vars_.resize(vars_.size() - f.variables.size());
        return out;
      }
    }
    return "";
  }

  const SymbolTable& table_;
  std::vector<std::pair<std::string, std::string>> vars_;
  std::set<std::string> taken_;
};

inline bool tptp_lower_word(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace detail

// FOF text of a formula; free variables are universally closed.
inline std::string to_fof(const Formula& f, const SymbolTable& table) { return detail::FofWriter(table).closed(f); }

inline std::string to_fof(const Formula& f) {
  SymbolTable table;
  table.add_all({&f});
  return to_fof(f, table);
}

enum class Polarity { truth, falsity };

inline std::string_view to_string(Polarity p) { return p == Polarity::truth ? "truth" : "falsity"; }

inline Polarity polarity_from_string(std::string_view s) {
  if (s == "truth") return Polarity::truth;
  if (s == "falsity") return Polarity::falsity;
  throw Error("unknown polarity: " + std::string(s));
}

struct ProblemMetadata {
  std::string cq_id;
  std::string pattern;
  std::string mode;
  Polarity polarity = Polarity::truth;
};

// Pre-renders the axiom lines of one ontology so many problems can share
// them; each problem adds only its conjecture's new symbols.
class TptpEmitter {
 public:
  explicit TptpEmitter(const Ontology& ontology) {
    std::vector<const Formula*> formulas;
    for (const auto& a : ontology.axioms()) formulas.push_back(&a.formula);
    table_.add_all(formulas);
    std::set<std::string> used;
    for (const auto& a : ontology.axioms()) {
      std::string name = detail::tptp_lower_word(a.id) ? a.id : "ax_" + SymbolTable::sanitize(a.id);
      std::string base = name;
      for (int n = 2; used.count(name) || name == "goal"; ++n) name = base + "_" + std::to_string(n);
      used.insert(name);
      names_.emplace(name, a.id);
      axiom_text_ += "fof(" + name + ", axiom, " + to_fof(a.formula, table_) + ").\n";
    }
  }

  const SymbolTable& symbols() const { return table_; }
  const std::string& axiom_lines() const { return axiom_text_; }

  // TPTP formula name to axiom id.
  const std::map<std::string, std::string>& axiom_names() const { return names_; }

  std::string problem(const Formula& conjecture, const ProblemMetadata& meta) const {
    SymbolTable table = table_;
    table.add_all({&conjecture});
    std::string out;
    if (!meta.cq_id.empty()) out += "% cq: " + meta.cq_id + "\n";
    if (!meta.pattern.empty()) out += "% pattern: " + meta.pattern + "\n";
    if (!meta.mode.empty()) out += "% mode: " + meta.mode + "\n";
    out += "% polarity: " + std::string(to_string(meta.polarity)) + "\n";
    out += axiom_text_;
    out += "fof(goal, conjecture, " + to_fof(conjecture, table) + ").\n";
    return out;
  }

 private:
  SymbolTable table_;
  std::string axiom_text_;
  std::map<std::string, std::string> names_;
};

inline std::string emit_problem(const Ontology& ontology, const Formula& test, const ProblemMetadata& meta) {
  return TptpEmitter(ontology).problem(test, meta);
}

}  // namespace cwa
