#pragma once

// Structural fragment of an ontology: the subclass DAG plus disjointness
// and non-disjointness facts, with derived pair status.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwa/error.hpp"
#include "cwa/kif.hpp"

namespace cwa {

// Unordered class pair stored with first <= second.
struct ClassPair {
  std::string first;
  std::string second;

  ClassPair() = default;
  ClassPair(std::string a, std::string b) : first(std::move(a)), second(std::move(b)) {
    if (second < first) std::swap(first, second);
  }

  bool operator==(const ClassPair&) const = default;
  auto operator<=>(const ClassPair&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const ClassPair& p) {
  return os << '{' << p.first << ", " << p.second << '}';
}

enum class PairStatus { disjoint, nondisjoint, open, conflict };

inline std::string_view to_string(PairStatus s) {
  switch (s) {
    case PairStatus::disjoint: return "disjoint";
    case PairStatus::nondisjoint: return "nondisjoint";
    case PairStatus::open: return "open";
    case PairStatus::conflict: return "conflict";
  }
  return "open";
}

inline std::ostream& operator<<(std::ostream& os, PairStatus s) { return os << to_string(s); }

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  bool intersects(const Bitset& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const Bitset&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct TaxonomyFacts {
  std::set<std::string> classes;
  std::set<std::pair<std::string, std::string>> edges;  // (sub, super)
  std::set<ClassPair> disjoint;
  std::set<ClassPair> nondisjoint;
  std::set<ClassPair> inheritable_nondisjoint;
  std::set<std::pair<std::string, std::string>> instances;  // (object, class)
};

class Taxonomy {
 public:
  Taxonomy() : Taxonomy(TaxonomyFacts{}) {}

  explicit Taxonomy(TaxonomyFacts facts, std::vector<std::string> warnings = {})
      : facts_(std::move(facts)), warnings_(std::move(warnings)) {
    for (const auto& [sub, super] : facts_.edges) {
      facts_.classes.insert(sub);
      facts_.classes.insert(super);
    }
    for (const auto* set : {&facts_.disjoint, &facts_.nondisjoint, &facts_.inheritable_nondisjoint}) {
      for (const auto& p : *set) {
        facts_.classes.insert(p.first);
        facts_.classes.insert(p.second);
      }
    }
    names_.assign(facts_.classes.begin(), facts_.classes.end());
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
    const std::size_t n = names_.size();
    children_.assign(n, {});
    parents_.assign(n, {});
    for (const auto& [sub, super] : facts_.edges) {
      children_[index_.at(super)].push_back(index_.at(sub));
      parents_[index_.at(sub)].push_back(index_.at(super));
    }
    compute_closure();
    compute_pairs();
  }

  const TaxonomyFacts& facts() const { return facts_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<std::string>& classes() const { return names_; }
  std::size_t size() const { return names_.size(); }
  std::size_t edge_count() const { return facts_.edges.size(); }

  bool has_class(std::string_view c) const { return index_.count(std::string(c)) != 0; }

  std::size_t index_of(std::string_view c) const {
    auto it = index_.find(std::string(c));
    if (it == index_.end()) throw UnknownClassError(std::string(c));
    return it->second;
  }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::set<std::string> direct_subclasses(std::string_view c) const {
    std::set<std::string> out;
    for (auto i : children_[index_of(c)]) out.insert(names_[i]);
    return out;
  }
  std::set<std::string> direct_superclasses(std::string_view c) const {
    std::set<std::string> out;
    for (auto i : parents_[index_of(c)]) out.insert(names_[i]);
    return out;
  }

  // Children by index, in lexicographic order.
  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }

  bool subclass_closed(std::string_view x, std::string_view c) const {
    return anc_[index_of(x)].test(index_of(c));
  }

  // Reflexive-transitive closures, by index.
  const Bitset& ancestors(std::size_t i) const { return anc_[i]; }
  const Bitset& descendants(std::size_t i) const { return desc_[i]; }
  const Bitset& disjoint_partners(std::size_t i) const { return disj_[i]; }
  const Bitset& nondisjoint_partners(std::size_t i) const { return nd_[i]; }

  bool derived_disjoint(std::size_t a, std::size_t b) const { return disj_[a].test(b); }
  // Non-disjoint through subclass or through nonDisjoint/inheritableNonDisjoint
  // facts, ignoring the common-subclass argument.
  bool stated_nondisjoint(std::size_t a, std::size_t b) const { return nd_stated_[a].test(b); }
  // Some subclass of a is derived disjoint with some subclass of b.
  bool has_disjoint_descendants(std::size_t a, std::size_t b) const { return desc_disj_[a].intersects(desc_[b]); }
  bool share_descendant(std::size_t a, std::size_t b) const { return desc_[a].intersects(desc_[b]); }
  bool derived_nondisjoint(std::size_t a, std::size_t b) const { return nd_[a].test(b); }
  bool comparable(std::size_t a, std::size_t b) const { return anc_[a].test(b) || anc_[b].test(a); }

  PairStatus pair_status(std::size_t a, std::size_t b) const {
    bool d = disj_[a].test(b);
    bool n = nd_[a].test(b);
    if (d && n) return PairStatus::conflict;
    if (d) return PairStatus::disjoint;
    if (n) return PairStatus::nondisjoint;
    return PairStatus::open;
  }

  PairStatus pair_status(std::string_view c1, std::string_view c2) const {
    return pair_status(index_of(c1), index_of(c2));
  }

  // Pairs (including a class paired with itself) that are both derived
  // disjoint and derived non-disjoint, sorted.
  std::vector<ClassPair> find_conflicts() const {
    std::vector<ClassPair> out;
    for (std::size_t a = 0; a < size(); ++a) {
      Bitset both = disj_[a] & nd_[a];
      both.for_each([&](std::size_t b) {
        if (b >= a) out.emplace_back(names_[a], names_[b]);
      });
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool consistent() const { return consistent_; }

  // Sibling pairs under c that share a common descendant.
  std::vector<ClassPair> common_subclass_pairs(std::string_view c) const {
    const auto& kids = children_[index_of(c)];
    std::vector<ClassPair> out;
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j)
        if (desc_[kids[i]].intersects(desc_[kids[j]])) out.emplace_back(names_[kids[i]], names_[kids[j]]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Every unordered pair of distinct direct subclasses of some class.
  std::vector<std::pair<std::size_t, std::size_t>> sibling_pairs() const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t c = 0; c < size(); ++c) {
      const auto& kids = children_[c];
      for (std::size_t i = 0; i < kids.size(); ++i)
        for (std::size_t j = i + 1; j < kids.size(); ++j)
          seen.emplace(std::min(kids[i], kids[j]), std::max(kids[i], kids[j]));
    }
    return {seen.begin(), seen.end()};
  }

  // A copy with additional explicit pair facts.
  Taxonomy with_pairs(const std::set<ClassPair>& disjoint, const std::set<ClassPair>& nondisjoint,
                      const std::set<ClassPair>& inheritable) const {
    TaxonomyFacts f = facts_;
    f.disjoint.insert(disjoint.begin(), disjoint.end());
    f.nondisjoint.insert(nondisjoint.begin(), nondisjoint.end());
    f.inheritable_nondisjoint.insert(inheritable.begin(), inheritable.end());
    return Taxonomy(std::move(f), warnings_);
  }

  std::string to_dot() const {
    std::string out = "digraph taxonomy {\n  rankdir=BT;\n";
    for (const auto& c : names_) out += "  \"" + c + "\";\n";
    for (const auto& [sub, super] : facts_.edges) out += "  \"" + sub + "\" -> \"" + super + "\";\n";
    for (const auto& p : facts_.disjoint)
      out += "  \"" + p.first + "\" -> \"" + p.second + "\" [dir=none, style=dashed, color=red];\n";
    for (const auto& p : facts_.nondisjoint)
      out += "  \"" + p.first + "\" -> \"" + p.second + "\" [dir=none, style=dotted, color=blue];\n";
    for (const auto& p : facts_.inheritable_nondisjoint)
      out += "  \"" + p.first + "\" -> \"" + p.second + "\" [dir=none, style=dotted, color=darkgreen];\n";
    out += "}\n";
    return out;
  }

  // relation \t a \t b, one fact per line.
  std::string to_tsv() const {
    std::string out;
    for (const auto& [sub, super] : facts_.edges) out += "subclass\t" + sub + "\t" + super + "\n";
    for (const auto& p : facts_.disjoint) out += "disjoint\t" + p.first + "\t" + p.second + "\n";
    for (const auto& p : facts_.nondisjoint) out += "nonDisjoint\t" + p.first + "\t" + p.second + "\n";
    for (const auto& p : facts_.inheritable_nondisjoint)
      out += "inheritableNonDisjoint\t" + p.first + "\t" + p.second + "\n";
    return out;
  }

 private:
  void compute_closure() {
    const std::size_t n = size();
    // Kahn order from leaves upwards; anything left over sits on a cycle.
    std::vector<std::size_t> pending(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      pending[i] = children_[i].size();
      if (pending[i] == 0) order.push_back(i);
    }
    for (std::size_t k = 0; k < order.size(); ++k)
      for (auto p : parents_[order[k]])
        if (--pending[p] == 0) order.push_back(p);
    if (order.size() != n) throw CycleError(find_cycle(pending));

    desc_.assign(n, Bitset(n));
    for (auto i : order) {
      desc_[i].set(i);
      for (auto c : children_[i]) desc_[i] |= desc_[c];
    }
    anc_.assign(n, Bitset(n));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      anc_[*it].set(*it);
      for (auto p : parents_[*it]) anc_[*it] |= anc_[p];
    }
  }

  std::vector<std::string> find_cycle(const std::vector<std::size_t>& pending) const {
    // Walk down through unresolved children until a node repeats.
    std::size_t start = 0;
    while (pending[start] == 0) ++start;
    std::vector<std::size_t> path;
    std::vector<int> pos(size(), -1);
    std::size_t cur = start;
    while (pos[cur] < 0) {
      pos[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      for (auto c : children_[cur]) {
        if (pending[c] != 0) {
          cur = c;
          break;
        }
      }
    }
    std::vector<std::string> cycle;
    for (std::size_t k = static_cast<std::size_t>(pos[cur]); k < path.size(); ++k) cycle.push_back(names_[path[k]]);
    std::reverse(cycle.begin(), cycle.end());
    cycle.push_back(cycle.front());
    return cycle;
  }

  void compute_pairs() {
    const std::size_t n = size();
    disj_.assign(n, Bitset(n));
    nd_.assign(n, Bitset(n));
    nd_stated_.assign(n, Bitset(n));
    desc_disj_.assign(n, Bitset(n));
    for (const auto& p : facts_.disjoint) {
      std::size_t a = index_.at(p.first);
      std::size_t b = index_.at(p.second);
      desc_[a].for_each([&](std::size_t x) { disj_[x] |= desc_[b]; });
      desc_[b].for_each([&](std::size_t x) { disj_[x] |= desc_[a]; });
    }
    // Superclasses of some subclass of c, i.e. classes sharing a subclass
    // with c.
    std::vector<Bitset> up_of_desc(n, Bitset(n));
    for (std::size_t c = 0; c < n; ++c) {
      desc_[c].for_each([&](std::size_t s) {
        up_of_desc[c] |= anc_[s];
        desc_disj_[c] |= disj_[s];
      });
      nd_stated_[c] |= anc_[c];
      nd_stated_[c] |= desc_[c];
    }
    auto cover = [&](const Bitset& left, const Bitset& right) {
      left.for_each([&](std::size_t x) { nd_stated_[x] |= right; });
      right.for_each([&](std::size_t x) { nd_stated_[x] |= left; });
    };
    for (const auto& p : facts_.nondisjoint) cover(anc_[index_.at(p.first)], anc_[index_.at(p.second)]);
    // Every subclass of one side meets every subclass of the other; the
    // common instances then lift to all their superclasses.
    for (const auto& p : facts_.inheritable_nondisjoint)
      cover(up_of_desc[index_.at(p.first)], up_of_desc[index_.at(p.second)]);
    for (std::size_t c = 0; c < n; ++c) nd_[c] = nd_stated_[c] | up_of_desc[c];
    consistent_ = true;
    for (std::size_t a = 0; a < n && consistent_; ++a)
      if (disj_[a].intersects(nd_[a])) consistent_ = false;
  }

  TaxonomyFacts facts_;
  std::vector<std::string> warnings_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<Bitset> anc_;
  std::vector<Bitset> desc_;
  std::vector<Bitset> disj_;
  std::vector<Bitset> nd_;
  std::vector<Bitset> nd_stated_;
  std::vector<Bitset> desc_disj_;
  bool consistent_ = true;
};

namespace detail {

inline std::string_view structural_name(std::string_view predicate) {
  if (!predicate.empty() && predicate.front() == '$') predicate.remove_prefix(1);
  return predicate;
}

}  // namespace detail

// Harvests the ground, top-level, positive structural atoms of an ontology.
// `partition` and `disjointDecomposition` contribute their pairwise disjoint
// parts; the first argument is the partitioned class.
inline Taxonomy build_taxonomy(const Ontology& ontology) {
  TaxonomyFacts f;
  std::set<std::string> declared;
  std::set<std::string> mentioned;
  for (const auto& axiom : ontology.axioms()) {
    const Formula& g = axiom.formula;
    if (g.kind != Formula::Kind::atom) continue;
    std::string_view pred = detail::structural_name(g.predicate);
    bool structural = pred == "subclass" || pred == "instance" || pred == "disjoint" || pred == "nonDisjoint" ||
                      pred == "inheritableNonDisjoint" || pred == "partition" || pred == "disjointDecomposition";
    if (!structural) continue;
    bool ground = std::all_of(g.terms.begin(), g.terms.end(),
                              [](const Term& t) { return t.kind == Term::Kind::constant; });
    if (!ground) continue;
    auto arg = [&](std::size_t i) { return g.terms[i].name; };
    bool listy = pred == "partition" || pred == "disjointDecomposition";
    if (listy ? g.terms.size() < 2 : g.terms.size() != 2)
      throw ArityError(axiom.source + ": wrong arity for " + g.predicate + " in " + to_kif(g));
    if (pred == "subclass") {
      declared.insert(arg(0));
      declared.insert(arg(1));
      if (arg(0) != arg(1)) f.edges.emplace(arg(0), arg(1));
    } else if (pred == "instance") {
      declared.insert(arg(1));
      f.instances.emplace(arg(0), arg(1));
    } else if (listy) {
      declared.insert(arg(0));
      for (std::size_t i = 1; i < g.terms.size(); ++i) {
        declared.insert(arg(i));
        for (std::size_t j = i + 1; j < g.terms.size(); ++j)
          if (arg(i) != arg(j)) f.disjoint.emplace(arg(i), arg(j));
      }
    } else {
      mentioned.insert(arg(0));
      mentioned.insert(arg(1));
      auto& target = pred == "disjoint" ? f.disjoint : pred == "nonDisjoint" ? f.nondisjoint : f.inheritable_nondisjoint;
      target.emplace(arg(0), arg(1));
    }
  }
  std::vector<std::string> warnings;
  for (const auto& c : mentioned)
    if (!declared.count(c)) warnings.push_back("class " + c + " only appears in pair facts; declared implicitly");
  f.classes = declared;
  f.classes.insert(mentioned.begin(), mentioned.end());
  return Taxonomy(std::move(f), std::move(warnings));
}

}  // namespace cwa
