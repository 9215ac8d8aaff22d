#pragma once

// WordNet relation pairs and the WordNet to SUMO mapping, read from TSV.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwa/error.hpp"

namespace cwa {

enum class PartOfSpeech { noun, verb };

inline std::string_view to_string(PartOfSpeech p) { return p == PartOfSpeech::noun ? "noun" : "verb"; }

struct Synset {
  std::string id;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::string lemma;  // empty for offset ids
  int sense = 0;      // 0 for offset ids

  bool operator==(const Synset&) const = default;
};

// Accepts `lemma#n#2`, `lemma#v#5`, `02345678-n` and nine-digit ids whose
// leading digit encodes the part of speech (1 noun, 2 verb).
inline std::optional<Synset> parse_synset_id(std::string_view id) {
  auto is_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto pos_of = [](std::string_view p) -> std::optional<PartOfSpeech> {
    if (p == "n") return PartOfSpeech::noun;
    if (p == "v") return PartOfSpeech::verb;
    return std::nullopt;
  };
  auto h1 = id.find('#');
  if (h1 != std::string_view::npos) {
    auto h2 = id.find('#', h1 + 1);
    if (h2 == std::string_view::npos || h1 == 0) return std::nullopt;
    auto pos = pos_of(id.substr(h1 + 1, h2 - h1 - 1));
    auto sense = id.substr(h2 + 1);
    if (!pos || !is_digits(sense) || sense.size() > 6) return std::nullopt;
    int n = std::stoi(std::string(sense));
    if (n <= 0) return std::nullopt;
    return Synset{std::string(id), *pos, std::string(id.substr(0, h1)), n};
  }
  auto dash = id.rfind('-');
  if (dash != std::string_view::npos) {
    auto pos = pos_of(id.substr(dash + 1));
    if (!pos || !is_digits(id.substr(0, dash))) return std::nullopt;
    return Synset{std::string(id), *pos, "", 0};
  }
  if (is_digits(id) && id.size() == 9 && (id[0] == '1' || id[0] == '2'))
    return Synset{std::string(id), id[0] == '1' ? PartOfSpeech::noun : PartOfSpeech::verb, "", 0};
  return std::nullopt;
}

enum class RelationKind { hyponymy, antonymy, meronymy_part, meronymy_member, meronymy_substance };

inline std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::hyponymy: return "hyponymy";
    case RelationKind::antonymy: return "antonymy";
    case RelationKind::meronymy_part: return "meronymy-part";
    case RelationKind::meronymy_member: return "meronymy-member";
    case RelationKind::meronymy_substance: return "meronymy-substance";
  }
  return "hyponymy";
}

inline RelationKind relation_kind_from_string(std::string_view s) {
  for (auto k : {RelationKind::hyponymy, RelationKind::antonymy, RelationKind::meronymy_part,
                 RelationKind::meronymy_member, RelationKind::meronymy_substance})
    if (to_string(k) == s) return k;
  throw ConfigError("unknown relation kind: " + std::string(s));
}

struct RelationPair {
  RelationKind kind = RelationKind::hyponymy;
  Synset s1;
  Synset s2;

  bool operator==(const RelationPair&) const = default;
};

enum class MappingRelation { equivalence, subsumption, instance };

inline char symbol(MappingRelation r) {
  switch (r) {
    case MappingRelation::equivalence: return '=';
    case MappingRelation::subsumption: return '+';
    case MappingRelation::instance: return '@';
  }
  return '=';
}

inline std::string_view to_string(MappingRelation r) {
  switch (r) {
    case MappingRelation::equivalence: return "equivalence";
    case MappingRelation::subsumption: return "subsumption";
    case MappingRelation::instance: return "instance";
  }
  return "equivalence";
}

struct MappingLink {
  std::string synset;
  std::string concept_name;
  MappingRelation relation = MappingRelation::equivalence;

  bool operator==(const MappingLink&) const = default;
  auto operator<=>(const MappingLink&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Calls f(line_number, fields) for every non-blank, non-comment row.
template <class F>
void for_each_tsv_row(std::istream& in, F&& f) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      fields.emplace_back(trim(std::string_view(line).substr(start, tab == std::string::npos ? std::string::npos : tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    f(n, fields);
  }
}

inline Synset require_synset(const std::string& id, std::size_t line) {
  auto s = parse_synset_id(id);
  if (!s) throw MalformedRowError("invalid synset id '" + id + "'", line);
  return *s;
}

}  // namespace detail

inline std::vector<RelationPair> load_synset_relations(std::istream& in, RelationKind kind) {
  std::vector<RelationPair> out;
  std::set<std::pair<std::string, std::string>> seen;
  detail::for_each_tsv_row(in, [&](std::size_t line, const std::vector<std::string>& fields) {
    if (fields.size() != 2) throw MalformedRowError("expected 2 tab-separated synset ids", line);
    Synset s1 = detail::require_synset(fields[0], line);
    Synset s2 = detail::require_synset(fields[1], line);
    if (s1.id == s2.id) throw MalformedRowError("synset related to itself", line);
    if (seen.emplace(s1.id, s2.id).second) out.push_back(RelationPair{kind, std::move(s1), std::move(s2)});
  });
  return out;
}

inline std::vector<RelationPair> load_synset_relations(std::string_view text, RelationKind kind) {
  std::istringstream in{std::string(text)};
  return load_synset_relations(in, kind);
}

// Rows `synset \t Concept=` (or `+`, `@`); the second column may hold
// several space-separated concepts.
inline std::vector<MappingLink> load_mapping(std::istream& in) {
  std::vector<MappingLink> out;
  std::set<MappingLink> seen;
  detail::for_each_tsv_row(in, [&](std::size_t line, const std::vector<std::string>& fields) {
    if (fields.size() != 2) throw MalformedRowError("expected synset and concept columns", line);
    detail::require_synset(fields[0], line);
    std::istringstream concepts(fields[1]);
    std::string item;
    bool any = false;
    while (concepts >> item) {
      any = true;
      char sym = item.back();
      MappingRelation rel;
      if (sym == '=') rel = MappingRelation::equivalence;
      else if (sym == '+') rel = MappingRelation::subsumption;
      else if (sym == '@') rel = MappingRelation::instance;
      else throw MalformedRowError("unknown mapping relation symbol in '" + item + "'", line);
      item.pop_back();
      if (item.empty()) throw MalformedRowError("empty concept name", line);
      MappingLink link{fields[0], item, rel};
      if (seen.insert(link).second) out.push_back(std::move(link));
    }
    if (!any) throw MalformedRowError("no concept given", line);
  });
  return out;
}

inline std::vector<MappingLink> load_mapping(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_mapping(in);
}

class MappingIndex {
 public:
  MappingIndex() = default;
  explicit MappingIndex(const std::vector<MappingLink>& links) {
    for (const auto& l : links) by_synset_[l.synset].insert(l);
  }

  // Links of s ordered by concept, then relation; empty when unmapped.
  std::vector<MappingLink> concepts_for(std::string_view s) const {
    auto it = by_synset_.find(std::string(s));
    if (it == by_synset_.end()) return {};
    std::vector<MappingLink> out(it->second.begin(), it->second.end());
    std::sort(out.begin(), out.end(), [](const MappingLink& a, const MappingLink& b) {
      return a.concept_name != b.concept_name ? a.concept_name < b.concept_name : a.relation < b.relation;
    });
    return out;
  }

  bool mapped(std::string_view s) const { return by_synset_.count(std::string(s)) != 0; }
  std::size_t synset_count() const { return by_synset_.size(); }

 private:
  std::map<std::string, std::set<MappingLink>> by_synset_;
};

}  // namespace cwa
