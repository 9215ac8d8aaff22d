#include <gtest/gtest.h>

#include <string>

#include "cwa/kif.hpp"
#include "fixtures.hpp"

using namespace cwa;
using cwa::testing::fixture_ontology;
using cwa::testing::fixture_text;

namespace {

SizeStats stats_of(const char* text) { return count_metrics(parse_kif(text)); }

}  // namespace

TEST(KifParse, UnitClause) {
  Ontology o = parse_kif("($disjoint Birth Death)");
  ASSERT_EQ(o.size(), 1u);
  const Formula& f = o.axioms()[0].formula;
  EXPECT_EQ(f.kind, Formula::Kind::atom);
  EXPECT_EQ(f.predicate, "$disjoint");
  EXPECT_EQ(o.axioms()[0].provenance, Provenance::original);
  EXPECT_EQ(o.axioms()[0].source, "<input>:1");
  SizeStats s = count_metrics(o);
  EXPECT_EQ(s.unit_clauses, 1u);
  EXPECT_EQ(s.formulae, 0u);
}

TEST(KifParse, EmptyInput) {
  EXPECT_TRUE(parse_kif("").empty());
  EXPECT_TRUE(parse_kif("; only a comment\n\n").empty());
}

TEST(KifParse, InheritableNonDisjointAxiomShape) {
  Ontology o = parse_kif(
      "(forall (CLASS1 CLASS2) (=> ($inheritableNonDisjoint CLASS1 CLASS2) (not ($disjoint CLASS1 CLASS2))))");
  ASSERT_EQ(o.size(), 1u);
  const Formula& f = o.axioms()[0].formula;
  ASSERT_EQ(f.kind, Formula::Kind::universal);
  EXPECT_EQ(f.variables.size(), 2u);
  SizeStats s = count_metrics(o);
  EXPECT_EQ(s.formulae, 1u);
  EXPECT_EQ(s.forall_blocks, 1u);
  EXPECT_EQ(s.implies, 1u);
  EXPECT_EQ(s.not_, 1u);
  EXPECT_EQ(s.atoms, 2u);
}

TEST(KifParse, UppercaseBoundTokensAreVariables) {
  Formula f = parse_formula("(forall (CLASS1) ($subclass CLASS1 Entity))");
  EXPECT_EQ(f.children[0].terms[0].kind, Term::Kind::variable);
  EXPECT_EQ(f.children[0].terms[1].kind, Term::Kind::constant);
  // Uppercase token outside any binder stays a constant.
  Formula g = parse_formula("($subclass ABC Entity)");
  EXPECT_EQ(g.terms[0].kind, Term::Kind::constant);
}

TEST(KifParse, QuestionMarkVariablesAndEquality) {
  Formula f = parse_formula("(forall (?X) (or (equal ?X A) ($subclass ?X B)))");
  const Formula& body = f.children[0];
  ASSERT_EQ(body.kind, Formula::Kind::disjunction);
  EXPECT_EQ(body.children[0].kind, Formula::Kind::equal);
}

TEST(KifParse, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_kif("($subclass A B)\n  (and ($p A)");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_kif("($p A))"), SyntaxError);
}

TEST(KifParse, WrongArity) {
  EXPECT_THROW(parse_kif("(not ($p A) ($q B))"), SyntaxError);
  EXPECT_THROW(parse_kif("(=> ($p A))"), SyntaxError);
  EXPECT_THROW(parse_kif("(and ($p A))"), SyntaxError);
  EXPECT_THROW(parse_kif("(<=> ($p A) ($q A) ($r A))"), SyntaxError);
  EXPECT_THROW(parse_kif("(equal A)"), SyntaxError);
}

TEST(KifParse, UnknownConnective) {
  EXPECT_THROW(parse_kif("(<= ($p A) ($q A))"), SyntaxError);
  EXPECT_THROW(parse_kif("(-> ($p A) ($q A))"), SyntaxError);
}

TEST(KifParse, QuantifierNeedsVariables) {
  EXPECT_THROW(parse_kif("(forall () ($p A))"), SyntaxError);
  EXPECT_THROW(parse_kif("(forall (foo) ($p foo))"), SyntaxError);
}

TEST(KifParse, DuplicateFormulaWithSameProvenanceIsDropped) {
  Ontology o = parse_kif("(forall (?X) ($p ?X))\n(forall (?Y) ($p ?Y))\n($q A)");
  EXPECT_EQ(o.size(), 2u);
}

TEST(KifParse, PredicateIndex) {
  Ontology o = parse_kif("($subclass A B)\n($disjoint A C)\n(forall (?X) (=> ($subclass ?X A) ($p ?X)))");
  auto ids = o.with_predicate("$subclass");
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_EQ(ids[0], o.axioms()[0].id);
  EXPECT_EQ(ids[1], o.axioms()[2].id);
  EXPECT_TRUE(o.with_predicate("nothing").empty());
}

TEST(KifSerialize, UnitClauseLine) {
  EXPECT_EQ(serialize_kif(parse_kif("(  $disjoint   Birth\n Death )")), "($disjoint Birth Death)\n");
  EXPECT_EQ(serialize_kif(Ontology{}), "");
}

TEST(KifSerialize, RoundTripFixtures) {
  for (const char* name : {"toy_ont_a.kif", "agent.kif", "bloodcell.kif", "radiating.kif", "displayed_axioms.kif",
                           "inconsistent.kif", "agent_curation.kif"}) {
    SCOPED_TRACE(name);
    Ontology o = fixture_ontology(name);
    Ontology back = parse_kif(serialize_kif(o));
    EXPECT_TRUE(structurally_equal(o, back));
    EXPECT_EQ(serialize_kif(back), serialize_kif(o));
  }
}

TEST(KifSerialize, ProvenanceSurvivesRoundTrip) {
  Ontology o;
  o.add(Axiom{"cwad_1", parse_formula("($disjoint A B)"), Provenance::cwa_disjoint});
  o.add(Axiom{"sup_1", parse_formula("(forall (?X) ($p ?X))"), Provenance::support});
  Ontology back = parse_kif(serialize_kif(o));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.axioms()[0].id, "cwad_1");
  EXPECT_EQ(back.axioms()[0].provenance, Provenance::cwa_disjoint);
  EXPECT_EQ(back.axioms()[1].provenance, Provenance::support);
  EXPECT_TRUE(structurally_equal(o, back));
}

TEST(KifSerialize, DisplayedFormulasParseAndRoundTrip) {
  Ontology o = fixture_ontology("displayed_axioms.kif");
  EXPECT_EQ(o.size(), 12u);
  for (const auto& a : o.axioms()) {
    Formula again = parse_formula(to_kif(a.formula));
    EXPECT_EQ(again, a.formula) << to_kif(a.formula);
  }
}

TEST(KifMetrics, SingleAxioms) {
  SizeStats s = stats_of("(forall (CLASS1 CLASS2) (=> ($nonDisjoint CLASS1 CLASS2) (not ($disjoint CLASS1 CLASS2))))");
  EXPECT_EQ(s.forall_blocks, 1u);
  EXPECT_EQ(s.implies, 1u);
  EXPECT_EQ(s.not_, 1u);
  EXPECT_EQ(s.atoms, 2u);
  EXPECT_EQ(s.equalities, 0u);
  EXPECT_EQ(count_metrics(Ontology{}), SizeStats{});
}

TEST(KifMetrics, QuantifierBlocksNotVariables) {
  SizeStats s = stats_of("(forall (?X ?Y ?Z) (exists (?A ?B) ($p ?X ?Y ?Z ?A ?B)))");
  EXPECT_EQ(s.forall_blocks, 1u);
  EXPECT_EQ(s.exists_blocks, 1u);
}

TEST(KifMetrics, EqualityCountsAsAtom) {
  SizeStats s = stats_of("(equal A B)\n(not (equal A C))\n(forall (?X) (or (equal ?X A) ($p ?X) ($q ?X)))");
  EXPECT_EQ(s.unit_clauses, 2u);
  EXPECT_EQ(s.formulae, 1u);
  EXPECT_EQ(s.equalities, 3u);
  EXPECT_EQ(s.atoms, 5u);
  EXPECT_EQ(s.or_, 2u);
}

TEST(KifMetrics, ToyOntHandCount) {
  SizeStats s = count_metrics(fixture_ontology("toy_ont_a.kif"));
  SizeStats want;
  want.axioms = 12;
  want.unit_clauses = 10;
  want.formulae = 2;
  want.atoms = 16;
  want.forall_blocks = 2;
  want.exists_blocks = 1;
  want.iff = 1;
  want.implies = 1;
  want.and_ = 2;
  want.not_ = 1;
  EXPECT_EQ(s, want);
  EXPECT_EQ(s.csv_row(), "12,10,2,16,2,1,1,1,2,0,1,0");
}

TEST(KifMetrics, Additivity) {
  Ontology a = fixture_ontology("toy_ont_a.kif");
  Ontology b = fixture_ontology("displayed_axioms.kif");
  Ontology both = parse_kif(fixture_text("toy_ont_a.kif") + "\n" + fixture_text("displayed_axioms.kif"));
  SizeStats sum = count_metrics(a);
  sum += count_metrics(b);
  // No displayed formula repeats anything in ToyOnt-A, so no axiom is dropped.
  ASSERT_EQ(both.size(), a.size() + b.size());
  EXPECT_EQ(count_metrics(both), sum);
}

TEST(KifMetrics, Invariants) {
  SizeStats s = count_metrics(fixture_ontology("displayed_axioms.kif"));
  EXPECT_EQ(s.axioms, s.unit_clauses + s.formulae);
  EXPECT_GE(s.atoms, s.equalities);
}

TEST(KifNormalize, AlphaEquivalence) {
  EXPECT_TRUE(alpha_equivalent(parse_formula("(forall (?X) ($p ?X))"), parse_formula("(forall (?Y) ($p ?Y))")));
  EXPECT_FALSE(alpha_equivalent(parse_formula("(forall (?X ?Y) ($p ?X ?Y))"), parse_formula("(forall (?X ?Y) ($p ?Y ?X))")));
  EXPECT_EQ(free_variables(parse_formula("(=> ($p ?X) (exists (?Y) ($q ?X ?Y)))")), std::vector<std::string>{"?X"});
  EXPECT_TRUE(is_closed(parse_formula("(exists (?Y) ($q ?Y))")));
}

TEST(KifNormalize, CanonicalizeSortsCommutativeOperands) {
  EXPECT_EQ(canonicalize(parse_formula("(or ($q A) ($p A))")), canonicalize(parse_formula("(or ($p A) ($q A))")));
  EXPECT_NE(canonicalize(parse_formula("(=> ($q A) ($p A))")), canonicalize(parse_formula("(=> ($p A) ($q A))")));
}
