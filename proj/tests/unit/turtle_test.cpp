#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ontoform/error.hpp"
#include "ontoform/turtle.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {
namespace {

using testing::load_graph;
using testing::read_text;

const std::string dt = "http://www.cstb.fr/ontodt#";

TEST(Parse, MinimalDocument) {
  auto g = parse_turtle("@prefix dt: <http://ex/dt#> . dt:A rdfs:subClassOf dt:B .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains({iri("http://ex/dt#A"), iri(vocab::rdfs::sub_class_of), iri("http://ex/dt#B")}));
  EXPECT_EQ(g.namespaces().at("dt"), "http://ex/dt#");
}

TEST(Parse, PolymerDefinition) {
  auto g = load_graph("polymer_definition.ttl");
  auto supers = g.match(iri(dt + "VerrePolymere"), iri(vocab::rdfs::sub_class_of), std::nullopt);
  ASSERT_EQ(supers.size(), 2u);
  int anonymous = 0;
  for (const auto& t : supers) {
    if (!t.object.is_blank()) continue;
    ++anonymous;
    EXPECT_EQ(g.objects(t.object, iri(vocab::owl::intersection_of)).size(), 1u);
  }
  EXPECT_EQ(anonymous, 1);
}

TEST(Parse, LiteralForms) {
  auto g = parse_turtle(R"(@prefix ex: <http://ex/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
ex:s ex:a "plain" ; ex:b "fr"@fr-CA ; ex:c "1.50"^^xsd:decimal ; ex:d 42 ; ex:e -3.5 ;
     ex:f 1e3 ; ex:g true ; ex:h """multi
line "quoted" text""" ; ex:i 'single' ; ex:j "esc\t\"\u00e9\U0001F600" .
)");
  auto one = [&](const char* p) { return *g.object(iri("http://ex/s"), iri(std::string("http://ex/") + p)); };
  EXPECT_EQ(one("a").datatype(), vocab::xsd::string);
  EXPECT_EQ(one("b").language(), "fr-CA");
  EXPECT_EQ(one("c").value(), "1.50");
  EXPECT_EQ(one("c").datatype(), vocab::xsd::decimal);
  EXPECT_EQ(one("d").datatype(), vocab::xsd::integer);
  EXPECT_EQ(one("e").datatype(), vocab::xsd::decimal);
  EXPECT_EQ(one("f").datatype(), vocab::xsd::double_);
  EXPECT_EQ(one("g").datatype(), vocab::xsd::boolean);
  EXPECT_EQ(one("h").value(), "multi\nline \"quoted\" text");
  EXPECT_EQ(one("i").value(), "single");
  EXPECT_EQ(one("j").value(), "esc\t\"\xC3\xA9\xF0\x9F\x98\x80");
}

TEST(Parse, BlankNodesAndCollections) {
  auto g = parse_turtle(R"(@prefix ex: <http://ex/> .
_:x ex:p [ ex:q ( ex:a [ ex:r 1 ] () ) ] .
_:x ex:p _:x .
)");
  auto inner = g.match(std::nullopt, iri("http://ex/q"), std::nullopt);
  ASSERT_EQ(inner.size(), 1u);
  auto members = list_members(g, inner.front().object);
  ASSERT_EQ(members.size(), 3u);
  EXPECT_EQ(members[0], iri("http://ex/a"));
  EXPECT_TRUE(members[1].is_blank());
  EXPECT_EQ(members[2], iri(vocab::rdf::nil));
}

TEST(Parse, SparqlStylePrefix) {
  auto g = parse_turtle("PREFIX ex: <http://ex/>\nex:a a ex:B .");
  EXPECT_EQ(g.size(), 1u);
}

// Broken documents; `¦` marks the first character that diverges from valid
// syntax. The reported position must be on that line, at or before it.
struct Broken {
  const char* text;
  ParseErrorKind kind;
};

const std::vector<Broken> corpus{
    {"@prefix ex: <http://ex/> .\nex:a ex:b ¦xsd:decimal .", ParseErrorKind::UndefinedPrefix},
    {"@prefix dt: <http://ex/dt#> .\ndt:A dt:p \"x\"^^¦xsd:decimal .", ParseErrorKind::UndefinedPrefix},
    {"¦foo:a foo:b foo:c .", ParseErrorKind::UndefinedPrefix},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ex:c ¦", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ¦.", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ¦. ", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ¦\"unterminated .", ParseErrorKind::Lexical},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ¦\"\"\"never closed", ParseErrorKind::Lexical},
    {"@prefix ex: <http://ex/> .\nex:a ex:b <http://ex/¦ spaced> .", ParseErrorKind::BadIri},
    {"@prefix ex: <http://ex/> .\nex:a ex:b <¦relative> .", ParseErrorKind::BadIri},
    {"@prefix ex: <http://ex/> .\nex:a ex:b <http://ex/unclosed¦", ParseErrorKind::BadIri},
    {"@prefix ex: <http://ex/> .\nex:a ex:b \"x\"^^¦\"y\" .", ParseErrorKind::BadLiteral},
    {"@prefix ex: <http://ex/> .\nex:a ex:b \"bad \\¦q escape\" .", ParseErrorKind::BadLiteral},
    {"@prefix ex: <http://ex/> .\nex:a ex:b \"\\u00¦zz\" .", ParseErrorKind::BadLiteral},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ( ex:c ¦.", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ex:b [ ex:c ex:d ¦.", ParseErrorKind::Syntax},
    {"@prefix ex <http://ex/> ¦.", ParseErrorKind::Syntax},
    {"@prefix ex: ¦http://ex/ .", ParseErrorKind::Syntax},
    {"@base <http://ex/> .", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\n¦\"lit\" ex:b ex:c .", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ¦\"lit\" ex:c .", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ex:c ; ¦, .", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ex:c , ¦.", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ex:b \"x\"@¦ .", ParseErrorKind::BadLiteral},
    {"@prefix ex: <http://ex/> .\n# comment ¦\nex:a ex:b ¦$ .", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ¦_:b ex:c .", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:a ex:b ex:c .\n\n   ¦} ", ParseErrorKind::Syntax},
    {"@prefix ex: <http://ex/> .\nex:é ex:b \"ok\" .\nex:a ex:b ¦@ .", ParseErrorKind::Syntax},
};

// Position of the last marker (earlier markers only document context).
std::pair<std::size_t, std::size_t> marker_position(const std::string& marked, std::string& clean) {
  const std::string mark = "¦";
  auto at = marked.rfind(mark);
  std::string before = marked.substr(0, at);
  clean.clear();
  for (std::size_t i = 0; i < marked.size();) {
    if (marked.compare(i, mark.size(), mark) == 0) {
      i += mark.size();
      continue;
    }
    clean += marked[i++];
  }
  std::string stripped_before;
  for (std::size_t i = 0; i < before.size();) {
    if (before.compare(i, mark.size(), mark) == 0) {
      i += mark.size();
      continue;
    }
    stripped_before += before[i++];
  }
  std::size_t line = 1, col = 1;
  for (unsigned char c : stripped_before) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col;
    }
  }
  return {line, col};
}

TEST(Parse, BrokenCorpusPositions) {
  ASSERT_GE(corpus.size(), 20u);
  for (const auto& b : corpus) {
    std::string marked = b.text;
    std::string clean;
    std::pair<std::size_t, std::size_t> divergence{1, 1};
    if (marked.find("¦") != std::string::npos) {
      divergence = marker_position(marked, clean);
    } else {
      clean = marked;
    }
    try {
      parse_turtle(clean);
      ADD_FAILURE() << "parsed: " << clean;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.kind(), b.kind) << clean << "\n" << e.what();
      EXPECT_EQ(e.line(), divergence.first) << clean << "\n" << e.what();
      EXPECT_LE(e.column(), divergence.second) << clean << "\n" << e.what();
      EXPECT_EQ(e.code(), ErrorCode::Parse);
    }
  }
}

TEST(Serialize, EmptyGraphIsPrefixBlockOnly) {
  auto text = serialize_turtle(Graph{});
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) EXPECT_TRUE(line.empty() || line.rfind("@prefix", 0) == 0) << line;
  EXPECT_EQ(parse_turtle(text).size(), 0u);
}

TEST(Serialize, SingleTripleIsOneStatementLine) {
  Graph g;
  g.insert(iri("http://ex/a"), iri("http://ex/b"), iri("http://ex/c"));
  auto text = serialize_turtle(g);
  std::istringstream in(text);
  std::string line;
  int statements = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("@prefix", 0) == 0) continue;
    ++statements;
    EXPECT_EQ(line, "<http://ex/a> <http://ex/b> <http://ex/c> .");
  }
  EXPECT_EQ(statements, 1);
}

TEST(Serialize, OrderingRules) {
  auto g = parse_turtle(R"(@prefix ex: <http://ex/> .
ex:b ex:z 1 ; ex:y 2 ; a ex:T .
ex:a ex:p "x" .
)");
  auto text = serialize_turtle(g);
  EXPECT_LT(text.find("ex:a ex:p"), text.find("ex:b a ex:T"));
  EXPECT_LT(text.find("ex:y"), text.find("ex:z"));
  EXPECT_EQ(text.find("\r"), std::string::npos);
}

TEST(Serialize, DeterministicAcrossInsertionOrder) {
  auto g = load_graph("pv_ontology.ttl");
  std::vector<Triple> ts(g.statements().begin(), g.statements().end());
  std::mt19937 rng(7);
  std::shuffle(ts.begin(), ts.end(), rng);
  Graph h;
  h.set_namespaces(g.namespaces());
  for (const auto& t : ts) h.insert(t);
  EXPECT_EQ(serialize_turtle(g), serialize_turtle(h));
}

TEST(Serialize, CyclicBlanksStayParseable) {
  Graph g;
  g.insert(Term::blank("x"), iri("http://ex/p"), Term::blank("y"));
  g.insert(Term::blank("y"), iri("http://ex/p"), Term::blank("x"));
  g.insert(Term::blank("z"), iri("http://ex/p"), Term::blank("z"));
  auto back = parse_turtle(serialize_turtle(g));
  EXPECT_TRUE(equal_modulo_blanks(g, back));
}

TEST(Serialize, SharedBlankIsNotNested) {
  Graph g;
  g.insert(iri("http://ex/a"), iri("http://ex/p"), Term::blank("s"));
  g.insert(iri("http://ex/b"), iri("http://ex/p"), Term::blank("s"));
  g.insert(Term::blank("s"), iri("http://ex/q"), Term::string_literal("v"));
  auto back = parse_turtle(serialize_turtle(g));
  EXPECT_TRUE(equal_modulo_blanks(g, back));
  EXPECT_EQ(back.size(), 3u);
}

class FixtureRoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(FixtureRoundTrip, ParseSerializeFixpoint) {
  auto g = load_graph(GetParam());
  auto once = serialize_turtle(g);
  auto g2 = parse_turtle(once);
  EXPECT_TRUE(equal_modulo_blanks(g, g2));
  EXPECT_EQ(serialize_turtle(canonicalize_blanks(g)), serialize_turtle(canonicalize_blanks(g2)));
}

INSTANTIATE_TEST_SUITE_P(Data, FixtureRoundTrip,
                         ::testing::Values("reef_thesaurus.ttl", "reef_ontology.ttl", "ontodt.ttl",
                                           "polymer_definition.ttl", "pv_ontology.ttl"));

TEST(Canonical, RelabelsIndependentOfInputLabels) {
  auto a = parse_turtle("@prefix ex: <http://ex/> . ex:s ex:p [ ex:q [ ex:r 1 ] ] , [ ex:q 2 ] .");
  auto b = parse_turtle(
      "@prefix ex: <http://ex/> . _:zz ex:q 2 . _:m ex:r 1 . _:k ex:q _:m . ex:s ex:p _:k , _:zz .");
  EXPECT_NE(a, b);
  EXPECT_EQ(canonicalize_blanks(a), canonicalize_blanks(b));
  auto canonical = canonicalize_blanks(a);
  for (const auto& t : canonical.statements())
    if (t.subject.is_blank()) EXPECT_EQ(t.subject.value().rfind("_b", 0), 0u);
}

// Random graphs over a small vocabulary, including nested blanks, lists,
// literals with awkward characters and IRIs outside any namespace.
Graph random_graph(std::mt19937_64& rng) {
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<Term> iris{iri("http://ex/a"), iri("http://ex/b"), iri("http://other.org/x-y#z"),
                         iri("urn:x:1"), iri("http://ex/with.dot"), iri("http://ex/9")};
  std::vector<Term> lits{Term::string_literal("plain"),
                         Term::string_literal("quote \" back \\ nl \n tab \t é"),
                         Term::literal("1.5", vocab::xsd::decimal),
                         Term::literal("-7", vocab::xsd::integer),
                         Term::literal("true", vocab::xsd::boolean),
                         Term::literal("2024-02-29", vocab::xsd::date),
                         Term::literal("chat", vocab::xsd::string, "fr"),
                         Term::literal("x", "http://ex/customType")};
  Graph g;
  g.set_namespace("ex", "http://ex/");
  int blanks = u(0, 5);
  std::vector<Term> nodes = iris;
  for (int i = 0; i < blanks; ++i) nodes.push_back(Term::blank("n" + std::to_string(i)));
  int n = u(0, 25);
  for (int i = 0; i < n; ++i) {
    const Term& s = nodes[u(0, static_cast<int>(nodes.size()) - 1)];
    const Term& p = iris[u(0, 2)];
    int kind = u(0, 9);
    if (kind < 4) {
      g.insert(s, p, nodes[u(0, static_cast<int>(nodes.size()) - 1)]);
    } else if (kind < 8) {
      g.insert(s, p, lits[u(0, static_cast<int>(lits.size()) - 1)]);
    } else {
      std::vector<Term> items;
      for (int k = u(0, 3); k > 0; --k) items.push_back(u(0, 1) ? iris[u(0, 5)] : lits[u(0, 7)]);
      g.insert(s, p, make_list(g, items));
    }
  }
  return g;
}

TEST(Property, RandomGraphsRoundTrip) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 400; ++i) {
    auto g = random_graph(rng);
    auto text = serialize_turtle(g);
    Graph back;
    ASSERT_NO_THROW(back = parse_turtle(text)) << text;
    ASSERT_TRUE(equal_modulo_blanks(g, back)) << text;
    ASSERT_EQ(serialize_turtle(canonicalize_blanks(g)), serialize_turtle(canonicalize_blanks(back)));
  }
}

}  // namespace
}  // namespace ontoform
