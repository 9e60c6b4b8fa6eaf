#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "ontoform/axiom.hpp"
#include "ontoform/error.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {
namespace {

using testing::dt;
using testing::load_graph;

const std::string reef = "http://www.cstb.fr/reef/#";

std::vector<std::string> fillers(const std::vector<Restriction>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.filler);
  return out;
}

TEST(ReadAxiom, VerrePolymereFromSample) {
  auto g = load_graph("polymer_definition.ttl");
  auto ax = read_axiom(g, dt + "VerrePolymere");
  EXPECT_EQ(ax.named_superclasses, std::vector<std::string>{dt + "ModulePhotoV"});
  ASSERT_TRUE(ax.definition);
  ASSERT_EQ(ax.definition->size(), 5u);
  EXPECT_EQ((*ax.definition)[0], (Restriction{dt + "hasComponent", reef + "01573"}));
  EXPECT_EQ((*ax.definition)[1], (Restriction{dt + "hasComponent", reef + "01593"}));
  ASSERT_TRUE(ax.definition_node);
  EXPECT_TRUE(ax.definition_node->is_blank());
  EXPECT_EQ(classify_concept(g, dt + "VerrePolymere"), ConceptKind::Defined);
}

TEST(ReadAxiom, PrimitiveClasses) {
  auto g = load_graph("pv_ontology.ttl");
  auto ax = read_axiom(g, dt + "Cadre");
  EXPECT_FALSE(ax.definition);
  EXPECT_EQ(classify_concept(g, dt + "Cadre"), ConceptKind::Primitive);
  EXPECT_TRUE(components_of(g, dt + "Cadre").empty());

  Graph bare;
  bare.insert(iri("urn:x:Fresh"), iri(vocab::rdf::type), iri(vocab::owl::klass));
  EXPECT_EQ(classify_concept(bare, "urn:x:Fresh"), ConceptKind::Primitive);
}

TEST(ReadAxiom, UnknownClass) {
  auto g = load_graph("pv_ontology.ttl");
  try {
    read_axiom(g, dt + "Nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownClass);
  }
  EXPECT_THROW(components_of(g, dt + "Nope"), Error);
  EXPECT_THROW(properties_of(g, dt + "Nope"), Error);
}

ErrorCode code_of(const std::string& ttl, const std::string& cls) {
  try {
    read_axiom(parse_turtle("@prefix ex: <http://ex/> .\n" + ttl), cls);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidInput;
}

TEST(ReadAxiom, MalformedDefinitions) {
  const std::string a = "http://ex/A";
  EXPECT_EQ(code_of("ex:A a owl:Class ; rdfs:subClassOf [ a owl:Class ; owl:intersectionOf ( "
                    "[ a owl:Restriction ; owl:someValuesFrom ex:B ] ) ] . ex:B a owl:Class .",
                    a),
            ErrorCode::MalformedAxiom);
  EXPECT_EQ(code_of("ex:A a owl:Class ; rdfs:subClassOf [ a owl:Class ; owl:intersectionOf ( "
                    "[ a owl:Restriction ; owl:onProperty ex:p ] ) ] .",
                    a),
            ErrorCode::MalformedAxiom);
  EXPECT_EQ(code_of("ex:A a owl:Class ; rdfs:subClassOf "
                    "[ owl:intersectionOf ( [ owl:onProperty ex:p ; owl:someValuesFrom ex:B ] ) ] , "
                    "[ owl:intersectionOf ( [ owl:onProperty ex:p ; owl:someValuesFrom ex:B ] ) ] .",
                    a),
            ErrorCode::MalformedAxiom);
  EXPECT_EQ(code_of("ex:A a owl:Class ; rdfs:subClassOf [ owl:intersectionOf ( "
                    "[ owl:onProperty ex:p , ex:q ; owl:someValuesFrom ex:B ] ) ] .",
                    a),
            ErrorCode::MalformedAxiom);
}

TEST(Components, VerrePolymereFixture) {
  auto g = testing::pv_ontology()->graph();
  auto got = fillers(components_of(g, dt + "VerrePolymere"));
  EXPECT_EQ(got, (std::vector<std::string>{dt + "CableElectrique", dt + "Cadre", dt + "CellulePhotoV",
                                           dt + "FilmPolymere", dt + "VerreInterieur"}));
}

TEST(Components, OrderSurvivesRoundTrip) {
  auto g = load_graph("pv_ontology.ttl");
  auto back = parse_turtle(serialize_turtle(g));
  for (auto c : {"VerrePolymere", "VerreVerre", "BoiteDeJonction"})
    EXPECT_EQ(components_of(g, dt + c), components_of(back, dt + c)) << c;
}

TEST(Properties, InheritedFromProductRoot) {
  auto g = testing::pv_ontology()->graph();
  auto props = properties_of(g, dt + "VerrePolymere");
  std::set<std::string> ids;
  for (const auto& p : props) ids.insert(p.property);
  EXPECT_EQ(ids, (std::set<std::string>{dt + "longueur", dt + "poids", dt + "fabricant"}));
  EXPECT_TRUE(std::is_sorted(props.begin(), props.end(),
                             [](const auto& a, const auto& b) { return a.label < b.label; }));
  for (const auto& p : props) {
    if (p.property == dt + "fabricant") EXPECT_EQ(p.datatype, Datatype::String);
    else EXPECT_EQ(p.datatype, Datatype::Decimal);
  }
  EXPECT_TRUE(properties_of(g, dt + "Diode").empty());
}

TEST(Properties, DiamondListedOnce) {
  auto g = parse_turtle(R"(@prefix ex: <http://ex/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
ex:Top a owl:Class . ex:L a owl:Class ; rdfs:subClassOf ex:Top . ex:R a owl:Class ; rdfs:subClassOf ex:Top .
ex:D a owl:Class ; rdfs:subClassOf ex:L , ex:R .
ex:p a owl:DatatypeProperty ; rdfs:label "p" ; rdfs:domain ex:Top ; rdfs:range xsd:integer .
)");
  auto props = properties_of(g, "http://ex/D");
  ASSERT_EQ(props.size(), 1u);
  EXPECT_EQ(props[0].datatype, Datatype::Integer);
}

TEST(Datatypes, NamesAndIris) {
  for (auto d : {Datatype::String, Datatype::Decimal, Datatype::Integer, Datatype::Boolean, Datatype::Date}) {
    EXPECT_EQ(datatype_from_iri(datatype_iri(d)), d);
    EXPECT_EQ(datatype_from_name(to_string(d)), d);
  }
  EXPECT_FALSE(datatype_from_iri(vocab::xsd::double_));
}

TEST(Validate, Fixtures) {
  EXPECT_NO_THROW(validate_ontology(load_graph("pv_ontology.ttl")));
  EXPECT_NO_THROW(validate_ontology(load_graph("ontodt.ttl")));
  auto bad = parse_turtle(R"(@prefix ex: <http://ex/> .
ex:A a owl:Class ; rdfs:subClassOf [ owl:intersectionOf ( [ owl:onProperty ex:p ; owl:someValuesFrom ex:Ghost ] ) ] .
)");
  try {
    validate_ontology(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedAxiom);
  }
  auto cyclic = parse_turtle(
      "@prefix ex: <http://ex/> . ex:A a owl:Class ; rdfs:subClassOf ex:B . ex:B a owl:Class ; rdfs:subClassOf ex:A .");
  EXPECT_THROW(validate_ontology(cyclic), CycleError);
}

// Decoder that walks the raw statement list without any index lookups.
std::vector<Restriction> naive_components(const Graph& g, const std::string& cls) {
  const auto& all = g.statements();
  auto find_all = [&](const Term& s, std::string_view p) {
    std::vector<Term> out;
    for (const auto& t : all)
      if (t.subject == s && t.predicate.value() == p) out.push_back(t.object);
    return out;
  };
  std::vector<Restriction> out;
  for (const auto& t : all) {
    if (t.subject != iri(cls) || t.predicate.value() != vocab::rdfs::sub_class_of || !t.object.is_blank())
      continue;
    auto lists = find_all(t.object, vocab::owl::intersection_of);
    if (lists.empty()) continue;
    Term cell = lists.front();
    while (cell.value() != vocab::rdf::nil) {
      Term member = find_all(cell, vocab::rdf::first).front();
      out.push_back({find_all(member, vocab::owl::on_property).front().value(),
                     find_all(member, vocab::owl::some_values_from).front().value()});
      cell = find_all(cell, vocab::rdf::rest).front();
    }
  }
  return out;
}

TEST(ComponentsProperty, AgreesWithFullScanDecoder) {
  testing::Rng rng(2024);
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int round = 0; round < 1000; ++round) {
    int n = u(1, 20);
    std::ostringstream ttl;
    ttl << "@prefix ex: <http://ex/> .\n";
    for (int i = 0; i < n; ++i) ttl << "ex:C" << i << " a owl:Class .\n";
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n && u(0, 3) == 0) ttl << "ex:C" << i << " rdfs:subClassOf ex:C" << u(i + 1, n - 1) << " .\n";
      if (u(0, 1) == 0) continue;
      ttl << "ex:C" << i << " rdfs:subClassOf [ a owl:Class ; owl:intersectionOf (";
      for (int k = u(1, 8); k > 0; --k)
        ttl << " [ a owl:Restriction ; owl:onProperty ex:p" << u(0, 2) << " ; owl:someValuesFrom ex:C"
            << u(0, n - 1) << " ]";
      ttl << " ) ] .\n";
    }
    auto g = parse_turtle(ttl.str());
    for (int i = 0; i < n; ++i) {
      std::string c = "http://ex/C" + std::to_string(i);
      auto got = components_of(g, c);
      ASSERT_EQ(got, naive_components(g, c)) << ttl.str();
      if (classify_concept(g, c) == ConceptKind::Primitive) ASSERT_TRUE(got.empty());
    }
  }
}

TEST(PropertiesProperty, MonotoneAlongSubclassEdges) {
  testing::Rng rng(31);
  for (int round = 0; round < 100; ++round) {
    auto model = testing::random_model(rng, 6, 4, 40);
    auto g = parse_turtle(model.turtle());
    for (const auto& [id, cls] : model.classes) {
      auto sub = properties_of(g, id);
      for (const auto& super : cls.supers) {
        for (const auto& p : properties_of(g, super))
          ASSERT_NE(std::find(sub.begin(), sub.end(), p), sub.end()) << id << " " << super;
      }
      std::set<std::string> expected, got;
      for (const auto& p : model.properties_for(id)) expected.insert(p.iri);
      for (const auto& p : sub) got.insert(p.property);
      ASSERT_EQ(got, expected) << id;
    }
  }
}

}  // namespace
}  // namespace ontoform
