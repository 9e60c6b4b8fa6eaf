#include "ontoform/merge.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>
#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "ontoform/axiom.hpp"
#include "ontoform/error.hpp"
#include "ontoform/ontology.hpp"
#include "ontoform/vocab.hpp"

namespace ontoform {

std::string normalize_label(std::string_view label) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFD normalizer unavailable");

  icu::UnicodeString text =
      icu::UnicodeString::fromUTF8(icu::StringPiece(label.data(), static_cast<int32_t>(label.size())));
  text.toLower(icu::Locale::getRoot());
  icu::UnicodeString decomposed = nfd->normalize(text, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");

  icu::UnicodeString kept;
  bool pending_space = false;
  for (int32_t i = 0; i < decomposed.length();) {
    UChar32 cp = decomposed.char32At(i);
    i += U16_LENGTH(cp);
    if (u_charType(cp) == U_NON_SPACING_MARK) continue;
    if (u_isUWhiteSpace(cp) || cp == '-' || u_charType(cp) == U_DASH_PUNCTUATION) {
      pending_space = true;
      continue;
    }
    if (pending_space && kept.length() > 0) kept.append(static_cast<UChar>(' '));
    pending_space = false;
    kept.append(cp);
  }
  std::string out;
  kept.toUTF8String(out);
  return out;
}

namespace {

std::map<std::string, std::vector<std::string>> classes_by_label(const Graph& g) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& cls : declared_classes(g)) out[normalize_label(label_of(g, cls))].push_back(cls);
  return out;
}

// Copies every statement of node and, recursively, of the blanks it reaches.
void copy_closure(const Graph& from, const Term& node, Graph& to,
                  const std::function<bool(const Triple&)>& keep) {
  std::vector<Term> stack{node};
  std::set<Term> seen{node};
  while (!stack.empty()) {
    Term n = stack.back();
    stack.pop_back();
    for (const auto& t : from.match(n, std::nullopt, std::nullopt)) {
      if (!keep(t)) continue;
      to.insert(t);
      if (t.object.is_blank() && seen.insert(t.object).second) stack.push_back(t.object);
    }
  }
}

}  // namespace

std::pair<Alignment, ConflictReport> align_by_label(const Graph& left, const Graph& right) {
  auto l = classes_by_label(left);
  auto r = classes_by_label(right);
  Alignment alignment;
  ConflictReport report;

  std::set<std::string> labels;
  for (auto& [k, v] : l) labels.insert(k);
  for (auto& [k, v] : r) labels.insert(k);

  for (const auto& label : labels) {
    auto li = l.find(label);
    auto ri = r.find(label);
    std::vector<std::string> lc = li != l.end() ? li->second : std::vector<std::string>{};
    std::vector<std::string> rc = ri != r.end() ? ri->second : std::vector<std::string>{};
    if (lc.size() > 1 || rc.size() > 1) {
      report.name_conflicts.push_back(NameConflict{label, lc, rc});
    } else if (lc.size() == 1 && rc.size() == 1) {
      alignment.matches.push_back(ClassMatch{lc.front(), rc.front(), label});
      continue;
    }
    alignment.left_only.insert(lc.begin(), lc.end());
    alignment.right_only.insert(rc.begin(), rc.end());
  }
  return {std::move(alignment), std::move(report)};
}

MergeResult intersect_merge(const Graph& left, const Graph& right, const Alignment& alignment) {
  MergeResult result;
  Graph& out = result.graph;
  auto& report = result.report;

  std::map<std::string, std::string> left_to_right;
  std::set<std::string> survivors;
  for (const auto& m : alignment.matches) {
    left_to_right[m.left] = m.right;
    survivors.insert(m.right);
  }
  const auto right_classes = declared_classes(right);
  if (!right_classes.empty())
    report.reef_fraction = static_cast<double>(alignment.matches.size()) /
                           static_cast<double>(right_classes.size());
  if (survivors.empty()) return result;

  // Fillers of surviving definitions survive too, transitively.
  std::map<std::string, ClassAxiom> axioms;
  std::vector<std::string> work(survivors.begin(), survivors.end());
  while (!work.empty()) {
    auto cls = work.back();
    work.pop_back();
    auto axiom = read_axiom(right, cls);
    if (axiom.definition) {
      for (const auto& r : *axiom.definition) {
        if (survivors.contains(r.filler) || !right_classes.contains(r.filler)) continue;
        survivors.insert(r.filler);
        report.carried_classes.insert(r.filler);
        work.push_back(r.filler);
      }
    }
    axioms.emplace(cls, std::move(axiom));
  }

  for (const auto& [prefix, base] : left.namespaces()) out.set_namespace(prefix, base);
  for (const auto& [prefix, base] : right.namespaces()) out.set_namespace(prefix, base);

  const Term sub_class_of = iri(vocab::rdfs::sub_class_of);
  const Term type = iri(vocab::rdf::type);
  auto not_named_super = [&](const Triple& t) {
    return !(t.predicate == sub_class_of && t.object.is_iri());
  };

  for (const auto& cls : survivors) copy_closure(right, Term::iri(cls), out, not_named_super);
  for (const auto& m : alignment.matches) {
    if (m.left != m.right)
      out.insert(Term::iri(m.right), iri(vocab::owl::equivalent_class), Term::iri(m.left));
  }

  // Combined hierarchy over survivors, then reduced.
  Hierarchy combined;
  for (const auto& cls : survivors) combined.classes[cls] = LabelledConcept{label_of(right, cls), {}};
  for (const auto& t : right.match(std::nullopt, sub_class_of, std::nullopt)) {
    if (!t.subject.is_iri() || !t.object.is_iri()) continue;
    if (survivors.contains(t.subject.value()) && survivors.contains(t.object.value()))
      combined.edges.emplace(t.subject.value(), t.object.value());
  }
  for (const auto& t : left.match(std::nullopt, sub_class_of, std::nullopt)) {
    if (!t.subject.is_iri() || !t.object.is_iri()) continue;
    auto a = left_to_right.find(t.subject.value());
    auto b = left_to_right.find(t.object.value());
    if (a != left_to_right.end() && b != left_to_right.end())
      combined.edges.emplace(a->second, b->second);
  }
  auto reduced = transitive_reduction(combined);
  for (const auto& e : combined.edges)
    if (!reduced.edges.contains(e)) report.hierarchy_redundancies.insert(e);
  for (const auto& [a, b] : reduced.edges) out.insert(Term::iri(a), sub_class_of, Term::iri(b));

  // Properties attached to surviving classes or used by surviving definitions.
  std::set<std::string> used_properties;
  for (const auto& [cls, axiom] : axioms)
    if (axiom.definition)
      for (const auto& r : *axiom.definition) used_properties.insert(r.property);

  const Term domain = iri(vocab::rdfs::domain);
  const Term range = iri(vocab::rdfs::range);
  std::set<Term> candidates;
  for (auto kind : {vocab::owl::datatype_property, vocab::owl::object_property})
    for (const auto& p : right.subjects(type, iri(kind))) candidates.insert(p);
  for (const auto& t : right.match(std::nullopt, domain, std::nullopt)) candidates.insert(t.subject);
  for (const auto& p : used_properties) candidates.insert(Term::iri(p));

  auto class_ok = [&](const Term& c) {
    return !c.is_iri() || !right_classes.contains(c.value()) || survivors.contains(c.value());
  };
  for (const auto& p : candidates) {
    if (!p.is_iri()) continue;
    auto domains = right.objects(p, domain);
    auto ranges = right.objects(p, range);
    bool attached = used_properties.contains(p.value()) ||
                    std::any_of(domains.begin(), domains.end(), [&](const Term& d) {
                      return d.is_iri() && survivors.contains(d.value());
                    });
    if (!attached || !std::all_of(domains.begin(), domains.end(), class_ok) ||
        !std::all_of(ranges.begin(), ranges.end(), class_ok))
      continue;
    copy_closure(right, p, out, [](const Triple&) { return true; });
  }

  // Ontology header, minus configuration that points at dropped classes.
  for (const auto& h : right.subjects(type, iri(vocab::owl::ontology))) {
    copy_closure(right, h, out, [&](const Triple& t) {
      return !(t.object.is_iri() && right_classes.contains(t.object.value()) &&
               !survivors.contains(t.object.value()));
    });
  }
  return result;
}

std::string report_to_json(const ConflictReport& report) {
  nlohmann::ordered_json j;
  j["name_conflicts"] = nlohmann::ordered_json::array();
  for (const auto& c : report.name_conflicts)
    j["name_conflicts"].push_back({{"label", c.label}, {"left", c.left}, {"right", c.right}});
  j["hierarchy_redundancies"] = nlohmann::ordered_json::array();
  for (const auto& [sub, super] : report.hierarchy_redundancies)
    j["hierarchy_redundancies"].push_back({{"sub", sub}, {"super", super}});
  j["carried_classes"] = report.carried_classes;
  if (report.reef_fraction) j["reef_fraction"] = *report.reef_fraction;
  return j.dump(2) + "\n";
}

}  // namespace ontoform
