#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontoform {

enum class TermKind { Iri, Blank, Literal };

// An RDF node. Identifiers are absolute IRIs; blank labels are local to
// one graph; literals carry a datatype IRI and an optional language tag.
class Term {
 public:
  // Throws Error(InvalidInput) on empty or whitespace-bearing IRIs.
  static Term iri(std::string_view value);
  static Term blank(std::string_view label);
  static Term literal(std::string_view lexical, std::string_view datatype,
                      std::string_view language = {});
  static Term string_literal(std::string_view lexical);

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
  bool is_blank() const noexcept { return kind_ == TermKind::Blank; }
  bool is_literal() const noexcept { return kind_ == TermKind::Literal; }

  // IRI string, blank label, or literal lexical form depending on kind().
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  // N-Triples style rendering, used in diagnostics and as a stable sort key.
  std::string to_string() const;

  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  friend class Graph;

  // Orders before every constructible term; used as an index lower bound.
  static Term lowest() { return Term(TermKind::Iri, {}, {}, {}); }

  Term(TermKind kind, std::string value, std::string datatype, std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

inline Term iri(std::string_view value) { return Term::iri(value); }

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Throws Error(InvalidTriple) when subject is a literal or predicate is not an IRI.
void check_triple(const Triple& t);

// Indexed set of statements plus a prefix table. Copyable value type;
// const member functions are safe for concurrent readers.
class Graph {
 public:
  using Namespaces = std::map<std::string, std::string>;

  // Returns true if the statement was not already present.
  bool insert(const Triple& t);
  bool insert(Term s, Term p, Term o) {
    return insert(Triple{std::move(s), std::move(p), std::move(o)});
  }
  bool erase(const Triple& t);
  bool contains(const Triple& t) const { return spo_.contains(t); }

  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }

  // All statements in (subject, predicate, object) order.
  const std::set<Triple>& statements() const noexcept { return spo_; }

  // Statements matching every bound position, in (s, p, o) order.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  // Convenience: objects of (s, p, ?) and subjects of (?, p, o).
  std::vector<Term> objects(const Term& s, const Term& p) const;
  std::vector<Term> subjects(const Term& p, const Term& o) const;
  std::optional<Term> object(const Term& s, const Term& p) const;

  // Blank label that occurs nowhere in this graph.
  Term fresh_blank();

  // Adds every statement of other, relabelling its blank nodes so they cannot
  // capture blanks already present here. Namespaces of this graph win.
  void merge(const Graph& other);

  const Namespaces& namespaces() const noexcept { return namespaces_; }
  void set_namespace(std::string prefix, std::string base);
  void set_namespaces(const Namespaces& ns);

  // Statement equality; the prefix table is presentation only.
  friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

 private:
  struct PosLess {
    bool operator()(const Triple& a, const Triple& b) const;
  };
  struct OspLess {
    bool operator()(const Triple& a, const Triple& b) const;
  };

  std::set<Triple> spo_;
  std::set<Triple, PosLess> pos_;
  std::set<Triple, OspLess> osp_;
  std::set<std::string> blank_labels_;
  std::size_t next_blank_ = 0;
  Namespaces namespaces_;
};

// Members of the RDF collection starting at head, in list order.
// Throws Error(MalformedList) on missing/duplicate first or rest, cycles,
// or a chain that does not end at rdf:nil.
std::vector<Term> list_members(const Graph& graph, const Term& head);

// Builds a first/rest chain for items and returns its head (rdf:nil when empty).
Term make_list(Graph& graph, const std::vector<Term>& items);

}  // namespace ontoform
