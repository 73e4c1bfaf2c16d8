#ifndef ONTOCRAWL_STORE_HPP
#define ONTOCRAWL_STORE_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace ontocrawl {

// The six relation kinds a domain ontology distinguishes. Parent and Child
// are mutual inverses ((a,Parent,b) <=> (b,Child,a)); Synonym and Sibling are
// symmetric. HasAttribute/HasValue carry the attribute->value shape that form
// filling runs on.
enum class RelationKind {
    Synonym,
    Parent,
    Child,
    Sibling,
    HasAttribute,
    HasValue,
};

const char* relation_name(RelationKind kind);
std::optional<RelationKind> relation_from_name(std::string_view canonical_name);

// One stored fact. Fields are trimmed, non-empty, and free of tabs and
// newlines (the persistence delimiters). Construction through make() enforces
// that; aggregate construction is for internal use on already-valid strings.
struct Triple {
    std::string subject;
    std::string predicate; // canonical-folded; may name a RelationKind or be free-form
    std::string object;

    static Triple make(std::string_view subject, std::string_view predicate,
                       std::string_view object);

    auto operator<=>(const Triple&) const = default;
};

struct MergeStats {
    long triples_added = 0;
    long triples_duplicate = 0;
    long nodes_added = 0;
};

// Typed relation graph for one domain. Nodes are normalized terms; edges are
// kind-typed and closure-complete (adding one direction of an inverse or
// symmetric pair adds the other). Self-loops are dropped.
struct OntologyGraph {
    using Edge = std::tuple<std::string, RelationKind, std::string>;

    std::string domain;
    std::set<std::string> nodes;
    std::set<Edge> edges;

    void add_edge(const std::string& from, RelationKind kind, const std::string& to);
    bool empty() const { return edges.empty() && nodes.empty(); }
    std::set<Triple> as_triples() const;
};

// Groups of interchangeable terms, loaded from a plain-text file (one
// comma-separated group per line, '#' comments). Groups overlapping on a term
// are unioned at load so membership stays unambiguous.
class SynonymLexicon {
public:
    SynonymLexicon() = default;

    static SynonymLexicon load(const std::string& path);
    static SynonymLexicon from_groups(const std::vector<std::vector<std::string>>& groups);

    // The group containing term, minus the term itself. Empty set if the term
    // is in no group.
    std::set<std::string> partners_of(const std::string& term) const;
    std::size_t group_count() const { return groups_.size(); }

private:
    void add_group(std::set<std::string> group);

    std::vector<std::set<std::string>> groups_;
    std::map<std::string, std::size_t> index_;
};

// Persistent per-domain ontology database. Holds the raw triple set (set
// semantics, order independent) plus derived indexes for attribute, value,
// synonym and relation lookups. Predicates outside the six relation names are
// typed on the fly: an edge counts as HasAttribute when its object is the
// subject of some has-value triple, else as HasValue.
//
// Concurrency: single writer, many readers. Each operation takes the lock it
// needs; writes are atomic per operation.
class OntologyStore {
public:
    OntologyStore() = default;
    explicit OntologyStore(std::string domain) : domain_(std::move(domain)) {}

    OntologyStore(const OntologyStore&) = delete;
    OntologyStore& operator=(const OntologyStore&) = delete;
    OntologyStore(OntologyStore&& other) noexcept;
    OntologyStore& operator=(OntologyStore&& other) noexcept;

    const std::string& domain() const { return domain_; }

    void set_lexicon(SynonymLexicon lexicon);

    // Returns true iff the triple was not already present. Registers the
    // closure twin of inverse/symmetric relations as a side effect.
    bool insert_triple(const Triple& t);

    bool has_attribute(const std::string& name) const;
    std::vector<std::string> query_values(const std::string& attribute) const;
    std::set<std::string> synonyms_of(const std::string& term) const;
    std::set<std::pair<std::string, RelationKind>> related_attributes(
        const std::string& term) const;

    std::set<std::string> attributes() const;
    std::set<std::string> all_values() const;
    std::set<Triple> triples() const;
    std::size_t triple_count() const;

    MergeStats merge_graph(const OntologyGraph& g);

    void save(const std::string& path) const;
    static OntologyStore load(const std::string& path);

private:
    bool raw_insert_locked(const Triple& t);
    void close_relations_locked();
    void reindex_locked();
    static void validate(const Triple& t);

    mutable std::shared_mutex mutex_;
    std::string domain_;
    SynonymLexicon lexicon_;
    std::set<Triple> triples_;

    // Derived, rebuilt after every mutation.
    std::set<std::string> nodes_;
    std::set<std::string> attributes_;
    std::map<std::string, std::set<std::string>> values_by_attribute_;
    std::map<std::string, std::set<std::pair<std::string, RelationKind>>> relations_;
    std::map<std::string, std::set<std::string>> synonym_edges_;
};

} // namespace ontocrawl

#endif // ONTOCRAWL_STORE_HPP
