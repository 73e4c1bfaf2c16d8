#include "ontocrawl/store.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "ontocrawl/error.hpp"
#include "ontocrawl/text.hpp"

namespace ontocrawl {

namespace {

// Inverse or symmetric partner of a relational triple, if the kind has one.
std::optional<Triple> closure_twin(const Triple& t) {
    auto kind = relation_from_name(t.predicate);
    if (!kind) return std::nullopt;
    switch (*kind) {
        case RelationKind::Parent:
            return Triple{t.object, relation_name(RelationKind::Child), t.subject};
        case RelationKind::Child:
            return Triple{t.object, relation_name(RelationKind::Parent), t.subject};
        case RelationKind::Synonym:
        case RelationKind::Sibling:
            return Triple{t.object, t.predicate, t.subject};
        default:
            return std::nullopt;
    }
}

} // namespace

const char* relation_name(RelationKind kind) {
    switch (kind) {
        case RelationKind::Synonym: return "synonym";
        case RelationKind::Parent: return "parent";
        case RelationKind::Child: return "child";
        case RelationKind::Sibling: return "sibling";
        case RelationKind::HasAttribute: return "has-attribute";
        case RelationKind::HasValue: return "has-value";
    }
    return "?";
}

std::optional<RelationKind> relation_from_name(std::string_view canonical_name) {
    if (canonical_name == "synonym") return RelationKind::Synonym;
    if (canonical_name == "parent") return RelationKind::Parent;
    if (canonical_name == "child") return RelationKind::Child;
    if (canonical_name == "sibling") return RelationKind::Sibling;
    if (canonical_name == "has-attribute") return RelationKind::HasAttribute;
    if (canonical_name == "has-value") return RelationKind::HasValue;
    return std::nullopt;
}

Triple Triple::make(std::string_view subject, std::string_view predicate,
                    std::string_view object) {
    Triple t{trim(subject), canonical_predicate(predicate), trim(object)};
    if (t.subject.empty() || t.predicate.empty() || t.object.empty())
        throw StoreError("malformed triple: empty field after trimming");
    for (const std::string* field : {&t.subject, &t.predicate, &t.object}) {
        if (field->find_first_of("\t\n") != std::string::npos)
            throw StoreError("malformed triple: field contains delimiter");
    }
    if (t.subject == t.object && relation_from_name(t.predicate))
        throw StoreError("malformed triple: self-relation on '" + t.subject + "'");
    return t;
}

void OntologyGraph::add_edge(const std::string& from, RelationKind kind, const std::string& to) {
    if (from.empty() || to.empty() || from == to) return;
    nodes.insert(from);
    nodes.insert(to);
    edges.emplace(from, kind, to);
    switch (kind) {
        case RelationKind::Parent: edges.emplace(to, RelationKind::Child, from); break;
        case RelationKind::Child: edges.emplace(to, RelationKind::Parent, from); break;
        case RelationKind::Synonym:
        case RelationKind::Sibling: edges.emplace(to, kind, from); break;
        default: break;
    }
}

std::set<Triple> OntologyGraph::as_triples() const {
    std::set<Triple> out;
    for (const auto& [from, kind, to] : edges) out.insert(Triple{from, relation_name(kind), to});
    return out;
}

SynonymLexicon SynonymLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open lexicon file: " + path);
    SynonymLexicon lex;
    std::string line;
    while (std::getline(in, line)) {
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::set<std::string> group;
        for (const auto& raw : split(stripped, ',')) {
            std::string term = normalize_term(raw);
            if (!term.empty()) group.insert(term);
        }
        if (group.size() >= 2) lex.add_group(std::move(group));
    }
    return lex;
}

SynonymLexicon SynonymLexicon::from_groups(const std::vector<std::vector<std::string>>& groups) {
    SynonymLexicon lex;
    for (const auto& raw_group : groups) {
        std::set<std::string> group;
        for (const auto& raw : raw_group) {
            std::string term = normalize_term(raw);
            if (!term.empty()) group.insert(term);
        }
        if (group.size() >= 2) lex.add_group(std::move(group));
    }
    return lex;
}

void SynonymLexicon::add_group(std::set<std::string> group) {
    // Union with any existing groups sharing a term, keeping groups disjoint.
    std::set<std::size_t> hits;
    for (const auto& term : group) {
        auto it = index_.find(term);
        if (it != index_.end()) hits.insert(it->second);
    }
    for (auto idx_it = hits.rbegin(); idx_it != hits.rend(); ++idx_it) {
        group.insert(groups_[*idx_it].begin(), groups_[*idx_it].end());
        groups_.erase(groups_.begin() + static_cast<std::ptrdiff_t>(*idx_it));
    }
    groups_.push_back(std::move(group));
    index_.clear();
    for (std::size_t i = 0; i < groups_.size(); ++i)
        for (const auto& term : groups_[i]) index_[term] = i;
}

std::set<std::string> SynonymLexicon::partners_of(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return {};
    std::set<std::string> out = groups_[it->second];
    out.erase(term);
    return out;
}

OntologyStore::OntologyStore(OntologyStore&& other) noexcept {
    *this = std::move(other);
}

OntologyStore& OntologyStore::operator=(OntologyStore&& other) noexcept {
    if (this == &other) return *this;
    std::scoped_lock lock(mutex_, other.mutex_);
    domain_ = std::move(other.domain_);
    lexicon_ = std::move(other.lexicon_);
    triples_ = std::move(other.triples_);
    nodes_ = std::move(other.nodes_);
    attributes_ = std::move(other.attributes_);
    values_by_attribute_ = std::move(other.values_by_attribute_);
    relations_ = std::move(other.relations_);
    synonym_edges_ = std::move(other.synonym_edges_);
    return *this;
}

void OntologyStore::set_lexicon(SynonymLexicon lexicon) {
    std::unique_lock lock(mutex_);
    lexicon_ = std::move(lexicon);
}

void OntologyStore::validate(const Triple& t) {
    // Re-runs the make() checks so aggregate-built triples get caught too.
    Triple::make(t.subject, t.predicate, t.object);
}

bool OntologyStore::raw_insert_locked(const Triple& t) {
    return triples_.insert(t).second;
}

bool OntologyStore::insert_triple(const Triple& t) {
    validate(t);
    std::unique_lock lock(mutex_);
    bool inserted = raw_insert_locked(t);
    if (inserted) {
        if (auto twin = closure_twin(t)) raw_insert_locked(*twin);
        reindex_locked();
    }
    return inserted;
}

void OntologyStore::close_relations_locked() {
    std::vector<Triple> missing;
    for (const auto& t : triples_) {
        if (auto twin = closure_twin(t)) {
            if (!triples_.count(*twin)) missing.push_back(*twin);
        }
    }
    for (auto& t : missing) triples_.insert(std::move(t));
}

void OntologyStore::reindex_locked() {
    nodes_.clear();
    attributes_.clear();
    values_by_attribute_.clear();
    relations_.clear();
    synonym_edges_.clear();

    std::set<std::string> value_subjects;
    for (const auto& t : triples_) {
        if (relation_from_name(t.predicate) == RelationKind::HasValue)
            value_subjects.insert(t.subject);
    }
    for (const auto& t : triples_) {
        nodes_.insert(t.subject);
        nodes_.insert(t.object);
        RelationKind kind;
        if (auto named = relation_from_name(t.predicate)) {
            kind = *named;
        } else {
            // Free-form predicate: attribute-shaped when the object is known
            // to carry values, value-shaped otherwise.
            kind = value_subjects.count(t.object) ? RelationKind::HasAttribute
                                                  : RelationKind::HasValue;
        }
        switch (kind) {
            case RelationKind::HasAttribute:
                attributes_.insert(t.object);
                break;
            case RelationKind::HasValue:
                values_by_attribute_[t.subject].insert(t.object);
                break;
            case RelationKind::Synonym:
                synonym_edges_[t.subject].insert(t.object);
                break;
            case RelationKind::Parent:
            case RelationKind::Child:
            case RelationKind::Sibling:
                relations_[t.subject].emplace(t.object, kind);
                break;
        }
    }
}

bool OntologyStore::has_attribute(const std::string& name) const {
    std::shared_lock lock(mutex_);
    return attributes_.count(name) > 0;
}

std::vector<std::string> OntologyStore::query_values(const std::string& attribute) const {
    std::shared_lock lock(mutex_);
    auto it = values_by_attribute_.find(attribute);
    if (it == values_by_attribute_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::set<std::string> OntologyStore::synonyms_of(const std::string& term) const {
    std::shared_lock lock(mutex_);
    std::set<std::string> out = lexicon_.partners_of(term);
    auto it = synonym_edges_.find(term);
    if (it != synonym_edges_.end()) out.insert(it->second.begin(), it->second.end());
    out.erase(term);
    return out;
}

std::set<std::pair<std::string, RelationKind>> OntologyStore::related_attributes(
    const std::string& term) const {
    std::shared_lock lock(mutex_);
    auto it = relations_.find(term);
    if (it == relations_.end()) return {};
    return it->second;
}

std::set<std::string> OntologyStore::attributes() const {
    std::shared_lock lock(mutex_);
    return attributes_;
}

std::set<std::string> OntologyStore::all_values() const {
    std::shared_lock lock(mutex_);
    std::set<std::string> out;
    for (const auto& [attr, values] : values_by_attribute_) out.insert(values.begin(), values.end());
    return out;
}

std::set<Triple> OntologyStore::triples() const {
    std::shared_lock lock(mutex_);
    return triples_;
}

std::size_t OntologyStore::triple_count() const {
    std::shared_lock lock(mutex_);
    return triples_.size();
}

MergeStats OntologyStore::merge_graph(const OntologyGraph& g) {
    std::unique_lock lock(mutex_);
    if (domain_.empty()) {
        domain_ = g.domain;
    } else if (!g.domain.empty() && g.domain != domain_) {
        throw StoreError("domain mismatch: store is '" + domain_ + "', graph is '" + g.domain +
                         "'");
    }
    MergeStats stats;
    std::size_t nodes_before = nodes_.size();
    for (const auto& t : g.as_triples()) {
        validate(t);
        if (raw_insert_locked(t))
            ++stats.triples_added;
        else
            ++stats.triples_duplicate;
    }
    close_relations_locked();
    reindex_locked();
    stats.nodes_added = static_cast<long>(nodes_.size() - nodes_before);
    return stats;
}

void OntologyStore::save(const std::string& path) const {
    std::shared_lock lock(mutex_);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw StoreError("cannot write store file: " + path);
    out << "@domain\t" << domain_ << "\n";
    for (const auto& t : triples_) out << t.subject << "\t" << t.predicate << "\t" << t.object << "\n";
    if (!out) throw StoreError("write failure on store file: " + path);
}

OntologyStore OntologyStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StoreError("cannot open store file: " + path);
    OntologyStore store;
    std::string line;
    std::size_t line_no = 0;
    bool saw_domain = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto fields = split(line, '\t');
        if (!saw_domain) {
            if (fields.size() != 2 || trim(fields[0]) != "@domain")
                throw ParseError("store file must start with an @domain line", line_no);
            store.domain_ = trim(fields[1]);
            saw_domain = true;
            continue;
        }
        if (fields.size() != 3)
            throw ParseError("expected 3 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        Triple t;
        try {
            t = Triple::make(fields[0], fields[1], fields[2]);
        } catch (const StoreError& e) {
            throw ParseError(e.what(), line_no);
        }
        store.triples_.insert(t);
    }
    store.close_relations_locked();
    store.reindex_locked();
    return store;
}

} // namespace ontocrawl
