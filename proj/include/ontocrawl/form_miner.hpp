#ifndef ONTOCRAWL_FORM_MINER_HPP
#define ONTOCRAWL_FORM_MINER_HPP

#include <string>
#include <utility>
#include <vector>

#include "ontocrawl/fetcher.hpp"
#include "ontocrawl/result_processor.hpp"
#include "ontocrawl/store.hpp"

namespace ontocrawl {

enum class ControlKind { Text, Select, Radio, Checkbox, Hidden, Submit };

const char* control_name(ControlKind kind);

struct FormField {
    std::string name;
    ControlKind control = ControlKind::Text;
    std::string label;                // empty when the page gives none
    std::vector<std::string> options; // Select/Radio/Checkbox only, document order
    bool required = false;

    bool fillable() const {
        return !name.empty() &&
               (control == ControlKind::Text || control == ControlKind::Select ||
                control == ControlKind::Radio || control == ControlKind::Checkbox);
    }
};

struct FormSchema {
    enum class Method { Get, Post };

    std::string form_id; // stable hash of (source_url, ordinal)
    std::string source_url;
    std::string action; // absolute after resolution against source_url
    Method method = Method::Get;
    std::vector<FormField> fields; // document order, unique names

    const FormField* field(const std::string& name) const;
};

struct FormDiscovery {
    std::vector<FormSchema> forms;      // document order
    int skipped_no_fillable = 0;        // forms dropped for lacking fillable fields
};

// One schema per <form> element. Labels come from <label for=...> or, failing
// that, the nearest preceding text run inside the form. Radio inputs sharing
// a name collapse into one field; remaining duplicate names get ordinal
// suffixes. Requires a non-error page.
FormDiscovery discover_forms(const PageDocument& page);

// The user query, then every whitespace token of length >= 3. A query that is
// itself a single absolute URL passes through alone. Empty queries are errors.
std::vector<std::string> expand_query(const std::string& user_query);

// The ontology view of one form: a root node per form, attribute edges to the
// normalized field terms (label preferred over name), value edges to options.
OntologyGraph form_to_graph(const FormSchema& schema);

enum class MatchTier { Exact, Synonym, Relational };

const char* tier_name(MatchTier tier);
double tier_confidence(MatchTier tier);

struct FieldBinding {
    std::string field_name;
    std::string attribute;
    MatchTier tier = MatchTier::Exact;
    double confidence = 1.0;
    std::vector<std::string> values; // sorted, non-empty
};

struct MappingResult {
    std::string form_id;
    std::vector<FieldBinding> bindings;  // form-field order
    std::vector<std::string> unmapped;   // form-field order
};

// Binds each fillable field at the first tier that yields a non-empty value
// set: exact attribute match, then lexicon/graph synonyms, then one-hop
// parent/child/sibling neighbors. Ties inside a tier break to the smallest
// attribute. Select/Radio values are intersected with the declared options;
// checkboxes bind only at the exact tier.
MappingResult map_form(const FormSchema& schema, const OntologyStore& store);

struct QueryInstance {
    std::string form_id;
    std::vector<std::pair<std::string, std::string>> assignments; // field order
};

struct QueryGeneration {
    std::vector<QueryInstance> queries;
    bool skipped_required_unmapped = false;
};

// Cartesian product over the bindings' value lists in lexicographic order of
// assignment tuples, truncated at budget. Unmapped optional fields are left
// out of the assignments; an unmapped required field skips the whole form.
QueryGeneration generate_queries(const MappingResult& mapping, const FormSchema& schema,
                                 long budget);

// Fills and fires one query: GET appends the urlencoded assignments to the
// action, POST sends them as the body. Transport failures become SubmitError.
ResponsePage submit_query(const QueryInstance& query, const FormSchema& schema,
                          Fetcher& fetcher);

} // namespace ontocrawl

#endif // ONTOCRAWL_FORM_MINER_HPP
