#include "ontocrawl/form_miner.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>

#include "ontocrawl/html.hpp"
#include "ontocrawl/text.hpp"

namespace ontocrawl {

namespace {

std::string stable_form_id(const std::string& source_url, int ordinal) {
    // FNV-1a, fixed so form ids survive across runs and platforms.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    mix(source_url);
    mix("#");
    mix(std::to_string(ordinal));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ControlKind control_from_input_type(const std::string& type) {
    std::string t = to_lower(type);
    if (t.empty() || t == "text" || t == "search" || t == "email" || t == "number" ||
        t == "tel" || t == "date" || t == "password")
        return ControlKind::Text;
    if (t == "radio") return ControlKind::Radio;
    if (t == "checkbox") return ControlKind::Checkbox;
    if (t == "hidden") return ControlKind::Hidden;
    return ControlKind::Submit; // submit, button, reset, image: never filled
}

struct RawControl {
    ControlKind kind = ControlKind::Text;
    std::string name;
    std::string id;
    std::string value;
    std::string label;
    std::vector<std::string> options;
    bool required = false;
};

// Collects <label for=...> texts across the whole page so labels placed after
// their control still resolve.
std::map<std::string, std::string> labels_by_id(std::string_view html) {
    std::map<std::string, std::string> out;
    HtmlScanner scanner(html);
    HtmlToken tok;
    std::string pending_id;
    std::string text;
    bool in_label = false;
    while (scanner.next(tok)) {
        if (tok.kind == HtmlToken::Kind::StartTag && tok.text == "label") {
            in_label = true;
            text.clear();
            const std::string* target = tok.attr("for");
            pending_id = target ? *target : "";
            continue;
        }
        if (tok.kind == HtmlToken::Kind::EndTag && tok.text == "label") {
            if (in_label && !pending_id.empty()) {
                std::string t = trim(text);
                if (!t.empty()) out.emplace(pending_id, t);
            }
            in_label = false;
            continue;
        }
        if (in_label && tok.kind == HtmlToken::Kind::Text) text += tok.text;
    }
    return out;
}

} // namespace

const char* control_name(ControlKind kind) {
    switch (kind) {
        case ControlKind::Text: return "text";
        case ControlKind::Select: return "select";
        case ControlKind::Radio: return "radio";
        case ControlKind::Checkbox: return "checkbox";
        case ControlKind::Hidden: return "hidden";
        case ControlKind::Submit: return "submit";
    }
    return "?";
}

const char* tier_name(MatchTier tier) {
    switch (tier) {
        case MatchTier::Exact: return "exact";
        case MatchTier::Synonym: return "synonym";
        case MatchTier::Relational: return "relational";
    }
    return "?";
}

double tier_confidence(MatchTier tier) {
    switch (tier) {
        case MatchTier::Exact: return 1.0;
        case MatchTier::Synonym: return 0.8;
        case MatchTier::Relational: return 0.5;
    }
    return 0.0;
}

const FormField* FormSchema::field(const std::string& name) const {
    for (const auto& f : fields) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

std::vector<std::string> expand_query(const std::string& user_query) {
    std::string q = trim(user_query);
    if (q.empty()) throw Error("empty user query");
    auto tokens = split_ws(q);
    if (tokens.size() == 1 && is_absolute_url(tokens[0])) return {tokens[0]};
    std::vector<std::string> out;
    out.push_back(q);
    for (const auto& token : tokens) {
        if (token.size() >= 3 && std::find(out.begin(), out.end(), token) == out.end())
            out.push_back(token);
    }
    return out;
}

FormDiscovery discover_forms(const PageDocument& page) {
    if (!page.ok())
        throw ContractError("discover_forms requires a non-error page, got status " +
                            std::to_string(page.status) + " for " + page.url);

    auto labels = labels_by_id(page.body);
    auto base = parse_url(page.url);

    FormDiscovery discovery;
    HtmlScanner scanner(page.body);
    HtmlToken tok;

    bool in_form = false;
    std::string action_attr;
    FormSchema::Method method = FormSchema::Method::Get;
    std::vector<RawControl> controls;
    std::string last_text;
    RawControl* open_select = nullptr;
    bool in_option = false;
    bool option_has_value = false;

    auto resolve_label = [&](const RawControl& c) -> std::string {
        if (!c.id.empty()) {
            auto it = labels.find(c.id);
            if (it != labels.end()) return it->second;
        }
        return trim(last_text);
    };

    auto finalize_form = [&] {
        if (!in_form) return;
        in_form = false;
        open_select = nullptr;

        // Radio inputs sharing a name make one multi-option field.
        std::vector<FormField> fields;
        std::map<std::string, std::size_t> radio_groups;
        for (const auto& c : controls) {
            if (c.kind != ControlKind::Submit && c.name.empty()) continue;
            if (c.kind == ControlKind::Radio) {
                auto it = radio_groups.find(c.name);
                if (it != radio_groups.end()) {
                    FormField& group = fields[it->second];
                    if (!c.value.empty() &&
                        std::find(group.options.begin(), group.options.end(), c.value) ==
                            group.options.end())
                        group.options.push_back(c.value);
                    if (group.label.empty()) group.label = c.label;
                    group.required = group.required || c.required;
                    continue;
                }
            }
            FormField field;
            field.name = c.name;
            field.control = c.kind;
            field.label = c.label;
            field.required = c.required;
            if (c.kind == ControlKind::Select) {
                field.options = c.options;
            } else if (c.kind == ControlKind::Radio) {
                if (!c.value.empty()) field.options.push_back(c.value);
                radio_groups[c.name] = fields.size();
            } else if (c.kind == ControlKind::Checkbox) {
                field.options = {"on"};
            }
            fields.push_back(std::move(field));
        }

        // Leftover duplicate names get ordinal suffixes to stay addressable.
        std::map<std::string, int> name_uses;
        for (auto& field : fields) {
            if (field.name.empty()) continue;
            int n = ++name_uses[field.name];
            if (n > 1) field.name += "_" + std::to_string(n);
        }

        bool any_fillable = std::any_of(fields.begin(), fields.end(),
                                        [](const FormField& f) { return f.fillable(); });
        if (!any_fillable) {
            ++discovery.skipped_no_fillable;
            return;
        }

        FormSchema schema;
        schema.source_url = page.url;
        schema.form_id =
            stable_form_id(page.url, static_cast<int>(discovery.forms.size()) +
                                         discovery.skipped_no_fillable);
        schema.method = method;
        schema.fields = std::move(fields);
        schema.action = page.url;
        if (base) {
            if (auto resolved = resolve_href(*base, action_attr)) schema.action = resolved->str();
        }
        discovery.forms.push_back(std::move(schema));
    };

    while (scanner.next(tok)) {
        if (tok.kind == HtmlToken::Kind::StartTag && tok.text == "form") {
            finalize_form(); // tolerate unclosed forms
            in_form = true;
            controls.clear();
            last_text.clear();
            const std::string* a = tok.attr("action");
            action_attr = a ? *a : "";
            const std::string* m = tok.attr("method");
            method = (m && to_lower(*m) == "post") ? FormSchema::Method::Post
                                                   : FormSchema::Method::Get;
            continue;
        }
        if (tok.kind == HtmlToken::Kind::EndTag && tok.text == "form") {
            finalize_form();
            continue;
        }
        if (!in_form) continue;

        if (tok.kind == HtmlToken::Kind::Text) {
            if (in_option && open_select && option_has_value == false) {
                std::string t = trim(tok.text);
                if (!t.empty()) {
                    open_select->options.push_back(t);
                    option_has_value = true;
                }
                continue;
            }
            std::string t = trim(tok.text);
            if (!t.empty()) last_text = t;
            continue;
        }

        if (tok.kind == HtmlToken::Kind::StartTag && tok.text == "input") {
            RawControl c;
            const std::string* type = tok.attr("type");
            c.kind = control_from_input_type(type ? *type : "");
            if (const std::string* name = tok.attr("name")) c.name = trim(*name);
            if (const std::string* id = tok.attr("id")) c.id = trim(*id);
            if (const std::string* value = tok.attr("value")) c.value = trim(*value);
            c.required = tok.has_attr("required");
            c.label = resolve_label(c);
            if (c.kind != ControlKind::Submit && c.kind != ControlKind::Hidden)
                last_text.clear(); // a label serves one control
            controls.push_back(std::move(c));
            continue;
        }
        if (tok.kind == HtmlToken::Kind::StartTag && tok.text == "textarea") {
            RawControl c;
            c.kind = ControlKind::Text;
            if (const std::string* name = tok.attr("name")) c.name = trim(*name);
            if (const std::string* id = tok.attr("id")) c.id = trim(*id);
            c.required = tok.has_attr("required");
            c.label = resolve_label(c);
            last_text.clear();
            controls.push_back(std::move(c));
            continue;
        }
        if (tok.kind == HtmlToken::Kind::StartTag && tok.text == "select") {
            RawControl c;
            c.kind = ControlKind::Select;
            if (const std::string* name = tok.attr("name")) c.name = trim(*name);
            if (const std::string* id = tok.attr("id")) c.id = trim(*id);
            c.required = tok.has_attr("required");
            c.label = resolve_label(c);
            last_text.clear();
            controls.push_back(std::move(c));
            open_select = &controls.back();
            in_option = false;
            continue;
        }
        if (tok.kind == HtmlToken::Kind::EndTag && tok.text == "select") {
            open_select = nullptr;
            in_option = false;
            continue;
        }
        if (tok.kind == HtmlToken::Kind::StartTag && tok.text == "option" && open_select) {
            in_option = true;
            option_has_value = false;
            if (const std::string* value = tok.attr("value")) {
                std::string v = trim(*value);
                if (!v.empty()) {
                    open_select->options.push_back(v);
                    option_has_value = true;
                }
            }
            continue;
        }
        if (tok.kind == HtmlToken::Kind::EndTag && tok.text == "option") {
            in_option = false;
            continue;
        }
    }
    finalize_form(); // page ended inside a form

    return discovery;
}

OntologyGraph form_to_graph(const FormSchema& schema) {
    OntologyGraph graph;
    auto source = parse_url(schema.source_url);
    graph.domain = source ? source->site() : schema.source_url;
    const std::string root = schema.form_id;
    graph.nodes.insert(root);
    for (const auto& field : schema.fields) {
        if (!field.fillable()) continue;
        std::string term = normalize_term(field.label.empty() ? field.name : field.label);
        if (term.empty()) continue;
        graph.add_edge(root, RelationKind::HasAttribute, term);
        for (const auto& option : field.options) {
            std::string value = normalize_term(option);
            if (!value.empty()) graph.add_edge(term, RelationKind::HasValue, value);
        }
    }
    return graph;
}

namespace {

// Store attributes reachable from one term at the given tier, for tie-breaks.
std::set<std::string> tier_matches(const std::string& term, MatchTier tier,
                                   const OntologyStore& store) {
    std::set<std::string> out;
    switch (tier) {
        case MatchTier::Exact:
            if (store.has_attribute(term)) out.insert(term);
            break;
        case MatchTier::Synonym:
            for (const auto& synonym : store.synonyms_of(term))
                if (store.has_attribute(synonym)) out.insert(synonym);
            break;
        case MatchTier::Relational:
            for (const auto& relation : store.related_attributes(term))
                if (store.has_attribute(relation.first)) out.insert(relation.first);
            break;
    }
    return out;
}

std::vector<std::string> bound_values(const FormField& field, const std::string& attribute,
                                      const OntologyStore& store) {
    if (field.control == ControlKind::Checkbox) return {"on"};
    std::vector<std::string> store_values = store.query_values(attribute);
    if (field.control == ControlKind::Text) return store_values; // already sorted
    // Select/Radio: submitting anything outside the declared options is
    // pointless, so keep the option literals whose normal form is known.
    std::set<std::string> known;
    for (const auto& v : store_values) known.insert(normalize_term(v));
    std::vector<std::string> out;
    for (const auto& option : field.options) {
        if (known.count(normalize_term(option))) out.push_back(option);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

MappingResult map_form(const FormSchema& schema, const OntologyStore& store) {
    MappingResult result;
    result.form_id = schema.form_id;

    for (const auto& field : schema.fields) {
        if (!field.fillable()) continue;

        std::vector<std::string> terms;
        if (!field.label.empty()) terms.push_back(normalize_term(field.label));
        std::string name_term = normalize_term(field.name);
        if (std::find(terms.begin(), terms.end(), name_term) == terms.end())
            terms.push_back(name_term);

        bool bound = false;
        for (MatchTier tier : {MatchTier::Exact, MatchTier::Synonym, MatchTier::Relational}) {
            if (field.control == ControlKind::Checkbox && tier != MatchTier::Exact) break;
            for (const auto& term : terms) {
                auto candidates = tier_matches(term, tier, store);
                if (candidates.empty()) continue;
                const std::string& attribute = *candidates.begin();
                auto values = bound_values(field, attribute, store);
                if (values.empty()) continue;
                FieldBinding binding;
                binding.field_name = field.name;
                binding.attribute = attribute;
                binding.tier = tier;
                binding.confidence = tier_confidence(tier);
                binding.values = std::move(values);
                result.bindings.push_back(std::move(binding));
                bound = true;
                break;
            }
            if (bound) break;
        }
        if (!bound) result.unmapped.push_back(field.name);
    }
    return result;
}

QueryGeneration generate_queries(const MappingResult& mapping, const FormSchema& schema,
                                 long budget) {
    if (budget < 1) throw ContractError("query budget must be >= 1");

    QueryGeneration generation;
    for (const auto& name : mapping.unmapped) {
        const FormField* field = schema.field(name);
        if (field && field->required) {
            generation.skipped_required_unmapped = true;
            return generation;
        }
    }
    if (mapping.bindings.empty()) return generation;

    // Canonical value lists so enumeration order is the lexicographic order
    // of assignment tuples.
    std::vector<std::vector<std::string>> values;
    values.reserve(mapping.bindings.size());
    for (const auto& binding : mapping.bindings) {
        std::vector<std::string> v = binding.values;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        if (v.empty()) return generation; // defensive; map_form never binds empty
        values.push_back(std::move(v));
    }

    std::vector<std::size_t> index(values.size(), 0);
    while (static_cast<long>(generation.queries.size()) < budget) {
        QueryInstance instance;
        instance.form_id = mapping.form_id;
        for (std::size_t i = 0; i < values.size(); ++i)
            instance.assignments.emplace_back(mapping.bindings[i].field_name,
                                              values[i][index[i]]);
        generation.queries.push_back(std::move(instance));

        // Odometer step, last field fastest.
        std::size_t pos = values.size();
        while (pos > 0) {
            --pos;
            if (++index[pos] < values[pos].size()) break;
            index[pos] = 0;
            if (pos == 0) return generation; // wrapped: product exhausted
        }
    }
    return generation;
}

ResponsePage submit_query(const QueryInstance& query, const FormSchema& schema,
                          Fetcher& fetcher) {
    for (const auto& [name, value] : query.assignments) {
        const FormField* field = schema.field(name);
        if (!field)
            throw ContractError("assignment targets unknown field '" + name + "' in form " +
                                schema.form_id);
        if ((field->control == ControlKind::Select || field->control == ControlKind::Radio) &&
            std::find(field->options.begin(), field->options.end(), value) ==
                field->options.end())
            throw ContractError("assignment value '" + value + "' is not an option of field '" +
                                name + "'");
    }

    std::string encoded = encode_form(query.assignments);
    ResponsePage response;
    response.form_id = query.form_id;
    response.assignments = query.assignments;
    try {
        PageDocument doc;
        if (schema.method == FormSchema::Method::Post) {
            doc = fetcher.post(schema.action, encoded);
        } else {
            std::string url = schema.action;
            if (!encoded.empty())
                url += (url.find('?') == std::string::npos ? "?" : "&") + encoded;
            doc = fetcher.get(url);
        }
        response.url = doc.url;
        response.status = doc.status;
        response.body = std::move(doc.body);
    } catch (const FetchError& e) {
        throw SubmitError(std::string("submit failed: ") + e.what(), query.form_id, encoded);
    }
    return response;
}

} // namespace ontocrawl
