#include "ontocrawl/result_processor.hpp"

#include <algorithm>
#include <cctype>

#include "ontocrawl/builder.hpp"
#include "ontocrawl/html.hpp"
#include "ontocrawl/text.hpp"

namespace ontocrawl {

const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Unclassified: return "unclassified";
        case Classification::Error: return "error";
        case Classification::Correct: return "correct";
    }
    return "?";
}

Classification classify_response(const ResponsePage& page, const ResultConfig& config) {
    if (page.status >= 400) return Classification::Error;
    for (const auto& marker : config.error_markers) {
        if (!marker.empty() && contains_ci(page.body, marker)) return Classification::Error;
    }
    // Pages that annotate their records expose the record count directly; an
    // annotated page with zero records is a miss. Pages without annotations
    // are judged by status and markers alone.
    AnnotationScan scan = scan_annotations(page.body);
    if (!scan.blocks.empty()) {
        bool any_record = std::any_of(scan.blocks.begin(), scan.blocks.end(),
                                      [](const AnnotationBlock& b) { return !b.lines.empty(); });
        if (!any_record) return Classification::Error;
    }
    return Classification::Correct;
}

int value_overlap(const std::string& body, const std::set<std::string>& store_values) {
    // Fold separators the same way terms are normalized so multi-word values
    // match across hyphens/underscores; no stemming here.
    std::string folded;
    folded.reserve(body.size());
    bool pending_space = false;
    for (char c : body) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '_' || c == '-') {
            pending_space = !folded.empty();
            continue;
        }
        if (pending_space) {
            folded += ' ';
            pending_space = false;
        }
        folded += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    int overlap = 0;
    for (const auto& value : store_values) {
        if (!value.empty() && folded.find(value) != std::string::npos) ++overlap;
    }
    return overlap;
}

bool assess_useful(const ResponsePage& page, const OntologyStore& store,
                   const ResultConfig& config) {
    if (page.classification != Classification::Correct)
        throw ContractError("assess_useful requires a Correct page, got " +
                            std::string(classification_name(page.classification)) + " for " +
                            page.url);
    return value_overlap(page.body, store.all_values()) >= config.min_overlap;
}

std::vector<RankedResult> rank_pages(const std::vector<const ResponsePage*>& pages,
                                     const OntologyStore& store) {
    std::set<std::string> values = store.all_values();
    struct Row {
        RankedResult result;
        std::string tiebreak;
    };
    std::vector<Row> rows;
    rows.reserve(pages.size());
    for (const ResponsePage* page : pages) {
        if (!page) continue;
        if (page->classification != Classification::Correct)
            throw ContractError("rank_pages requires Correct pages only");
        int overlap = value_overlap(page->body, values);
        RankedResult r;
        r.url = page->url;
        r.overlap = overlap;
        r.score = static_cast<double>(overlap) / (overlap + 1);
        rows.push_back(Row{std::move(r), encode_form(page->assignments)});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.result.score != b.result.score) return a.result.score > b.result.score;
        if (a.result.url != b.result.url) return a.result.url < b.result.url;
        return a.tiebreak < b.tiebreak;
    });
    std::vector<RankedResult> out;
    out.reserve(rows.size());
    for (auto& row : rows) out.push_back(std::move(row.result));
    return out;
}

OntologyGraph extract_new_triples(const ResponsePage& page, const std::string& domain_label) {
    if (page.classification != Classification::Correct)
        throw ContractError("extract_new_triples requires a Correct page");
    PageDocument doc{page.url, page.status, page.body};
    TripleScan scan = extract_triples(doc);
    return graph_from_triples(scan.triples, domain_label);
}

ProcessOutcome process_results(std::vector<ResponsePage>& pages, OntologyStore& store,
                               const ResultConfig& config) {
    ProcessOutcome outcome;

    // Verdicts first, against the store as it stands; enrichment lands after
    // so a page's usefulness never depends on its neighbors in the batch.
    std::set<std::string> values = store.all_values();
    for (auto& page : pages) {
        page.classification = classify_response(page, config);
        if (page.classification == Classification::Correct) {
            ++outcome.correct;
            page.overlap = value_overlap(page.body, values);
            page.score = static_cast<double>(page.overlap) / (page.overlap + 1);
            page.useful = page.overlap >= config.min_overlap;
            if (page.useful) ++outcome.useful;
        } else {
            ++outcome.error;
            page.useful = false;
            page.overlap = 0;
            page.score = 0.0;
        }
    }

    std::vector<const ResponsePage*> correct;
    for (const auto& page : pages) {
        if (page.classification == Classification::Correct) correct.push_back(&page);
    }
    outcome.ranking = rank_pages(correct, store);

    for (const auto& page : pages) {
        if (page.classification != Classification::Correct) continue;
        OntologyGraph graph = extract_new_triples(page, store.domain());
        if (graph.edges.empty()) continue;
        MergeStats stats = store.merge_graph(graph);
        outcome.enrichment.triples_added += stats.triples_added;
        outcome.enrichment.triples_duplicate += stats.triples_duplicate;
        outcome.enrichment.nodes_added += stats.nodes_added;
    }
    return outcome;
}

} // namespace ontocrawl
