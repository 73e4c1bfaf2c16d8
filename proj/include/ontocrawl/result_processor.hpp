#ifndef ONTOCRAWL_RESULT_PROCESSOR_HPP
#define ONTOCRAWL_RESULT_PROCESSOR_HPP

#include <string>
#include <utility>
#include <vector>

#include "ontocrawl/store.hpp"

namespace ontocrawl {

enum class Classification { Unclassified, Error, Correct };

const char* classification_name(Classification c);

// One response to a submitted form query, with its verdicts.
struct ResponsePage {
    std::string url;
    int status = 0;
    std::string body;
    Classification classification = Classification::Unclassified;
    bool useful = false; // may be true only on Correct pages
    int overlap = 0;     // distinct store values found in the body (Correct pages)
    double score = 0.0;  // overlap / (overlap + 1); 0 on Error pages
    std::string form_id;
    std::vector<std::pair<std::string, std::string>> assignments;
};

struct RankedResult {
    std::string url;
    double score = 0.0;  // overlap / (overlap + 1)
    int overlap = 0;     // distinct store values present in the body
};

// Knobs for response classification.
struct ResultConfig {
    std::vector<std::string> error_markers = {"no results found", "no matches", "error"};
    int min_overlap = 2; // distinct store values a page must show to count as useful
};

// Error when the status is an error, the body carries a marker, or the body
// has annotation blocks but renders zero records; otherwise Correct. Pages
// without annotation blocks fall back to the status/marker rules alone.
Classification classify_response(const ResponsePage& page, const ResultConfig& config = {});

// Number of distinct store values appearing in the body (after separator
// folding); the overlap that both usefulness and ranking run on.
int value_overlap(const std::string& body, const std::set<std::string>& store_values);

// Requires a Correct page; true when the overlap reaches config.min_overlap.
bool assess_useful(const ResponsePage& page, const OntologyStore& store,
                   const ResultConfig& config = {});

// Correct pages sorted by overlap score, descending; ties break on URL, then
// on the submitted assignments.
std::vector<RankedResult> rank_pages(const std::vector<const ResponsePage*>& pages,
                                     const OntologyStore& store);

// Requires a Correct page; parses its annotation blocks into a graph.
OntologyGraph extract_new_triples(const ResponsePage& page, const std::string& domain_label);

struct ProcessOutcome {
    std::vector<RankedResult> ranking;
    MergeStats enrichment;
    long correct = 0;
    long error = 0;
    long useful = 0;
};

// Classifies every page, assesses usefulness, ranks the Correct ones, then
// merges every extracted graph into the store. Re-processing the same pages
// adds nothing.
ProcessOutcome process_results(std::vector<ResponsePage>& pages, OntologyStore& store,
                               const ResultConfig& config = {});

} // namespace ontocrawl

#endif // ONTOCRAWL_RESULT_PROCESSOR_HPP
