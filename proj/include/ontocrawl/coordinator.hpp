#ifndef ONTOCRAWL_COORDINATOR_HPP
#define ONTOCRAWL_COORDINATOR_HPP

#include <atomic>
#include <chrono>
#include <string>
#include <vector>

#include "ontocrawl/builder.hpp"
#include "ontocrawl/metrics.hpp"
#include "ontocrawl/result_processor.hpp"
#include "ontocrawl/store.hpp"
#include "ontocrawl/trace.hpp"

namespace ontocrawl {

// Everything one crawl needs. Exactly one of corpus_path / live must be set;
// with empty seed_urls the build phase is skipped and the store is used as
// found on disk.
struct PipelineConfig {
    std::string domain;
    std::vector<std::string> seed_urls;
    std::string query;
    int page_budget = 50;
    long query_budget_per_form = 16;
    std::chrono::milliseconds politeness_delay{0};
    std::string lexicon_path;
    std::string store_path;
    std::string corpus_path;
    bool live = false;
    ExecutionMode mode = ExecutionMode::Concurrent;
    std::size_t buffer_capacity = 16;
    ResultConfig result;
};

struct CrawlResult {
    CrawlReport report;
    std::vector<RankedResult> ranking;
    std::vector<ResponsePage> pages;   // submission order, classified
    PipelineTrace trace;
    MergeStats build_merge;            // seed build -> store
    MergeStats enrichment;             // result pages -> store
    bool partial = false;              // aborted before the batch finished
    std::vector<std::string> warnings;
};

// Process exit codes shared with the CLI.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_builder_failure = 2;
inline constexpr int exit_store_io = 3;
inline constexpr int exit_aborted = 4;

// Runs the whole chain: seed build, durable store merge, candidate fetch,
// form discovery, mapping, query generation, submission, result processing,
// enrichment, report. Stages hand work forward through bounded channels (or
// the same order inline in sequential mode); identical inputs give identical
// reports, rankings and store contents in either mode.
//
// The cancel flag, when given, aborts between work items; the result comes
// back flagged partial.
CrawlResult run_pipeline(PipelineConfig config, OntologyStore& store, Fetcher& fetcher,
                         const std::atomic<bool>* cancel = nullptr);

} // namespace ontocrawl

#endif // ONTOCRAWL_COORDINATOR_HPP
