#include "ontocrawl/coordinator.hpp"

#include <exception>
#include <mutex>
#include <thread>

#include "ontocrawl/channel.hpp"
#include "ontocrawl/form_miner.hpp"
#include "ontocrawl/text.hpp"

namespace ontocrawl {

namespace {

struct MappedForm {
    FormSchema schema;
    MappingResult mapping;
};

// Per-stage counters; each field is written by exactly one stage and read
// after the stages are joined.
struct MinerCounters {
    long candidate_pages = 0;
    long forms_found = 0;
    long forms_skipped_no_fillable = 0;
    long forms_skipped_required = 0;
    long queries_generated = 0;
};

void validate_config(const PipelineConfig& config) {
    if (config.domain.empty()) throw ContractError("pipeline config needs a domain label");
    if (trim(config.query).empty()) throw ContractError("pipeline config needs a user query");
    if (config.page_budget < 1) throw ContractError("page budget must be >= 1");
    if (config.query_budget_per_form < 1) throw ContractError("query budget must be >= 1");
    if (config.corpus_path.empty() == !config.live)
        throw ContractError("exactly one of corpus path / live mode must be set");
}

} // namespace

CrawlResult run_pipeline(PipelineConfig config, OntologyStore& store, Fetcher& fetcher,
                         const std::atomic<bool>* cancel) {
    validate_config(config);

    CrawlResult result;
    PipelineTrace& trace = result.trace;
    auto cancelled = [cancel] { return cancel && cancel->load(); };

    if (!config.lexicon_path.empty()) store.set_lexicon(SynonymLexicon::load(config.lexicon_path));

    PolitenessGate gate(config.politeness_delay);
    InstrumentedFetcher web(fetcher, &gate);

    // Phase 1+2: seed build, then a durable store merge before any mining.
    if (!config.seed_urls.empty() && !cancelled()) {
        BuilderOptions options;
        options.page_budget = config.page_budget;
        options.mode = config.mode;
        options.buffer_capacity = config.buffer_capacity;
        BuildOutcome built = build_from_seeds(config.seed_urls, web, config.domain, options, &trace);
        result.build_merge = store.merge_graph(built.graph);
        trace.record(Stage::StoreMerge, config.domain,
                     "added " + std::to_string(result.build_merge.triples_added) + ", duplicate " +
                         std::to_string(result.build_merge.triples_duplicate));
        if (!config.store_path.empty()) store.save(config.store_path);
    }

    // Phase 3: the user query becomes candidate page URLs. Keyword sub-queries
    // have nothing to resolve against without a page index, so only URL-shaped
    // sub-queries are fetched.
    std::vector<std::string> candidates;
    {
        std::set<std::string> seen;
        for (const auto& sub : expand_query(config.query)) {
            auto parsed = parse_url(sub);
            if (!parsed) {
                result.warnings.push_back("sub-query '" + sub + "' is not a URL; skipped");
                continue;
            }
            if (seen.insert(parsed->str()).second) candidates.push_back(parsed->str());
        }
        if (candidates.empty())
            result.warnings.push_back("query produced no candidate URLs; nothing to mine");
    }

    MinerCounters counters;
    std::vector<ResponsePage> pages;
    bool aborted = false;

    // Stage bodies shared by both execution modes.
    auto fetch_candidate = [&](const std::string& url) -> std::optional<PageDocument> {
        PageDocument doc;
        try {
            doc = web.get(url);
        } catch (const FetchError& e) {
            trace.record(Stage::CandidateFetch, url, std::string("fetch-error: ") + e.what());
            return std::nullopt;
        }
        trace.record(Stage::CandidateFetch, url, "status " + std::to_string(doc.status));
        if (!doc.ok()) return std::nullopt;
        ++counters.candidate_pages;
        if (!contains_ci(doc.body, "<form")) return std::nullopt; // miner wants form pages only
        return doc;
    };

    auto discover_stage = [&](const PageDocument& doc) -> std::vector<FormSchema> {
        FormDiscovery discovery = discover_forms(doc);
        counters.forms_found += static_cast<long>(discovery.forms.size());
        counters.forms_skipped_no_fillable += discovery.skipped_no_fillable;
        for (const auto& schema : discovery.forms) {
            trace.record(Stage::FormDiscovery, schema.form_id,
                         doc.url + " fields " + std::to_string(schema.fields.size()));
        }
        return discovery.forms;
    };

    auto map_stage = [&](const FormSchema& schema) -> MappedForm {
        MappingResult mapping = map_form(schema, store);
        trace.record(Stage::Mapping, schema.form_id,
                     "bound " + std::to_string(mapping.bindings.size()) + ", unmapped " +
                         std::to_string(mapping.unmapped.size()));
        return MappedForm{schema, std::move(mapping)};
    };

    auto generate_stage = [&](const MappedForm& item) -> std::vector<QueryInstance> {
        QueryGeneration generation =
            generate_queries(item.mapping, item.schema, config.query_budget_per_form);
        if (generation.skipped_required_unmapped) {
            ++counters.forms_skipped_required;
            trace.record(Stage::QueryGeneration, item.schema.form_id,
                         "skipped: required field unmapped");
            return {};
        }
        counters.queries_generated += static_cast<long>(generation.queries.size());
        trace.record(Stage::QueryGeneration, item.schema.form_id,
                     "queries " + std::to_string(generation.queries.size()));
        return std::move(generation.queries);
    };

    auto submit_stage = [&](const FormSchema& schema,
                            const QueryInstance& query) -> std::optional<ResponsePage> {
        try {
            ResponsePage page = submit_query(query, schema, web);
            trace.record(Stage::Submission, schema.form_id,
                         encode_form(query.assignments) + " -> status " +
                             std::to_string(page.status));
            return page;
        } catch (const SubmitError& e) {
            result.warnings.push_back(e.what());
            return std::nullopt;
        }
    };

    if (config.mode == ExecutionMode::Sequential) {
        // Same stage order, one work item at a time; the hand-off buffers
        // degenerate to size one.
        for (const auto& url : candidates) {
            if (cancelled()) { aborted = true; break; }
            auto doc = fetch_candidate(url);
            if (!doc) continue;
            for (const auto& schema : discover_stage(*doc)) {
                if (cancelled()) { aborted = true; break; }
                MappedForm mapped = map_stage(schema);
                for (const auto& query : generate_stage(mapped)) {
                    if (cancelled()) { aborted = true; break; }
                    if (auto page = submit_stage(mapped.schema, query)) pages.push_back(std::move(*page));
                }
                if (aborted) break;
            }
            if (aborted) break;
        }
    } else {
        BoundedChannel<std::string> fetch_chan(ChannelId::CandidateFetch, config.buffer_capacity);
        BoundedChannel<PageDocument> analysis_chan(ChannelId::FormAnalysis, config.buffer_capacity);
        BoundedChannel<FormSchema> mapping_chan(ChannelId::FormMapping, config.buffer_capacity);
        BoundedChannel<MappedForm> generation_chan(ChannelId::QueryGeneration,
                                                   config.buffer_capacity);
        BoundedChannel<ResponsePage> result_chan(ChannelId::ResultProcessing,
                                                 config.buffer_capacity);

        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto capture = [&](std::exception_ptr e) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = e;
        };
        std::atomic<bool> push_failed{false};

        std::thread form_downloader([&] {
            try {
                while (auto url = fetch_chan.pop()) {
                    if (cancelled()) { fetch_chan.close(); break; }
                    if (auto doc = fetch_candidate(*url)) {
                        if (!analysis_chan.push(std::move(*doc))) { push_failed = true; break; }
                    }
                }
            } catch (...) {
                capture(std::current_exception());
            }
            analysis_chan.close();
        });

        std::thread form_analyzer([&] {
            try {
                while (auto doc = analysis_chan.pop()) {
                    if (cancelled()) { analysis_chan.close(); break; }
                    bool ok = true;
                    for (auto& schema : discover_stage(*doc)) {
                        if (!mapping_chan.push(std::move(schema))) { push_failed = true; ok = false; break; }
                    }
                    if (!ok) break;
                }
            } catch (...) {
                capture(std::current_exception());
            }
            mapping_chan.close();
        });

        std::thread mapper([&] {
            try {
                while (auto schema = mapping_chan.pop()) {
                    if (cancelled()) { mapping_chan.close(); break; }
                    if (!generation_chan.push(map_stage(*schema))) { push_failed = true; break; }
                }
            } catch (...) {
                capture(std::current_exception());
            }
            generation_chan.close();
        });

        std::thread submitter([&] {
            try {
                while (auto mapped = generation_chan.pop()) {
                    if (cancelled()) { generation_chan.close(); break; }
                    bool ok = true;
                    for (const auto& query : generate_stage(*mapped)) {
                        if (cancelled()) { generation_chan.close(); ok = false; break; }
                        if (auto page = submit_stage(mapped->schema, query)) {
                            if (!result_chan.push(std::move(*page))) { push_failed = true; ok = false; break; }
                        }
                    }
                    if (!ok) break;
                }
            } catch (...) {
                capture(std::current_exception());
            }
            result_chan.close();
        });

        std::thread collector([&] {
            try {
                while (auto page = result_chan.pop()) pages.push_back(std::move(*page));
            } catch (...) {
                capture(std::current_exception());
            }
        });

        for (const auto& url : candidates) {
            if (cancelled()) break;
            if (!fetch_chan.push(url)) break;
        }
        fetch_chan.close();

        form_downloader.join();
        form_analyzer.join();
        mapper.join();
        submitter.join();
        collector.join();
        if (failure) std::rethrow_exception(failure);
        aborted = cancelled() || push_failed.load();
    }

    // Phase 8: verdicts, ranking, enrichment.
    ProcessOutcome outcome = process_results(pages, store, config.result);
    for (const auto& page : pages) {
        trace.record(Stage::ResultProcessing, page.form_id,
                     std::string(classification_name(page.classification)) +
                         (page.useful ? ", useful" : ""));
    }
    result.enrichment = outcome.enrichment;
    result.ranking = std::move(outcome.ranking);

    long forms_encountered = counters.forms_found + counters.forms_skipped_no_fillable;
    if (forms_encountered == 0 && !aborted)
        result.warnings.push_back("no forms discovered for query '" + config.query + "'");

    result.report.domain = config.domain;
    result.report.sites_visited = static_cast<long>(web.sites().size());
    result.report.forms_encountered = forms_encountered;
    result.report.pages_downloaded = static_cast<long>(pages.size());
    result.report.correct_pages = outcome.correct;
    result.report.useful_pages = outcome.useful;
    result.partial = aborted;
    result.pages = std::move(pages);

    if (!config.store_path.empty()) store.save(config.store_path);
    return result;
}

} // namespace ontocrawl
