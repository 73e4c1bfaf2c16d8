// Command-line front end: build a domain ontology from seeds, crawl hidden-web
// forms against it, and render the evaluation table.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "ontocrawl/coordinator.hpp"
#include "ontocrawl/form_miner.hpp"
#include "ontocrawl/http_fetcher.hpp"
#include "ontocrawl/simweb.hpp"

namespace fs = std::filesystem;
using namespace ontocrawl;

#ifndef ONTOCRAWL_DEFAULT_LEXICON
#define ONTOCRAWL_DEFAULT_LEXICON ""
#endif

namespace {

bool g_verbose = false;

void verbose(const std::string& msg) {
    if (g_verbose) std::clog << "[ontocrawl] " << msg << "\n";
}

std::string pick_lexicon_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("ONTOCRAWL_LEXICON"); env && *env) return env;
    std::string fallback = ONTOCRAWL_DEFAULT_LEXICON;
    if (!fallback.empty() && fs::exists(fallback)) return fallback;
    return {};
}

OntologyStore load_or_create_store(const std::string& path, const std::string& domain) {
    if (fs::exists(path)) {
        OntologyStore store = OntologyStore::load(path);
        if (!store.domain().empty() && !domain.empty() && store.domain() != domain)
            throw StoreError("store at " + path + " is for domain '" + store.domain() +
                             "', not '" + domain + "'");
        return store;
    }
    return OntologyStore(domain);
}

int run_build(const std::vector<std::string>& seeds, const std::string& domain,
              const std::string& store_path, int budget, const std::string& corpus,
              const std::string& lexicon_flag, bool sequential, long politeness_ms) {
    for (const auto& seed : seeds) {
        if (!is_absolute_url(seed)) {
            std::cerr << "error: seed is not an absolute URL: '" << seed << "'\n";
            return exit_usage;
        }
    }

    SimWeb web;
    SimFetcher sim(web);
    HttpFetcher http;
    Fetcher* fetcher = nullptr;
    if (!corpus.empty()) {
        web = SimWeb::load(corpus);
        fetcher = &sim;
    } else {
        fetcher = &http;
    }

    OntologyStore store = load_or_create_store(store_path, domain);
    if (std::string lex = pick_lexicon_path(lexicon_flag); !lex.empty()) {
        store.set_lexicon(SynonymLexicon::load(lex));
        verbose("lexicon: " + lex);
    }

    PolitenessGate gate{std::chrono::milliseconds(politeness_ms)};
    InstrumentedFetcher instrumented(*fetcher, &gate);

    BuilderOptions options;
    options.page_budget = budget;
    options.mode = sequential ? ExecutionMode::Sequential : ExecutionMode::Concurrent;

    BuildOutcome built = build_from_seeds(seeds, instrumented, domain, options);
    MergeStats stats = store.merge_graph(built.graph);
    store.save(store_path);

    std::cout << "domain " << domain << ": fetched " << built.pages_fetched << " pages, merged "
              << stats.triples_added << " new triples (" << stats.triples_duplicate
              << " duplicate, " << stats.nodes_added << " new nodes) into " << store_path
              << "\n";
    if (built.parse_warnings > 0)
        std::cerr << "warning: " << built.parse_warnings << " malformed annotation lines skipped\n";
    return exit_ok;
}

int run_crawl(const std::string& domain, const std::string& store_path, const std::string& query,
              const std::string& corpus, bool live, long query_budget,
              const std::string& report_path, const std::string& lexicon_flag, bool sequential,
              long politeness_ms) {
    if (!fs::exists(store_path))
        throw StoreError("store file does not exist: " + store_path);
    OntologyStore store = OntologyStore::load(store_path);
    if (!store.domain().empty() && store.domain() != domain)
        throw StoreError("store at " + store_path + " is for domain '" + store.domain() +
                         "', not '" + domain + "'");

    SimWeb web;
    SimFetcher sim(web);
    HttpFetcher http;
    Fetcher* fetcher = nullptr;
    if (!corpus.empty()) {
        web = SimWeb::load(corpus);
        fetcher = &sim;
    } else {
        fetcher = &http;
    }

    PipelineConfig config;
    config.domain = domain;
    config.query = query;
    config.store_path = store_path;
    config.corpus_path = corpus;
    config.live = live;
    config.query_budget_per_form = query_budget;
    config.politeness_delay = std::chrono::milliseconds(politeness_ms >= 0 ? politeness_ms
                                                        : live           ? 1000
                                                                         : 0);
    config.mode = sequential ? ExecutionMode::Sequential : ExecutionMode::Concurrent;
    config.lexicon_path = pick_lexicon_path(lexicon_flag);
    if (!config.lexicon_path.empty()) verbose("lexicon: " + config.lexicon_path);

    CrawlResult result = run_pipeline(config, store, *fetcher);

    for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";

    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::trunc);
        if (!out) throw StoreError("cannot write report file: " + report_path);
        out << "# ontocrawl crawl report\n";
        out << "# classification<TAB>useful<TAB>score<TAB>url\n";
        char score[16];
        for (const auto& page : result.pages) {
            std::snprintf(score, sizeof score, "%.4f", page.score);
            out << classification_name(page.classification) << "\t" << (page.useful ? 1 : 0)
                << "\t" << score << "\t" << page.url << "\n";
        }
        out << "# summary\n";
        out << summary_lines(result.report);
        verbose("report written to " + report_path);
    }

    std::cout << tabulate({result.report});
    return result.partial ? exit_aborted : exit_ok;
}

int run_report(const std::string& in_path) {
    CrawlReport report = parse_summary(in_path);
    std::cout << tabulate({report});
    return exit_ok;
}

int run_show_store(const std::string& store_path) {
    if (!fs::exists(store_path))
        throw StoreError("store file does not exist: " + store_path);
    OntologyStore store = OntologyStore::load(store_path);
    std::cout << "domain: " << store.domain() << "\n";
    std::cout << "triples: " << store.triple_count() << "\n";
    auto attrs = store.attributes();
    std::cout << "attributes (" << attrs.size() << "):\n";
    for (const auto& attr : attrs) {
        std::cout << "  " << attr << ":";
        for (const auto& value : store.query_values(attr)) std::cout << " " << value;
        std::cout << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ontology-driven hidden-web crawler"};
    app.require_subcommand(1);
    app.add_flag("--verbose", g_verbose, "diagnostics on stderr");

    // build-ontology
    auto* build = app.add_subcommand("build-ontology", "crawl seeds and build the domain store");
    std::vector<std::string> seeds;
    std::string domain, store_path, corpus, lexicon;
    int budget = 50;
    bool sequential = false;
    long politeness_ms = -1;
    build->add_option("--seeds", seeds, "comma-separated seed URLs")
        ->required()
        ->delimiter(',');
    build->add_option("--domain", domain, "domain label")->required();
    build->add_option("--store", store_path, "store file path")->required();
    build->add_option("--budget", budget, "page budget")->check(CLI::PositiveNumber);
    build->add_option("--corpus", corpus, "corpus manifest (simulator mode)");
    build->add_option("--lexicon", lexicon, "synonym lexicon file");
    build->add_flag("--sequential", sequential, "run stages one page at a time");
    build->add_option("--politeness-ms", politeness_ms, "delay between fetches per site");

    // crawl
    auto* crawl = app.add_subcommand("crawl", "mine forms, fire queries, enrich the store");
    std::string query, report_path;
    bool live = false;
    long query_budget = 16;
    crawl->add_option("--domain", domain, "domain label")->required();
    crawl->add_option("--store", store_path, "store file path")->required();
    crawl->add_option("--query", query, "user query (URLs and/or keywords)")->required();
    crawl->add_option("--corpus", corpus, "corpus manifest (simulator mode)");
    crawl->add_flag("--live", live, "fetch from the live web");
    crawl->add_option("--query-budget", query_budget, "max submissions per form")
        ->check(CLI::PositiveNumber);
    crawl->add_option("--report", report_path, "write per-page lines and summary here");
    crawl->add_option("--lexicon", lexicon, "synonym lexicon file");
    crawl->add_flag("--sequential", sequential, "run stages one item at a time");
    crawl->add_option("--politeness-ms", politeness_ms, "delay between fetches per site");

    // report
    auto* report = app.add_subcommand("report", "re-render the metrics table from a summary");
    std::string in_path;
    report->add_option("--in", in_path, "crawl report path")->required();

    // show-store
    auto* show = app.add_subcommand("show-store", "print a store's attributes and values");
    show->add_option("--store", store_path, "store file path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed())
            return run_build(seeds, domain, store_path, budget, corpus, lexicon, sequential,
                             politeness_ms >= 0 ? politeness_ms : (corpus.empty() ? 1000 : 0));
        if (crawl->parsed()) {
            if (corpus.empty() == !live) {
                std::cerr << "error: pass exactly one of --corpus or --live\n";
                return exit_usage;
            }
            return run_crawl(domain, store_path, query, corpus, live, query_budget, report_path,
                             lexicon, sequential, politeness_ms);
        }
        if (report->parsed()) return run_report(in_path);
        if (show->parsed()) return run_show_store(store_path);
    } catch (const BuilderError& e) {
        std::cerr << "builder error: " << e.what() << "\n";
        return exit_builder_failure;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_store_io;
    } catch (const StoreError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_store_io;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
