#include "ontocrawl/builder.hpp"

#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include "ontocrawl/channel.hpp"
#include "ontocrawl/html.hpp"
#include "ontocrawl/text.hpp"

namespace ontocrawl {

namespace {

// Downloader -> queue manager feedback: fetch outcome plus discovered links.
// This is frontier bookkeeping rather than a stage hand-off, so the inbox is
// unbounded; the forward chain alone carries the bounded-buffer contract.
struct PageReport {
    std::string url;
    bool ok = false;
    std::string error;
    std::vector<std::string> links;
};

class ReportInbox {
public:
    void push(PageReport report) {
        {
            std::lock_guard lock(mutex_);
            reports_.push_back(std::move(report));
        }
        ready_.notify_one();
    }

    PageReport pop() {
        std::unique_lock lock(mutex_);
        ready_.wait(lock, [&] { return !reports_.empty(); });
        PageReport report = std::move(reports_.front());
        reports_.pop_front();
        return report;
    }

    std::optional<PageReport> try_pop() {
        std::lock_guard lock(mutex_);
        if (reports_.empty()) return std::nullopt;
        PageReport report = std::move(reports_.front());
        reports_.pop_front();
        return report;
    }

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<PageReport> reports_;
};

std::vector<std::string> same_site_links(const PageDocument& doc) {
    std::vector<std::string> out;
    auto base = parse_url(doc.url);
    if (!base) return out;
    for (const auto& href : extract_hrefs(doc.body)) {
        auto resolved = resolve_href(*base, href);
        if (!resolved) continue;
        if (resolved->scheme != "http" && resolved->scheme != "https" &&
            resolved->scheme != "sim")
            continue;
        if (!same_site(*base, *resolved)) continue;
        out.push_back(resolved->str());
    }
    return out;
}

struct AnalyzedPage {
    std::string url;
    TripleScan scan;
};

} // namespace

bool Frontier::enqueue(const std::string& url) {
    auto parsed = parse_url(url);
    if (!parsed)
        throw Error("frontier rejects relative or malformed URL: '" + url + "'");
    std::string canonical = parsed->str();
    if (!seen_.insert(canonical).second) return false;
    pending_.push_back(std::move(canonical));
    return true;
}

std::optional<std::string> Frontier::dequeue() {
    if (pending_.empty()) return std::nullopt;
    std::string url = std::move(pending_.front());
    pending_.pop_front();
    return url;
}

TripleScan extract_triples(const PageDocument& page) {
    if (!page.ok())
        throw ContractError("extract_triples requires a non-error page, got status " +
                            std::to_string(page.status) + " for " + page.url);
    TripleScan scan;
    AnnotationScan blocks = scan_annotations(page.body);
    scan.malformed_lines = blocks.malformed_lines;
    for (const auto& block : blocks.blocks) {
        for (const auto& line : block.lines) {
            try {
                scan.triples.push_back(Triple::make(line[0], line[1], line[2]));
            } catch (const StoreError&) {
                ++scan.malformed_lines;
            }
        }
    }
    return scan;
}

OntologyGraph graph_from_triples(const std::vector<Triple>& triples,
                                 const std::string& domain_label) {
    OntologyGraph graph;
    graph.domain = domain_label;

    std::set<std::string> value_subjects;
    for (const auto& t : triples) {
        if (relation_from_name(t.predicate) == RelationKind::HasValue)
            value_subjects.insert(normalize_term(t.subject));
    }
    for (const auto& t : triples) {
        std::string subject = normalize_term(t.subject);
        std::string object = normalize_term(t.object);
        if (subject.empty() || object.empty()) continue;
        RelationKind kind;
        if (auto named = relation_from_name(t.predicate)) {
            kind = *named;
        } else {
            kind = value_subjects.count(object) ? RelationKind::HasAttribute
                                                : RelationKind::HasValue;
        }
        graph.add_edge(subject, kind, object);
    }
    return graph;
}

BuildOutcome build_from_seeds(const std::vector<std::string>& seeds, Fetcher& fetcher,
                              const std::string& domain_label, const BuilderOptions& options,
                              PipelineTrace* trace) {
    if (seeds.empty()) throw ContractError("build_from_seeds requires at least one seed");
    if (options.page_budget < 1) throw ContractError("page budget must be >= 1");

    auto record = [&](Stage stage, const std::string& item, std::string detail) {
        if (trace) trace->record(stage, item, std::move(detail));
    };

    Frontier frontier;
    std::set<std::string> seed_urls; // canonical forms
    std::vector<std::string> seed_failures;
    for (const auto& seed : seeds) {
        try {
            auto parsed = parse_url(seed);
            if (!parsed) throw Error("malformed seed URL: '" + seed + "'");
            seed_urls.insert(parsed->str());
            frontier.enqueue(seed);
        } catch (const Error& e) {
            seed_failures.push_back(e.what());
        }
    }

    BuildOutcome outcome;
    std::vector<Triple> collected;
    int seed_successes = 0;

    auto note_fetch = [&](const std::string& url, const PageDocument* doc,
                          const std::string& error) {
        if (doc && doc->ok()) {
            if (seed_urls.count(url)) ++seed_successes;
            return;
        }
        if (!seed_urls.count(url)) return;
        seed_failures.push_back(doc ? url + ": status " + std::to_string(doc->status)
                                    : url + ": " + error);
    };

    if (options.mode == ExecutionMode::Sequential) {
        int emitted = 0;
        while (emitted < options.page_budget) {
            auto url = frontier.dequeue();
            if (!url) break;
            record(Stage::BuilderManager, *url, "emit");
            ++emitted;
            outcome.fetched_urls.push_back(*url);
            PageDocument doc;
            try {
                doc = fetcher.get(*url);
            } catch (const FetchError& e) {
                record(Stage::BuilderDownload, *url, std::string("fetch-error: ") + e.what());
                note_fetch(*url, nullptr, e.what());
                continue;
            }
            record(Stage::BuilderDownload, *url, "status " + std::to_string(doc.status));
            note_fetch(*url, &doc, {});
            if (!doc.ok()) continue;
            for (const auto& link : same_site_links(doc)) frontier.enqueue(link);
            TripleScan scan = extract_triples(doc);
            record(Stage::BuilderAnalyze, *url,
                   "triples " + std::to_string(scan.triples.size()));
            outcome.parse_warnings += scan.malformed_lines;
            collected.insert(collected.end(), scan.triples.begin(), scan.triples.end());
        }
        outcome.pages_fetched = emitted;
    } else {
        BoundedChannel<std::string> download_chan(ChannelId::PageDownload,
                                                  options.buffer_capacity);
        BoundedChannel<PageDocument> analysis_chan(ChannelId::PageAnalysis,
                                                   options.buffer_capacity);
        BoundedChannel<AnalyzedPage> store_chan(ChannelId::StoreWrite, options.buffer_capacity);
        ReportInbox inbox;

        std::mutex state_mutex; // guards note_fetch bookkeeping across stages
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto capture = [&](std::exception_ptr e) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = e;
        };

        std::thread downloader([&] {
            try {
                while (auto url = download_chan.pop()) {
                    PageReport report;
                    report.url = *url;
                    try {
                        PageDocument doc = fetcher.get(*url);
                        report.ok = doc.ok();
                        record(Stage::BuilderDownload, *url,
                               "status " + std::to_string(doc.status));
                        {
                            std::lock_guard lock(state_mutex);
                            note_fetch(*url, &doc, {});
                        }
                        if (doc.ok()) {
                            report.links = same_site_links(doc);
                            inbox.push(report);
                            analysis_chan.push(std::move(doc));
                            continue;
                        }
                    } catch (const FetchError& e) {
                        record(Stage::BuilderDownload, *url,
                               std::string("fetch-error: ") + e.what());
                        std::lock_guard lock(state_mutex);
                        note_fetch(*url, nullptr, e.what());
                    }
                    inbox.push(report);
                }
            } catch (...) {
                capture(std::current_exception());
            }
            analysis_chan.close();
        });

        std::thread analyzer([&] {
            try {
                while (auto doc = analysis_chan.pop()) {
                    TripleScan scan = extract_triples(*doc);
                    record(Stage::BuilderAnalyze, doc->url,
                           "triples " + std::to_string(scan.triples.size()));
                    store_chan.push(AnalyzedPage{doc->url, std::move(scan)});
                }
            } catch (...) {
                capture(std::current_exception());
            }
            store_chan.close();
        });

        std::thread merger([&] {
            try {
                while (auto page = store_chan.pop()) {
                    outcome.parse_warnings += page->scan.malformed_lines;
                    collected.insert(collected.end(), page->scan.triples.begin(),
                                     page->scan.triples.end());
                }
            } catch (...) {
                capture(std::current_exception());
            }
        });

        int emitted = 0;
        int completed = 0;
        auto handle = [&](PageReport report) {
            ++completed;
            for (const auto& link : report.links) frontier.enqueue(link);
        };
        while (emitted < options.page_budget) {
            while (auto report = inbox.try_pop()) handle(std::move(*report));
            if (auto url = frontier.dequeue()) {
                record(Stage::BuilderManager, *url, "emit");
                outcome.fetched_urls.push_back(*url);
                if (!download_chan.push(*url)) break;
                ++emitted;
                continue;
            }
            if (completed == emitted) break;
            handle(inbox.pop());
        }
        download_chan.close();
        downloader.join();
        analyzer.join();
        merger.join();
        if (failure) std::rethrow_exception(failure);
        outcome.pages_fetched = emitted;
    }

    if (seed_successes == 0) {
        if (seed_failures.empty())
            seed_failures.push_back("no seed page could be fetched");
        std::string summary = "all seeds failed:";
        for (const auto& f : seed_failures) summary += "\n  " + f;
        throw BuilderError(summary, seed_failures);
    }

    outcome.graph = graph_from_triples(collected, domain_label);
    return outcome;
}

} // namespace ontocrawl
