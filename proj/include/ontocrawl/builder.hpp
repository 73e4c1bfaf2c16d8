#ifndef ONTOCRAWL_BUILDER_HPP
#define ONTOCRAWL_BUILDER_HPP

#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ontocrawl/fetcher.hpp"
#include "ontocrawl/store.hpp"
#include "ontocrawl/trace.hpp"

namespace ontocrawl {

// FIFO download queue that never admits a URL twice. URLs are canonicalized
// on entry; relative or malformed URLs are rejected with an Error.
class Frontier {
public:
    // True when the URL was new and is now pending; false when already seen.
    bool enqueue(const std::string& url);
    std::optional<std::string> dequeue();

    bool empty() const { return pending_.empty(); }
    std::size_t seen_count() const { return seen_.size(); }

private:
    std::deque<std::string> pending_;
    std::set<std::string> seen_;
};

struct TripleScan {
    std::vector<Triple> triples; // document order
    int malformed_lines = 0;
};

// Pulls every annotation block out of a fetched page. Requires a non-error
// document; malformed lines are skipped and tallied, never fatal.
TripleScan extract_triples(const PageDocument& page);

// Assembles the typed graph from raw triples: terms are normalized, the six
// relation names map directly, and free-form predicates resolve in a second
// pass (attribute-shaped when the object carries values somewhere in the
// batch, value-shaped otherwise).
OntologyGraph graph_from_triples(const std::vector<Triple>& triples,
                                 const std::string& domain_label);

enum class ExecutionMode { Sequential, Concurrent };

struct BuilderOptions {
    int page_budget = 50;
    ExecutionMode mode = ExecutionMode::Sequential;
    std::size_t buffer_capacity = 16;
};

struct BuildOutcome {
    OntologyGraph graph;
    int pages_fetched = 0;
    int parse_warnings = 0;
    std::vector<std::string> fetched_urls; // emission order
};

// Breadth-first crawl from the seeds, following same-site links until the
// frontier drains or the page budget is spent, then one graph from everything
// extracted. Concurrent mode runs the manager -> downloader -> analyzer chain
// on bounded channels; sequential mode walks the same stage order one page at
// a time. Both produce identical graphs for a deterministic fetcher.
//
// Throws BuilderError when every seed fails (transport error or status >= 400).
BuildOutcome build_from_seeds(const std::vector<std::string>& seeds, Fetcher& fetcher,
                              const std::string& domain_label, const BuilderOptions& options,
                              PipelineTrace* trace = nullptr);

} // namespace ontocrawl

#endif // ONTOCRAWL_BUILDER_HPP
