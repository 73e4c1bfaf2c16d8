#ifndef ONTOCRAWL_SIMWEB_HPP
#define ONTOCRAWL_SIMWEB_HPP

#include <map>
#include <string>
#include <vector>

#include "ontocrawl/fetcher.hpp"

namespace ontocrawl {

// Backend description for one simulated search endpoint: the field names the
// form submits, the canned records behind it, and the marker emitted when a
// query matches nothing.
struct HandlerSpec {
    std::vector<std::string> fields;
    std::string error_marker;
    int max_results = 100;
    std::vector<std::map<std::string, std::string>> records;
};

struct SimSite {
    std::string label;
    std::map<std::string, std::string> pages;      // path -> page body
    std::map<std::string, HandlerSpec> handlers;   // path -> backend
};

// Deterministic in-process stand-in for the web. Immutable after load;
// fetching the same URL always yields byte-identical documents.
class SimWeb {
public:
    static SimWeb load(const std::string& manifest_path);

    // sim:// URLs only. Unknown sites model unreachable hosts and raise
    // FetchError; unknown paths on known sites come back as 404 documents.
    PageDocument fetch(const std::string& url) const;

    const std::map<std::string, SimSite>& sites() const { return sites_; }

private:
    static HandlerSpec load_handler_spec(const std::string& path);
    std::string render_results(const SimSite& site, const HandlerSpec& spec,
                               const std::vector<std::pair<std::string, std::string>>& params) const;

    std::map<std::string, SimSite> sites_;
};

class SimFetcher : public Fetcher {
public:
    explicit SimFetcher(const SimWeb& web) : web_(web) {}

    PageDocument get(const std::string& url) override { return web_.fetch(url); }

    // The simulator answers POSTs exactly like GETs with the body folded into
    // the query string; the returned document keeps the action URL.
    PageDocument post(const std::string& url, const std::string& body) override {
        PageDocument doc = web_.fetch(url + (body.empty() ? "" : "?" + body));
        doc.url = url;
        return doc;
    }

private:
    const SimWeb& web_;
};

} // namespace ontocrawl

#endif // ONTOCRAWL_SIMWEB_HPP
