#ifndef ONTOCRAWL_HTTP_FETCHER_HPP
#define ONTOCRAWL_HTTP_FETCHER_HPP

#include <chrono>

#include "ontocrawl/fetcher.hpp"

namespace ontocrawl {

// Live fetcher over plain HTTP. Good enough for small polite crawls; the
// offline simulator remains the substrate for tests.
class HttpFetcher : public Fetcher {
public:
    explicit HttpFetcher(std::chrono::seconds timeout = std::chrono::seconds(10))
        : timeout_(timeout) {}

    PageDocument get(const std::string& url) override;
    PageDocument post(const std::string& url, const std::string& body) override;

private:
    std::chrono::seconds timeout_;
};

} // namespace ontocrawl

#endif // ONTOCRAWL_HTTP_FETCHER_HPP
