#ifndef ONTOCRAWL_FETCHER_HPP
#define ONTOCRAWL_FETCHER_HPP

#include <chrono>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "ontocrawl/error.hpp"
#include "ontocrawl/url.hpp"

namespace ontocrawl {

// One downloaded page. HTTP-level failures are documents too (status >= 400);
// only transport problems surface as FetchError. An empty body is legitimate
// only on error statuses.
struct PageDocument {
    std::string url;
    int status = 0;
    std::string body;

    bool ok() const { return status < 400; }
};

// The URL -> document contract shared by the live client and the simulator.
// get() must behave as an idempotent, side-effect-free GET per URL.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual PageDocument get(const std::string& url) = 0;
    // Form-encoded POST. Simulators may fold the body into the query string;
    // the page returned is still keyed by the action URL.
    virtual PageDocument post(const std::string& url, const std::string& body) = 0;
};

// Enforces a minimum delay between consecutive fetches to the same site.
class PolitenessGate {
public:
    explicit PolitenessGate(std::chrono::milliseconds delay) : delay_(delay) {}

    void wait_turn(const std::string& site) {
        if (delay_.count() <= 0) return;
        std::chrono::steady_clock::time_point wake;
        {
            std::lock_guard lock(mutex_);
            auto now = std::chrono::steady_clock::now();
            auto it = last_.find(site);
            wake = (it == last_.end()) ? now : std::max(now, it->second + delay_);
            last_[site] = wake;
        }
        std::this_thread::sleep_until(wake);
    }

private:
    std::chrono::milliseconds delay_;
    std::mutex mutex_;
    std::map<std::string, std::chrono::steady_clock::time_point> last_;
};

// Wraps a fetcher to count calls and remember which sites were touched;
// optionally applies politeness before each call.
class InstrumentedFetcher : public Fetcher {
public:
    explicit InstrumentedFetcher(Fetcher& inner, PolitenessGate* gate = nullptr)
        : inner_(inner), gate_(gate) {}

    PageDocument get(const std::string& url) override {
        before(url);
        return inner_.get(url);
    }

    PageDocument post(const std::string& url, const std::string& body) override {
        before(url);
        return inner_.post(url, body);
    }

    long calls() const {
        std::lock_guard lock(mutex_);
        return calls_;
    }

    long calls_for(const std::string& url) const {
        std::lock_guard lock(mutex_);
        auto it = per_url_.find(url);
        return it == per_url_.end() ? 0 : it->second;
    }

    std::set<std::string> sites() const {
        std::lock_guard lock(mutex_);
        return sites_;
    }

private:
    void before(const std::string& url) {
        std::string site;
        if (auto parsed = parse_url(url)) site = parsed->site();
        {
            std::lock_guard lock(mutex_);
            ++calls_;
            ++per_url_[url];
            if (!site.empty()) sites_.insert(site);
        }
        if (gate_ && !site.empty()) gate_->wait_turn(site);
    }

    Fetcher& inner_;
    PolitenessGate* gate_;
    mutable std::mutex mutex_;
    long calls_ = 0;
    std::map<std::string, long> per_url_;
    std::set<std::string> sites_;
};

} // namespace ontocrawl

#endif // ONTOCRAWL_FETCHER_HPP
