#include "ontocrawl/http_fetcher.hpp"

#include "httplib.h"

#include "ontocrawl/url.hpp"

namespace ontocrawl {

namespace {

struct Target {
    std::string host;
    int port;
    std::string path_query;
};

Target split_target(const std::string& url) {
    auto parsed = parse_url(url);
    if (!parsed) throw FetchError("malformed URL", url);
    if (parsed->scheme != "http")
        throw FetchError("unsupported scheme '" + parsed->scheme + "' (plain http only)", url);
    Target t;
    t.host = parsed->host;
    t.port = parsed->port >= 0 ? parsed->port : 80;
    t.path_query = parsed->path;
    if (!parsed->query.empty()) t.path_query += "?" + parsed->query;
    return t;
}

} // namespace

PageDocument HttpFetcher::get(const std::string& url) {
    Target t = split_target(url);
    httplib::Client client(t.host, t.port);
    client.set_connection_timeout(timeout_.count(), 0);
    client.set_read_timeout(timeout_.count(), 0);
    client.set_follow_location(true);
    auto res = client.Get(t.path_query);
    if (!res) throw FetchError("transport failure: " + httplib::to_string(res.error()), url);
    return PageDocument{url, res->status, res->body};
}

PageDocument HttpFetcher::post(const std::string& url, const std::string& body) {
    Target t = split_target(url);
    httplib::Client client(t.host, t.port);
    client.set_connection_timeout(timeout_.count(), 0);
    client.set_read_timeout(timeout_.count(), 0);
    auto res = client.Post(t.path_query, body, "application/x-www-form-urlencoded");
    if (!res) throw FetchError("transport failure: " + httplib::to_string(res.error()), url);
    return PageDocument{url, res->status, res->body};
}

} // namespace ontocrawl
