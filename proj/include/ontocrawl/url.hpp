#ifndef ONTOCRAWL_URL_HPP
#define ONTOCRAWL_URL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontocrawl {

// Minimal absolute-URL model: scheme://host[:port]/path[?query].
// Fragments are dropped on parse; userinfo is not supported.
struct Url {
    std::string scheme;
    std::string host;
    int port = -1; // -1 when the URL carries no explicit port
    std::string path = "/";
    std::string query;

    std::string str() const;
    // scheme://host[:port] — what "same site" compares.
    std::string site() const;
};

std::optional<Url> parse_url(std::string_view raw);
bool is_absolute_url(std::string_view raw);

// Resolve an href against a base document URL. Returns nothing for
// fragment-only links and non-navigable schemes (mailto:, javascript:).
std::optional<Url> resolve_href(const Url& base, std::string_view href);

bool same_site(const Url& a, const Url& b);

// Percent-encoding with %20 for spaces; unreserved characters pass through.
std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

// key=value&key=value over percent-encoded pairs, preserving order.
std::string encode_form(const std::vector<std::pair<std::string, std::string>>& pairs);
std::vector<std::pair<std::string, std::string>> parse_query(std::string_view query);

} // namespace ontocrawl

#endif // ONTOCRAWL_URL_HPP
