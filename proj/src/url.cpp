#include "ontocrawl/url.hpp"

#include <algorithm>
#include <cctype>

#include "ontocrawl/text.hpp"

namespace ontocrawl {

namespace {

bool scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

bool unreserved(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_' ||
           c == '~';
}

// RFC 3986 section 5.2.4, enough of it for relative hrefs.
std::string remove_dot_segments(std::string_view path) {
    std::vector<std::string> out;
    bool trailing_slash = !path.empty() && path.back() == '/';
    for (const auto& seg : split(path, '/')) {
        if (seg.empty() || seg == ".") continue;
        if (seg == "..") {
            if (!out.empty()) out.pop_back();
            continue;
        }
        out.push_back(seg);
    }
    std::string joined = "/";
    for (std::size_t i = 0; i < out.size(); ++i) {
        joined += out[i];
        if (i + 1 < out.size()) joined += '/';
    }
    if (trailing_slash && joined.back() != '/') joined += '/';
    return joined;
}

} // namespace

std::string Url::str() const {
    std::string out = scheme + "://" + host;
    if (port >= 0) out += ":" + std::to_string(port);
    out += path;
    if (!query.empty()) out += "?" + query;
    return out;
}

std::string Url::site() const {
    std::string out = scheme + "://" + host;
    if (port >= 0) out += ":" + std::to_string(port);
    return out;
}

std::optional<Url> parse_url(std::string_view raw) {
    std::string s = trim(raw);
    if (s.find_first_of(" \t\r\n") != std::string::npos) return std::nullopt;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    auto sep = s.find("://");
    if (sep == std::string::npos || sep == 0) return std::nullopt;
    Url u;
    u.scheme = to_lower(s.substr(0, sep));
    for (char c : u.scheme) {
        if (!scheme_char(c)) return std::nullopt;
    }
    if (!std::isalpha(static_cast<unsigned char>(u.scheme[0]))) return std::nullopt;
    std::string rest = s.substr(sep + 3);
    if (rest.empty()) return std::nullopt;
    auto path_start = rest.find_first_of("/?");
    std::string authority = path_start == std::string::npos ? rest : rest.substr(0, path_start);
    if (authority.empty() || authority.find_first_of(" \t") != std::string::npos)
        return std::nullopt;
    auto colon = authority.rfind(':');
    if (colon != std::string::npos) {
        std::string port_str = authority.substr(colon + 1);
        if (port_str.empty() ||
            !std::all_of(port_str.begin(), port_str.end(),
                         [](unsigned char c) { return std::isdigit(c); }))
            return std::nullopt;
        u.port = std::stoi(port_str);
        authority.erase(colon);
        if (authority.empty()) return std::nullopt;
    }
    u.host = to_lower(authority);
    if (path_start == std::string::npos) return u;
    std::string tail = rest.substr(path_start);
    auto qmark = tail.find('?');
    if (qmark == std::string::npos) {
        u.path = tail;
    } else {
        u.path = tail.substr(0, qmark);
        u.query = tail.substr(qmark + 1);
    }
    if (u.path.empty()) u.path = "/";
    return u;
}

bool is_absolute_url(std::string_view raw) {
    return parse_url(raw).has_value();
}

std::optional<Url> resolve_href(const Url& base, std::string_view href) {
    std::string h = trim(href);
    if (h.empty() || h[0] == '#') return std::nullopt;
    auto colon = h.find(':');
    auto slash = h.find('/');
    if (colon != std::string::npos && (slash == std::string::npos || colon < slash)) {
        std::string scheme = to_lower(h.substr(0, colon));
        if (scheme == "mailto" || scheme == "javascript" || scheme == "data" || scheme == "tel")
            return std::nullopt;
        return parse_url(h);
    }
    Url out = base;
    out.query.clear();
    auto hash = h.find('#');
    if (hash != std::string::npos) h.erase(hash);
    std::string query;
    auto qmark = h.find('?');
    if (qmark != std::string::npos) {
        query = h.substr(qmark + 1);
        h.erase(qmark);
    }
    if (h.empty()) {
        out.path = base.path; // query-only reference
    } else if (h[0] == '/') {
        out.path = remove_dot_segments(h);
    } else {
        auto dir_end = base.path.rfind('/');
        std::string dir = dir_end == std::string::npos ? "/" : base.path.substr(0, dir_end + 1);
        out.path = remove_dot_segments(dir + h);
    }
    out.query = query;
    return out;
}

bool same_site(const Url& a, const Url& b) {
    return a.scheme == b.scheme && a.host == b.host && a.port == b.port;
}

std::string percent_encode(std::string_view s) {
    static const char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (unreserved(static_cast<char>(c))) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    return out;
}

std::string percent_decode(std::string_view s) {
    auto hexval = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            int hi = hexval(s[i + 1]);
            int lo = hexval(s[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out += static_cast<char>(hi * 16 + lo);
                i += 2;
                continue;
            }
        }
        out += s[i] == '+' ? ' ' : s[i];
    }
    return out;
}

std::string encode_form(const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::string out;
    for (const auto& [k, v] : pairs) {
        if (!out.empty()) out += '&';
        out += percent_encode(k);
        out += '=';
        out += percent_encode(v);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_query(std::string_view query) {
    std::vector<std::pair<std::string, std::string>> out;
    if (query.empty()) return out;
    for (const auto& part : split(query, '&')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) {
            out.emplace_back(percent_decode(part), "");
        } else {
            out.emplace_back(percent_decode(part.substr(0, eq)),
                             percent_decode(part.substr(eq + 1)));
        }
    }
    return out;
}

} // namespace ontocrawl
