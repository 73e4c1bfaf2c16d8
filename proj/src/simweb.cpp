#include "ontocrawl/simweb.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ontocrawl/text.hpp"

namespace fs = std::filesystem;

namespace ontocrawl {

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

HandlerSpec SimWeb::load_handler_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open handler spec: " + path);
    HandlerSpec spec;
    std::string line;
    std::size_t line_no = 0;
    bool saw_fields = false;
    bool saw_marker = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (stripped.rfind("fields:", 0) == 0) {
            for (const auto& f : split(stripped.substr(7), ',')) {
                std::string name = trim(f);
                if (!name.empty()) spec.fields.push_back(name);
            }
            if (spec.fields.empty())
                throw ParseError(path + ": empty fields list", line_no);
            saw_fields = true;
            continue;
        }
        if (stripped.rfind("marker:", 0) == 0) {
            spec.error_marker = trim(stripped.substr(7));
            if (spec.error_marker.empty())
                throw ParseError(path + ": empty marker", line_no);
            saw_marker = true;
            continue;
        }
        if (stripped.rfind("max:", 0) == 0) {
            try {
                spec.max_results = std::stoi(trim(stripped.substr(4)));
            } catch (const std::exception&) {
                spec.max_results = 0;
            }
            if (spec.max_results < 1)
                throw ParseError(path + ": max must be a positive integer", line_no);
            continue;
        }
        if (!saw_fields)
            throw ParseError(path + ": record before fields line", line_no);
        std::map<std::string, std::string> record;
        for (const auto& pair : split(stripped, ';')) {
            std::string p = trim(pair);
            if (p.empty()) continue;
            auto eq = p.find('=');
            if (eq == std::string::npos)
                throw ParseError(path + ": record entry without '='", line_no);
            std::string key = trim(p.substr(0, eq));
            std::string value = trim(p.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ParseError(path + ": empty record key or value", line_no);
            if (std::find(spec.fields.begin(), spec.fields.end(), key) == spec.fields.end())
                throw ParseError(path + ": record key '" + key + "' not in fields list", line_no);
            if (!record.emplace(key, value).second)
                throw ParseError(path + ": duplicate record key '" + key + "'", line_no);
        }
        if (!record.empty()) spec.records.push_back(std::move(record));
    }
    if (!saw_fields) throw ParseError(path + ": missing fields line");
    if (!saw_marker) throw ParseError(path + ": missing marker line");
    return spec;
}

SimWeb SimWeb::load(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw ParseError("cannot open corpus manifest: " + manifest_path);
    fs::path base = fs::path(manifest_path).parent_path();

    SimWeb web;
    SimSite* current = nullptr;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto words = split_ws(stripped);
        if (words[0] == "site") {
            if (words.size() != 2)
                throw ParseError(manifest_path + ": site needs exactly one label", line_no);
            if (web.sites_.count(words[1]))
                throw ParseError(manifest_path + ": duplicate site '" + words[1] + "'", line_no);
            current = &web.sites_[words[1]];
            current->label = words[1];
            continue;
        }
        if (words[0] == "page" || words[0] == "handler") {
            if (!current)
                throw ParseError(manifest_path + ": '" + words[0] + "' before any site", line_no);
            if (words.size() != 3)
                throw ParseError(manifest_path + ": '" + words[0] + "' needs <path> <file>",
                                 line_no);
            const std::string& path = words[1];
            if (path.empty() || path[0] != '/')
                throw ParseError(manifest_path + ": path must start with '/'", line_no);
            if (current->pages.count(path) || current->handlers.count(path))
                throw ParseError(manifest_path + ": duplicate path '" + path + "' in site '" +
                                     current->label + "'",
                                 line_no);
            fs::path file = base / words[2];
            if (words[0] == "page") {
                std::string body = read_file(file);
                if (body.empty())
                    throw ParseError(manifest_path + ": empty page file " + file.string(),
                                     line_no);
                current->pages[path] = std::move(body);
            } else {
                current->handlers[path] = load_handler_spec(file.string());
            }
            continue;
        }
        throw ParseError(manifest_path + ": unknown directive '" + words[0] + "'", line_no);
    }
    if (web.sites_.empty()) throw ParseError(manifest_path + ": no sites defined");
    return web;
}

std::string SimWeb::render_results(
    const SimSite& site, const HandlerSpec& spec,
    const std::vector<std::pair<std::string, std::string>>& params) const {
    // A record matches when every non-empty query parameter naming one of the
    // handler's fields equals the record's value for it. Foreign keys are
    // ignored, as a real backend would ignore unknown parameters.
    std::vector<const std::map<std::string, std::string>*> matches;
    for (const auto& record : spec.records) {
        bool ok = true;
        for (const auto& [key, value] : params) {
            if (value.empty()) continue;
            if (std::find(spec.fields.begin(), spec.fields.end(), key) == spec.fields.end())
                continue;
            auto it = record.find(key);
            if (it == record.end() || it->second != value) {
                ok = false;
                break;
            }
        }
        if (ok) matches.push_back(&record);
        if (static_cast<int>(matches.size()) >= spec.max_results) break;
    }

    std::ostringstream out;
    out << "<html><head><title>" << site.label << " results</title></head>\n<body>\n";
    out << "<h1>search results</h1>\n";
    if (matches.empty()) {
        out << "<p>" << spec.error_marker << "</p>\n";
    } else {
        out << "<ul>\n";
        for (const auto* record : matches) {
            out << "<li class=\"record\">";
            bool first = true;
            for (const auto& field : spec.fields) {
                auto it = record->find(field);
                if (it == record->end()) continue;
                if (!first) out << "; ";
                out << field << ": " << it->second;
                first = false;
            }
            out << "</li>\n";
            out << "<script type=\"text/x-triples\">\n";
            for (const auto& field : spec.fields) {
                auto it = record->find(field);
                if (it == record->end()) continue;
                out << field << "|has-value|" << it->second << "\n";
            }
            out << "</script>\n";
        }
        out << "</ul>\n";
    }
    out << "</body></html>\n";
    return out.str();
}

PageDocument SimWeb::fetch(const std::string& url) const {
    auto parsed = parse_url(url);
    if (!parsed || parsed->scheme != "sim")
        throw ContractError("simulator fetch requires a sim:// URL, got: " + url);
    auto site_it = sites_.find(parsed->host);
    if (site_it == sites_.end())
        throw FetchError("unreachable simulated host", url);
    const SimSite& site = site_it->second;

    if (auto handler_it = site.handlers.find(parsed->path); handler_it != site.handlers.end()) {
        auto params = parse_query(parsed->query);
        return PageDocument{url, 200, render_results(site, handler_it->second, params)};
    }
    if (auto page_it = site.pages.find(parsed->path); page_it != site.pages.end())
        return PageDocument{url, 200, page_it->second};
    return PageDocument{url, 404, ""};
}

} // namespace ontocrawl
