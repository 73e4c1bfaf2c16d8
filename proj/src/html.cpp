#include "ontocrawl/html.hpp"

#include <cctype>

#include "ontocrawl/text.hpp"

namespace ontocrawl {

namespace {

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':';
}

} // namespace

const std::string* HtmlToken::attr(std::string_view name) const {
    for (const auto& [k, v] : attrs) {
        if (k == name) return &v;
    }
    return nullptr;
}

bool HtmlToken::has_attr(std::string_view name) const {
    return attr(name) != nullptr;
}

std::string decode_entities(std::string_view s) {
    if (s.find('&') == std::string_view::npos) return std::string(s);
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out += s[i];
            continue;
        }
        auto end = s.find(';', i);
        if (end == std::string_view::npos || end - i > 8) {
            out += '&';
            continue;
        }
        std::string_view name = s.substr(i + 1, end - i - 1);
        if (name == "amp") out += '&';
        else if (name == "lt") out += '<';
        else if (name == "gt") out += '>';
        else if (name == "quot") out += '"';
        else if (name == "apos" || name == "#39") out += '\'';
        else if (name == "nbsp") out += ' ';
        else {
            out += '&';
            continue;
        }
        i = end;
    }
    return out;
}

bool HtmlScanner::next(HtmlToken& out) {
    out.text.clear();
    out.attrs.clear();
    out.self_closing = false;

    if (pos_ >= html_.size()) return false;

    // Inside <script>/<style>: everything up to the matching close tag is one
    // raw text token.
    if (!raw_until_.empty()) {
        std::size_t search = pos_;
        std::size_t end = std::string_view::npos;
        while (search < html_.size()) {
            auto lt = html_.find('<', search);
            if (lt == std::string_view::npos) break;
            if (contains_ci(html_.substr(lt, raw_until_.size()), raw_until_)) {
                end = lt;
                break;
            }
            search = lt + 1;
        }
        out.kind = HtmlToken::Kind::Text;
        if (end == std::string_view::npos) {
            out.text = std::string(html_.substr(pos_));
            pos_ = html_.size();
        } else {
            out.text = std::string(html_.substr(pos_, end - pos_));
            pos_ = end;
        }
        raw_until_.clear();
        if (out.text.empty()) return next(out);
        return true;
    }

    if (html_[pos_] == '<') {
        // Comments and doctype/processing junk are skipped silently.
        if (html_.compare(pos_, 4, "<!--") == 0) {
            auto end = html_.find("-->", pos_ + 4);
            pos_ = end == std::string_view::npos ? html_.size() : end + 3;
            return next(out);
        }
        if (pos_ + 1 < html_.size() && (html_[pos_ + 1] == '!' || html_[pos_ + 1] == '?')) {
            auto end = html_.find('>', pos_);
            pos_ = end == std::string_view::npos ? html_.size() : end + 1;
            return next(out);
        }
        std::size_t name_start = pos_ + 1 + (pos_ + 1 < html_.size() && html_[pos_ + 1] == '/');
        if (name_start < html_.size() && std::isalpha(static_cast<unsigned char>(html_[name_start]))) {
            scan_tag(out);
            return true;
        }
        // Stray '<': treat as text.
    }

    auto lt = html_.find('<', pos_ + 1);
    std::size_t end = lt == std::string_view::npos ? html_.size() : lt;
    out.kind = HtmlToken::Kind::Text;
    out.text = decode_entities(html_.substr(pos_, end - pos_));
    pos_ = end;
    return true;
}

void HtmlScanner::scan_tag(HtmlToken& out) {
    std::size_t i = pos_ + 1;
    bool closing = html_[i] == '/';
    if (closing) ++i;

    std::size_t name_start = i;
    while (i < html_.size() && name_char(html_[i])) ++i;
    out.kind = closing ? HtmlToken::Kind::EndTag : HtmlToken::Kind::StartTag;
    out.text = to_lower(html_.substr(name_start, i - name_start));

    while (i < html_.size() && html_[i] != '>') {
        while (i < html_.size() && (std::isspace(static_cast<unsigned char>(html_[i])) || html_[i] == '/')) {
            if (html_[i] == '/' && i + 1 < html_.size() && html_[i + 1] == '>') out.self_closing = true;
            ++i;
        }
        if (i >= html_.size() || html_[i] == '>') break;
        std::size_t attr_start = i;
        while (i < html_.size() && html_[i] != '=' && html_[i] != '>' && html_[i] != '/' &&
               !std::isspace(static_cast<unsigned char>(html_[i])))
            ++i;
        std::string name = to_lower(html_.substr(attr_start, i - attr_start));
        std::string value;
        while (i < html_.size() && std::isspace(static_cast<unsigned char>(html_[i]))) ++i;
        if (i < html_.size() && html_[i] == '=') {
            ++i;
            while (i < html_.size() && std::isspace(static_cast<unsigned char>(html_[i]))) ++i;
            if (i < html_.size() && (html_[i] == '"' || html_[i] == '\'')) {
                char quote = html_[i++];
                std::size_t val_start = i;
                while (i < html_.size() && html_[i] != quote) ++i;
                value = decode_entities(html_.substr(val_start, i - val_start));
                if (i < html_.size()) ++i;
            } else {
                std::size_t val_start = i;
                while (i < html_.size() && html_[i] != '>' &&
                       !std::isspace(static_cast<unsigned char>(html_[i])))
                    ++i;
                value = decode_entities(html_.substr(val_start, i - val_start));
            }
        }
        if (!name.empty()) out.attrs.emplace_back(std::move(name), std::move(value));
    }
    pos_ = i < html_.size() ? i + 1 : html_.size();

    if (out.kind == HtmlToken::Kind::StartTag && !out.self_closing &&
        (out.text == "script" || out.text == "style")) {
        raw_until_ = "</" + out.text;
    }
}

AnnotationScan scan_annotations(std::string_view html) {
    AnnotationScan result;
    HtmlScanner scanner(html);
    HtmlToken tok;
    bool in_block = false;
    while (scanner.next(tok)) {
        if (tok.kind == HtmlToken::Kind::StartTag && tok.text == "script") {
            const std::string* type = tok.attr("type");
            in_block = type && to_lower(*type) == "text/x-triples";
            if (in_block) result.blocks.emplace_back();
            continue;
        }
        if (tok.kind == HtmlToken::Kind::EndTag && tok.text == "script") {
            in_block = false;
            continue;
        }
        if (!in_block || tok.kind != HtmlToken::Kind::Text) continue;
        for (const auto& raw_line : split(tok.text, '\n')) {
            std::string line = trim(raw_line);
            if (line.empty()) continue;
            auto fields = split(line, '|');
            bool ok = fields.size() == 3;
            if (ok) {
                for (auto& f : fields) {
                    f = trim(f);
                    if (f.empty()) ok = false;
                }
            }
            if (!ok) {
                ++result.malformed_lines;
                continue;
            }
            result.blocks.back().lines.push_back({fields[0], fields[1], fields[2]});
        }
    }
    return result;
}

std::vector<std::string> extract_hrefs(std::string_view html) {
    std::vector<std::string> out;
    HtmlScanner scanner(html);
    HtmlToken tok;
    while (scanner.next(tok)) {
        if (tok.kind != HtmlToken::Kind::StartTag || tok.text != "a") continue;
        if (const std::string* href = tok.attr("href"); href && !trim(*href).empty())
            out.push_back(*href);
    }
    return out;
}

} // namespace ontocrawl
