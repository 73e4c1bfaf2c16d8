#ifndef ONTOCRAWL_HTML_HPP
#define ONTOCRAWL_HTML_HPP

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontocrawl {

// One lexical event from the scanner. Tag names are lowercased; attribute
// names are lowercased, values are as written (quotes stripped, basic
// entities decoded).
struct HtmlToken {
    enum class Kind { Text, StartTag, EndTag };

    Kind kind = Kind::Text;
    std::string text; // tag name, or text content
    std::vector<std::pair<std::string, std::string>> attrs;
    bool self_closing = false;

    const std::string* attr(std::string_view name) const;
    bool has_attr(std::string_view name) const;
};

// Forgiving linear scanner over tag-soup HTML. Never throws on malformed
// markup: a stray '<' falls back to text, unterminated constructs run to end
// of input. <script> and <style> bodies are delivered as a single raw Text
// token so embedded markup doesn't confuse callers.
class HtmlScanner {
public:
    explicit HtmlScanner(std::string_view html) : html_(html) {}

    bool next(HtmlToken& out);

private:
    void scan_tag(HtmlToken& out);
    std::string_view html_;
    std::size_t pos_ = 0;
    std::string raw_until_; // close tag that ends a raw-text element, if any
};

// An annotation block is <script type="text/x-triples"> with one
// subject|predicate|object line per triple.
struct AnnotationBlock {
    std::vector<std::array<std::string, 3>> lines;
};

struct AnnotationScan {
    std::vector<AnnotationBlock> blocks;
    int malformed_lines = 0;
};

AnnotationScan scan_annotations(std::string_view html);

// href attributes of <a> tags in document order, as written.
std::vector<std::string> extract_hrefs(std::string_view html);

std::string decode_entities(std::string_view s);

} // namespace ontocrawl

#endif // ONTOCRAWL_HTML_HPP
