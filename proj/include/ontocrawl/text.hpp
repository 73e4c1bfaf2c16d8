#ifndef ONTOCRAWL_TEXT_HPP
#define ONTOCRAWL_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace ontocrawl {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool contains_ci(std::string_view haystack, std::string_view needle);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_ws(std::string_view s);

// Canonical term form used for all ontology matching: lowercase, underscores,
// hyphens and whitespace runs folded to single spaces, trimmed, and a trailing
// "s" dropped when the remainder keeps at least three characters.
std::string normalize_term(std::string_view s);

// Predicate names are folded the other way: separators become hyphens, so
// "Has Attribute" and "has_attribute" both read "has-attribute".
std::string canonical_predicate(std::string_view s);

} // namespace ontocrawl

#endif // ONTOCRAWL_TEXT_HPP
