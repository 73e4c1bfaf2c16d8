#ifndef ONTOCRAWL_METRICS_HPP
#define ONTOCRAWL_METRICS_HPP

#include <string>
#include <vector>

namespace ontocrawl {

// Per-domain crawl counters. pages_downloaded counts submitted form queries
// that came back as documents; sites_visited counts distinct hosts touched.
struct CrawlReport {
    std::string domain;
    long sites_visited = 0;
    long forms_encountered = 0;
    long pages_downloaded = 0;
    long correct_pages = 0;
    long useful_pages = 0;
};

void validate_report(const CrawlReport& report); // throws ContractError

// 100 * correct / downloaded, rounded half-up to two decimals. Zero
// denominators are undefined and throw.
double percent_correct(const CrawlReport& report);

// 100 * useful / correct, same rounding and zero rule.
double percent_useful(const CrawlReport& report);

// Two-decimal rendering of the same rounded value ("78.63"); "-" when the
// denominator is zero, so degenerate crawls still tabulate.
std::string percent_correct_str(const CrawlReport& report);
std::string percent_useful_str(const CrawlReport& report);

// Aligned plain-text table, one row per domain: the five counters in crawl
// order followed by both percentages.
std::string tabulate(const std::vector<CrawlReport>& reports);

// key=value summary block as written into crawl report files.
std::string summary_lines(const CrawlReport& report);

// Re-reads a summary written by summary_lines (or by hand). Page detail lines
// (tab-separated) and comments are skipped; anything else is a parse error
// with its line number.
CrawlReport parse_summary(const std::string& path);

} // namespace ontocrawl

#endif // ONTOCRAWL_METRICS_HPP
