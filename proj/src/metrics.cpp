#include "ontocrawl/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "ontocrawl/error.hpp"
#include "ontocrawl/text.hpp"

namespace ontocrawl {

namespace {

// Half-up rounding of 100 * numerator / denominator to two decimals, done in
// integers: the result is the exact value scaled by 100.
std::int64_t percent_x100(long numerator, long denominator) {
    std::int64_t scaled = static_cast<std::int64_t>(numerator) * 10000;
    return (2 * scaled + denominator) / (2 * static_cast<std::int64_t>(denominator));
}

std::string format_x100(std::int64_t x100) {
    std::ostringstream out;
    out << x100 / 100 << '.' << (x100 % 100 < 10 ? "0" : "") << x100 % 100;
    return out.str();
}

} // namespace

void validate_report(const CrawlReport& report) {
    if (report.sites_visited < 0 || report.forms_encountered < 0 ||
        report.pages_downloaded < 0 || report.correct_pages < 0 || report.useful_pages < 0)
        throw ContractError("crawl report counters must be non-negative");
    if (report.correct_pages > report.pages_downloaded)
        throw ContractError("correct_pages exceeds pages_downloaded");
    if (report.useful_pages > report.correct_pages)
        throw ContractError("useful_pages exceeds correct_pages");
}

double percent_correct(const CrawlReport& report) {
    validate_report(report);
    if (report.pages_downloaded == 0)
        throw ContractError("percent_correct is undefined with zero pages downloaded");
    return static_cast<double>(percent_x100(report.correct_pages, report.pages_downloaded)) /
           100.0;
}

double percent_useful(const CrawlReport& report) {
    validate_report(report);
    if (report.correct_pages == 0)
        throw ContractError("percent_useful is undefined with zero correct pages");
    return static_cast<double>(percent_x100(report.useful_pages, report.correct_pages)) / 100.0;
}

std::string percent_correct_str(const CrawlReport& report) {
    validate_report(report);
    if (report.pages_downloaded == 0) return "-";
    return format_x100(percent_x100(report.correct_pages, report.pages_downloaded));
}

std::string percent_useful_str(const CrawlReport& report) {
    validate_report(report);
    if (report.correct_pages == 0) return "-";
    return format_x100(percent_x100(report.useful_pages, report.correct_pages));
}

std::string tabulate(const std::vector<CrawlReport>& reports) {
    for (const auto& report : reports) validate_report(report);

    static const char* headers[] = {"domain",  "sites",   "forms",    "downloaded",
                                    "correct", "useful",  "%correct", "%useful"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        rows.push_back({r.domain, std::to_string(r.sites_visited),
                        std::to_string(r.forms_encountered),
                        std::to_string(r.pages_downloaded), std::to_string(r.correct_pages),
                        std::to_string(r.useful_pages), percent_correct_str(r),
                        percent_useful_str(r)});
    }

    std::size_t widths[8];
    for (std::size_t c = 0; c < 8; ++c) {
        widths[c] = std::string(headers[c]).size();
        for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
    }

    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < 8; ++c) {
            if (c) out << "  ";
            out << cells[c];
            for (std::size_t pad = cells[c].size(); pad < widths[c]; ++pad) out << ' ';
        }
        out << '\n';
    };
    emit_row({headers, headers + 8});
    for (const auto& row : rows) emit_row(row);
    return out.str();
}

std::string summary_lines(const CrawlReport& report) {
    std::ostringstream out;
    out << "domain=" << report.domain << "\n";
    out << "sites_visited=" << report.sites_visited << "\n";
    out << "forms_encountered=" << report.forms_encountered << "\n";
    out << "pages_downloaded=" << report.pages_downloaded << "\n";
    out << "correct_pages=" << report.correct_pages << "\n";
    out << "useful_pages=" << report.useful_pages << "\n";
    out << "percent_correct=" << percent_correct_str(report) << "\n";
    out << "percent_useful=" << percent_useful_str(report) << "\n";
    return out.str();
}

CrawlReport parse_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open report file: " + path);
    CrawlReport report;
    bool saw_counter = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (stripped.find('\t') != std::string::npos) continue; // per-page detail line
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value in report file", line_no);
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        long number = 0;
        bool numeric = false;
        try {
            std::size_t used = 0;
            number = std::stol(value, &used);
            numeric = used == value.size();
        } catch (const std::exception&) {
            numeric = false;
        }
        if (key == "domain") {
            report.domain = value;
            continue;
        }
        if (key == "percent_correct" || key == "percent_useful") continue; // recomputed
        if (!numeric)
            throw ParseError("counter '" + key + "' needs an integer value", line_no);
        if (key == "sites_visited") report.sites_visited = number;
        else if (key == "forms_encountered") report.forms_encountered = number;
        else if (key == "pages_downloaded") report.pages_downloaded = number;
        else if (key == "correct_pages") report.correct_pages = number;
        else if (key == "useful_pages") report.useful_pages = number;
        else throw ParseError("unknown report key '" + key + "'", line_no);
        saw_counter = true;
    }
    if (!saw_counter) throw ParseError("report file carries no counters: " + path);
    validate_report(report);
    return report;
}

} // namespace ontocrawl
