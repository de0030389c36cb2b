#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "slrscreen/dedup.hpp"
#include "slrscreen/outcome.hpp"
#include "slrscreen/record.hpp"

namespace slrscreen {

inline constexpr std::array<std::string_view, 11> kResultsColumns = {
    "Acceptance",   "Article Title",  "Methodology", "Explanation",
    "Authors",      "Publication Year", "Status",    "Fingerprint",
    "Request ID",   "Completed At",   "Echo Mismatch",
};

// Results table text, one row per outcome in corpus order. The record, not
// the model's echo, populates title/authors/year; the Echo Mismatch column
// says whether a Decided reply echoed a different title ("yes"/"no",
// empty for failed rows). Throws std::invalid_argument if outcomes and
// records are not aligned by fingerprint.
std::string render_results_table(const std::vector<AssessmentOutcome>& outcomes,
                                 const std::vector<ArticleRecord>& records,
                                 const DoiNormalization& doi = {});

// render_results_table written atomically; throws FileUnwritable.
void write_results_table(const std::vector<AssessmentOutcome>& outcomes,
                         const std::vector<ArticleRecord>& records,
                         const std::filesystem::path& path, const DoiNormalization& doi = {});

struct SummaryReport {
    size_t total_processed = 0;
    size_t removed_empty = 0;
    size_t removed_duplicates = 0;
    size_t screened = 0;
    size_t accepted = 0;
    size_t rejected = 0;
    size_t parse_failed = 0;
    size_t transport_failed = 0;
};

SummaryReport compute_summary(const DedupReport& dedup,
                              const std::vector<AssessmentOutcome>& outcomes);

// Eight LF-terminated lines; the first three match the long-standing console
// wording ("Total articles processed: N", ...) byte for byte.
std::string render_summary(const SummaryReport& report);

}  // namespace slrscreen
