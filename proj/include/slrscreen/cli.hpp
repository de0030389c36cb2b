#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "slrscreen/config.hpp"
#include "slrscreen/ingest.hpp"

namespace slrscreen::cli {

// The only place an API credential may come from.
inline constexpr const char* kApiKeyEnvVar = "SLR_SCREEN_API_KEY";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // journal corruption, internal errors
inline constexpr int kExitConfig = 2;      // unusable configuration / rules file
inline constexpr int kExitIngest = 3;      // unreadable or malformed input
inline constexpr int kExitTransport = 4;   // finished, but some records TransportFailed
inline constexpr int kExitCredential = 5;  // SLR_SCREEN_API_KEY missing without --fake-assessor

// Stage one: ingest, merge, drop incomplete, dedup; writes
// cleaned_records.csv + dedup_report.json (+ removed_records.csv when
// audit_removed) and prints the three count lines.
int command_dedup(const PipelineConfig& config, std::ostream& out, std::ostream& err);

// Stage two: screens the cleaned corpus, writes results.csv + summary.txt,
// prints the summary. Resumes from the run journal unless config.resume is
// off.
int command_screen(const PipelineConfig& config, std::ostream& out, std::ostream& err);

// Both stages; equivalent to dedup followed by screen.
int command_run(const PipelineConfig& config, std::ostream& out, std::ostream& err);

// Rebuilds results.csv + summary.txt from the journal's stored raw replies
// under the current parse settings; contacts no endpoint, never writes the
// journal.
int command_reparse(const PipelineConfig& config, std::ostream& out, std::ostream& err);

int command_validate(const std::filesystem::path& config_file, std::ostream& out,
                     std::ostream& err);

// Cleaned-corpus round trip shared by the stages (column layout: the five
// record fields, Source, then every extra column seen, first-seen order).
void write_cleaned_csv(const std::vector<ArticleRecord>& records,
                       const std::filesystem::path& path);
IngestResult read_cleaned_csv(const std::filesystem::path& path);

}  // namespace slrscreen::cli
