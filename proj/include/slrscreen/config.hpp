#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrscreen/ingest.hpp"
#include "slrscreen/prompt.hpp"
#include "slrscreen/screening.hpp"

namespace slrscreen {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& detail);
};

struct InputSpec {
    std::filesystem::path path;
    std::string source_label;
    ColumnMap columns;
};

// Everything a run needs except the API credential, which only ever comes
// from the SLR_SCREEN_API_KEY environment variable.
struct PipelineConfig {
    std::string run_id = "default";
    std::vector<InputSpec> inputs;
    ScreeningCriteria criteria;
    RunConfig run;
    std::filesystem::path out_dir = "out";
    bool strip_doi_prefixes = true;
    bool strict_parse = false;
    bool resume = true;
    bool audit_removed = false;
    std::optional<std::filesystem::path> fake_rules;  // set by --fake-assessor

    DoiNormalization doi() const { return {.strip_prefixes = strip_doi_prefixes}; }

    std::filesystem::path cleaned_csv_path() const { return out_dir / "cleaned_records.csv"; }
    std::filesystem::path dedup_report_path() const { return out_dir / "dedup_report.json"; }
    std::filesystem::path removed_csv_path() const { return out_dir / "removed_records.csv"; }
    std::filesystem::path results_path() const { return out_dir / "results.csv"; }
    std::filesystem::path summary_path() const { return out_dir / "summary.txt"; }
    std::filesystem::path journal_path() const {
        return out_dir / ("journal-" + run_id + ".jsonl");
    }
};

// Parses and validates the JSON run configuration. Relative input paths are
// resolved against the config file's directory. Unknown keys are rejected so
// typos surface in validate-config. Throws ConfigError.
PipelineConfig load_pipeline_config(const std::filesystem::path& file);

// Semantic checks shared by load and the CLI overrides. Throws ConfigError.
void validate_config(const PipelineConfig& config);

}  // namespace slrscreen
