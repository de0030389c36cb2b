#include "slrscreen/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <ostream>

#include <nlohmann/json.hpp>

#include "slrscreen/csv.hpp"
#include "slrscreen/dedup.hpp"
#include "slrscreen/fake_assessor.hpp"
#include "slrscreen/http_assessor.hpp"
#include "slrscreen/io.hpp"
#include "slrscreen/journal.hpp"
#include "slrscreen/report.hpp"
#include "slrscreen/screening.hpp"
#include "slrscreen/text.hpp"

namespace slrscreen::cli {

namespace {

using nlohmann::json;

constexpr const char* kSourceColumn = "Source";

std::string dedup_report_json(const DedupReport& report,
                              const std::vector<IngestReport>& inputs) {
    json j;
    j["total_processed"] = report.total_processed;
    j["removed_empty"] = report.removed_empty;
    j["removed_duplicates"] = report.removed_duplicates;
    j["kept"] = report.kept;
    j["inputs"] = json::array();
    for (const IngestReport& input : inputs) {
        json in;
        in["file"] = input.file;
        in["rows_read"] = input.rows_read;
        in["records_produced"] = input.records_produced;
        in["warnings"] = input.warnings;
        j["inputs"].push_back(std::move(in));
    }
    return j.dump(2) + "\n";
}

DedupReport load_dedup_report(const std::filesystem::path& path) {
    json j = json::parse(read_text_file(path));
    DedupReport report;
    report.total_processed = j.at("total_processed").get<size_t>();
    report.removed_empty = j.at("removed_empty").get<size_t>();
    report.removed_duplicates = j.at("removed_duplicates").get<size_t>();
    report.kept = j.at("kept").get<size_t>();
    return report;
}

std::string render_dedup_counts(const DedupReport& report) {
    SummaryReport summary;
    summary.total_processed = report.total_processed;
    summary.removed_duplicates = report.removed_duplicates;
    summary.removed_empty = report.removed_empty;
    std::string all = render_summary(summary);
    // First three lines only.
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) pos = all.find('\n', pos) + 1;
    return all.substr(0, pos);
}

// Stage-one results, written out for stage two and for the user.
struct StageOneArtifacts {
    StageOneResult stage;
    std::vector<IngestReport> inputs;
};

StageOneArtifacts ingest_and_dedup(const PipelineConfig& config, std::ostream& err) {
    std::vector<std::vector<ArticleRecord>> corpora;
    std::vector<IngestReport> reports;
    for (const InputSpec& input : config.inputs) {
        IngestResult result = read_records(input.path, input.columns, input.source_label);
        for (const std::string& warning : result.report.warnings) {
            err << "warning: " << warning << "\n";
        }
        corpora.push_back(std::move(result.records));
        reports.push_back(std::move(result.report));
    }
    StageOneArtifacts artifacts;
    artifacts.stage = run_stage_one(std::move(corpora), config.doi());
    artifacts.inputs = std::move(reports);
    return artifacts;
}

void write_stage_one_outputs(const PipelineConfig& config, const StageOneArtifacts& artifacts) {
    std::filesystem::create_directories(config.out_dir);
    write_cleaned_csv(artifacts.stage.kept, config.cleaned_csv_path());
    write_file_atomic(config.dedup_report_path(),
                      dedup_report_json(artifacts.stage.report, artifacts.inputs));
    if (config.audit_removed) {
        std::vector<csv::Row> rows;
        rows.push_back({"Reason", "Authors", "Article Title", "Abstract", "DOI",
                        "Publication Year", "Source", "Keeper Fingerprint"});
        auto record_row = [](const char* reason, const ArticleRecord& r,
                             const std::string& keeper) {
            return csv::Row{reason,
                            r.authors,
                            r.title,
                            r.abstract,
                            r.doi.value_or(""),
                            r.publication_year ? std::to_string(*r.publication_year) : "",
                            r.source,
                            keeper};
        };
        for (const ArticleRecord& r : artifacts.stage.removed_incomplete) {
            rows.push_back(record_row("empty fields", r, ""));
        }
        for (const RemovedDuplicate& d : artifacts.stage.removed_duplicates) {
            rows.push_back(record_row("duplicate", d.record, d.kept_fingerprint.value));
        }
        write_file_atomic(config.removed_csv_path(), csv::format(rows));
    }
}

// Shared stage-two body: screens `records`, writes results + summary.
int screen_records(const PipelineConfig& config, const std::vector<ArticleRecord>& records,
                   const DedupReport& dedup_report, std::ostream& out, std::ostream& err) {
    std::unique_ptr<Assessor> assessor;
    std::unique_ptr<FakeAssessor> fake;
    if (config.fake_rules) {
        try {
            fake = std::make_unique<FakeAssessor>(FakeAssessor::from_file(*config.fake_rules));
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitConfig;
        }
    } else {
        const char* key = std::getenv(kApiKeyEnvVar);
        if (!key || is_blank(key)) {
            err << "error: environment variable " << kApiKeyEnvVar
                << " is not set; refusing to contact " << config.run.endpoint_url
                << " (use --fake-assessor for offline runs)\n";
            return kExitCredential;
        }
        try {
            assessor = std::make_unique<HttpAssessor>(config.run, key);
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    Assessor& transport = fake ? static_cast<Assessor&>(*fake) : *assessor;

    std::filesystem::create_directories(config.out_dir);
    if (!config.resume) {
        std::error_code ignore;
        std::filesystem::remove(config.journal_path(), ignore);
    }

    std::vector<std::string> journal_warnings;
    RunJournal journal;
    try {
        journal = journal_load(config.journal_path(), &journal_warnings);
    } catch (const JournalCorrupt& e) {
        err << "error: " << e.what() << "\n";
        err << "hint: move the journal aside or rerun with --no-resume\n";
        return kExitFailure;
    }
    for (const std::string& warning : journal_warnings) {
        err << "warning: " << warning << "\n";
    }
    const size_t replayed = [&] {
        size_t n = 0;
        for (const ArticleRecord& r : records) {
            if (journal.contains(fingerprint(r, config.doi()))) ++n;
        }
        return n;
    }();
    if (replayed > 0) {
        err << "resuming: " << replayed << " of " << records.size()
            << " records already journaled\n";
    }

    ScreenEnv env;
    env.strict_parse = config.strict_parse;
    env.doi = config.doi();
    if (config.fake_rules) {
        // Pinned timestamp keeps offline runs byte-reproducible.
        env.wall_timestamp = [] { return std::string("1970-01-01T00:00:00Z"); };
    }
    size_t last_reported = 0;
    env.on_progress = [&](size_t done, size_t total) {
        if (done == total || done - last_reported >= 25) {
            last_reported = done;
            err << "screened " << done << "/" << total << "\n";
        }
    };

    std::vector<AssessmentOutcome> outcomes;
    try {
        outcomes = screen_corpus(records, config.criteria, config.run, journal, transport, env);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        err << "hint: the journal retains all completed records; rerun to resume\n";
        return kExitFailure;
    }

    write_results_table(outcomes, records, config.results_path(), config.doi());
    const SummaryReport summary = compute_summary(dedup_report, outcomes);
    write_file_atomic(config.summary_path(), render_summary(summary));
    out << render_summary(summary);

    return summary.transport_failed > 0 ? kExitTransport : kExitOk;
}

int to_ingest_exit(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << "\n";
    return kExitIngest;
}

}  // namespace

void write_cleaned_csv(const std::vector<ArticleRecord>& records,
                       const std::filesystem::path& path) {
    std::vector<std::string> extra_keys;
    for (const ArticleRecord& record : records) {
        for (const auto& [key, value] : record.extras) {
            if (std::find(extra_keys.begin(), extra_keys.end(), key) == extra_keys.end()) {
                extra_keys.push_back(key);
            }
        }
    }

    std::vector<csv::Row> rows;
    rows.reserve(records.size() + 1);
    csv::Row header = {"Authors", "Article Title", "Abstract", "DOI", "Publication Year",
                       kSourceColumn};
    header.insert(header.end(), extra_keys.begin(), extra_keys.end());
    rows.push_back(std::move(header));

    for (const ArticleRecord& record : records) {
        csv::Row row = {
            record.authors,
            record.title,
            record.abstract,
            record.doi.value_or(""),
            record.publication_year ? std::to_string(*record.publication_year) : "",
            record.source,
        };
        for (const std::string& key : extra_keys) {
            std::string value;
            for (const auto& [k, v] : record.extras) {
                if (k == key) {
                    value = v;
                    break;
                }
            }
            row.push_back(std::move(value));
        }
        rows.push_back(std::move(row));
    }
    write_file_atomic(path, csv::format(rows));
}

IngestResult read_cleaned_csv(const std::filesystem::path& path) {
    IngestResult result = read_records(path, ColumnMap{}, "");
    for (ArticleRecord& record : result.records) {
        for (auto it = record.extras.begin(); it != record.extras.end(); ++it) {
            if (it->first == kSourceColumn) {
                record.source = std::move(it->second);
                record.extras.erase(it);
                break;
            }
        }
    }
    return result;
}

int command_dedup(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    StageOneArtifacts artifacts;
    try {
        artifacts = ingest_and_dedup(config, err);
    } catch (const std::exception& e) {
        return to_ingest_exit(e, err);
    }
    write_stage_one_outputs(config, artifacts);
    out << render_dedup_counts(artifacts.stage.report);
    return kExitOk;
}

int command_screen(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    IngestResult cleaned;
    try {
        cleaned = read_cleaned_csv(config.cleaned_csv_path());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        err << "hint: run the dedup stage first\n";
        return kExitIngest;
    }
    for (const std::string& warning : cleaned.report.warnings) {
        err << "warning: " << warning << "\n";
    }

    DedupReport dedup_report;
    if (std::filesystem::exists(config.dedup_report_path())) {
        try {
            dedup_report = load_dedup_report(config.dedup_report_path());
        } catch (const std::exception& e) {
            err << "warning: ignoring unreadable " << config.dedup_report_path().string()
                << ": " << e.what() << "\n";
        }
    } else {
        err << "warning: " << config.dedup_report_path().string()
            << " not found; duplicate/empty counts will read 0\n";
    }

    return screen_records(config, cleaned.records, dedup_report, out, err);
}

int command_run(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    StageOneArtifacts artifacts;
    try {
        artifacts = ingest_and_dedup(config, err);
    } catch (const std::exception& e) {
        return to_ingest_exit(e, err);
    }
    write_stage_one_outputs(config, artifacts);
    return screen_records(config, artifacts.stage.kept, artifacts.stage.report, out, err);
}

int command_reparse(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
    IngestResult cleaned;
    try {
        cleaned = read_cleaned_csv(config.cleaned_csv_path());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIngest;
    }

    RunJournal journal;
    std::vector<std::string> warnings;
    try {
        journal = journal_load(config.journal_path(), &warnings);
    } catch (const JournalCorrupt& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    for (const std::string& warning : warnings) err << "warning: " << warning << "\n";

    DedupReport dedup_report;
    if (std::filesystem::exists(config.dedup_report_path())) {
        try {
            dedup_report = load_dedup_report(config.dedup_report_path());
        } catch (const std::exception&) {
        }
    }

    const ParseOptions parse_opts{.strict = config.strict_parse};
    std::vector<ArticleRecord> covered;
    std::vector<AssessmentOutcome> outcomes;
    size_t missing = 0;
    for (const ArticleRecord& record : cleaned.records) {
        const AssessmentOutcome* journaled = journal.find(fingerprint(record, config.doi()));
        if (!journaled) {
            ++missing;
            continue;
        }
        AssessmentOutcome outcome = *journaled;
        if (outcome.status != AssessmentStatus::TransportFailed) {
            auto parsed = parse_decision(outcome.raw_response, parse_opts);
            if (auto* decision = std::get_if<ScreeningDecision>(&parsed)) {
                outcome.status = AssessmentStatus::Decided;
                outcome.decision = std::move(*decision);
            } else {
                outcome.status = AssessmentStatus::ParseFailed;
                outcome.decision.reset();
            }
        }
        covered.push_back(record);
        outcomes.push_back(std::move(outcome));
    }
    if (missing > 0) {
        err << "warning: " << missing
            << " cleaned records have no journal entry and were left out; run screen to "
               "assess them\n";
    }

    std::filesystem::create_directories(config.out_dir);
    write_results_table(outcomes, covered, config.results_path(), config.doi());
    const SummaryReport summary = compute_summary(dedup_report, outcomes);
    write_file_atomic(config.summary_path(), render_summary(summary));
    out << render_summary(summary);
    return kExitOk;
}

int command_validate(const std::filesystem::path& config_file, std::ostream& out,
                     std::ostream& err) {
    PipelineConfig config;
    try {
        config = load_pipeline_config(config_file);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    out << "configuration OK: " << config.inputs.size() << " input(s), topic '"
        << config.criteria.topic << "', model '" << config.run.model_name << "'\n";
    return kExitOk;
}

}  // namespace slrscreen::cli
