#include "slrscreen/report.hpp"

#include "slrscreen/csv.hpp"
#include "slrscreen/io.hpp"

namespace slrscreen {

std::string render_results_table(const std::vector<AssessmentOutcome>& outcomes,
                                 const std::vector<ArticleRecord>& records,
                                 const DoiNormalization& doi) {
    if (outcomes.size() != records.size()) {
        throw std::invalid_argument("results table: " + std::to_string(outcomes.size()) +
                                    " outcomes vs " + std::to_string(records.size()) +
                                    " records");
    }

    std::vector<csv::Row> rows;
    rows.reserve(outcomes.size() + 1);
    rows.emplace_back(kResultsColumns.begin(), kResultsColumns.end());

    for (size_t i = 0; i < outcomes.size(); ++i) {
        const AssessmentOutcome& outcome = outcomes[i];
        const ArticleRecord& record = records[i];
        if (outcome.fingerprint != fingerprint(record, doi)) {
            throw std::invalid_argument("results table: outcome " + std::to_string(i) +
                                        " does not match record (fingerprint mismatch)");
        }

        csv::Row row(kResultsColumns.size());
        if (outcome.decision) {
            const ScreeningDecision& d = *outcome.decision;
            row[0] = std::string(acceptance_label(d.acceptance));
            row[2] = methodology_label(d.methodology);
            row[3] = d.explanation;
            const std::string echo = normalize_for_key(d.echoed_title);
            row[10] = (!echo.empty() && echo != normalize_for_key(record.title)) ? "yes" : "no";
        }
        row[1] = record.title;
        row[4] = record.authors;
        if (record.publication_year) row[5] = std::to_string(*record.publication_year);
        row[6] = std::string(status_label(outcome.status));
        row[7] = outcome.fingerprint.value;
        row[8] = outcome.request_id;
        row[9] = outcome.completed_at;
        rows.push_back(std::move(row));
    }
    return csv::format(rows);
}

void write_results_table(const std::vector<AssessmentOutcome>& outcomes,
                         const std::vector<ArticleRecord>& records,
                         const std::filesystem::path& path, const DoiNormalization& doi) {
    write_file_atomic(path, render_results_table(outcomes, records, doi));
}

SummaryReport compute_summary(const DedupReport& dedup,
                              const std::vector<AssessmentOutcome>& outcomes) {
    SummaryReport summary;
    summary.removed_empty = dedup.removed_empty;
    summary.removed_duplicates = dedup.removed_duplicates;
    summary.screened = outcomes.size();
    for (const AssessmentOutcome& outcome : outcomes) {
        switch (outcome.status) {
        case AssessmentStatus::Decided:
            if (outcome.decision && outcome.decision->acceptance == Acceptance::Accept) {
                ++summary.accepted;
            } else {
                ++summary.rejected;
            }
            break;
        case AssessmentStatus::ParseFailed: ++summary.parse_failed; break;
        case AssessmentStatus::TransportFailed: ++summary.transport_failed; break;
        }
    }
    // Counts are defined to reconcile: every processed article was kept
    // (screened), empty, or a duplicate.
    summary.total_processed =
        summary.screened + summary.removed_empty + summary.removed_duplicates;
    return summary;
}

std::string render_summary(const SummaryReport& report) {
    std::string out;
    out += "Total articles processed: " + std::to_string(report.total_processed) + "\n";
    out += "Total duplicates removed: " + std::to_string(report.removed_duplicates) + "\n";
    out += "Total articles removed due to empty fields: " + std::to_string(report.removed_empty) +
           "\n";
    out += "Screened: " + std::to_string(report.screened) + "\n";
    out += "Accepted: " + std::to_string(report.accepted) + "\n";
    out += "Rejected: " + std::to_string(report.rejected) + "\n";
    out += "Parse failures: " + std::to_string(report.parse_failed) + "\n";
    out += "Transport failures: " + std::to_string(report.transport_failed) + "\n";
    return out;
}

}  // namespace slrscreen
