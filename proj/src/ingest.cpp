#include "slrscreen/ingest.hpp"

#include <algorithm>
#include <optional>

#include "slrscreen/csv.hpp"
#include "slrscreen/io.hpp"
#include "slrscreen/text.hpp"

namespace slrscreen {

namespace {

std::optional<size_t> find_column(const csv::Row& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<size_t>(it - header.begin());
}

}  // namespace

void ColumnMap::validate() const {
    const std::string* names[] = {&authors, &title, &abstract, &doi, &year};
    for (const std::string* name : names) {
        if (name->empty()) throw std::invalid_argument("column map contains an empty name");
    }
    for (size_t i = 0; i < std::size(names); ++i) {
        for (size_t j = i + 1; j < std::size(names); ++j) {
            if (*names[i] == *names[j]) {
                throw std::invalid_argument("column map maps '" + *names[i] + "' twice");
            }
        }
    }
}

MissingColumn::MissingColumn(const std::filesystem::path& path, const std::string& column_name)
    : std::runtime_error(path.string() + ": required column '" + column_name + "' not found"),
      column(column_name) {}

IngestResult read_records(const std::filesystem::path& path, const ColumnMap& columns,
                          const std::string& source_label) {
    columns.validate();

    const std::string text = read_text_file(path);
    const std::vector<csv::Row> rows = csv::parse(text);
    if (rows.empty()) throw csv::MalformedCsv(1, path.string() + " has no header row");

    const csv::Row& header = rows.front();
    const auto authors_idx = find_column(header, columns.authors);
    const auto title_idx = find_column(header, columns.title);
    const auto abstract_idx = find_column(header, columns.abstract);
    if (!authors_idx) throw MissingColumn(path, columns.authors);
    if (!title_idx) throw MissingColumn(path, columns.title);
    if (!abstract_idx) throw MissingColumn(path, columns.abstract);
    const auto doi_idx = find_column(header, columns.doi);
    const auto year_idx = find_column(header, columns.year);

    std::vector<size_t> extra_columns;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i == *authors_idx || i == *title_idx || i == *abstract_idx) continue;
        if (doi_idx && i == *doi_idx) continue;
        if (year_idx && i == *year_idx) continue;
        extra_columns.push_back(i);
    }

    IngestResult result;
    result.report.file = path.string();

    for (size_t r = 1; r < rows.size(); ++r) {
        const csv::Row& row = rows[r];
        ++result.report.rows_read;
        if (row.size() != header.size()) {
            result.report.warnings.push_back(
                path.string() + " row " + std::to_string(r + 1) + ": expected " +
                std::to_string(header.size()) + " fields, got " + std::to_string(row.size()) +
                "; row skipped");
            continue;
        }

        ArticleRecord record;
        record.authors = row[*authors_idx];
        record.title = row[*title_idx];
        record.abstract = row[*abstract_idx];
        record.source = source_label;
        if (doi_idx && !row[*doi_idx].empty()) record.doi = row[*doi_idx];
        if (year_idx) {
            const std::string& cell = row[*year_idx];
            if (!is_blank(cell)) {
                auto year = parse_int(cell);
                if (!year) {
                    result.report.warnings.push_back(
                        path.string() + " row " + std::to_string(r + 1) +
                        ": unparseable publication year '" + cell + "'; treated as absent");
                } else if (*year < kMinPublicationYear || *year > kMaxPublicationYear) {
                    result.report.warnings.push_back(
                        path.string() + " row " + std::to_string(r + 1) +
                        ": publication year " + std::to_string(*year) +
                        " outside plausible range; treated as absent");
                } else {
                    record.publication_year = year;
                }
            }
        }
        for (size_t idx : extra_columns) {
            record.extras.emplace_back(header[idx], row[idx]);
        }

        result.records.push_back(std::move(record));
        ++result.report.records_produced;
    }

    return result;
}

std::vector<ArticleRecord> merge_sources(std::vector<std::vector<ArticleRecord>> corpora) {
    std::vector<ArticleRecord> merged;
    size_t total = 0;
    for (const auto& corpus : corpora) total += corpus.size();
    merged.reserve(total);
    for (auto& corpus : corpora) {
        for (auto& record : corpus) merged.push_back(std::move(record));
    }
    return merged;
}

}  // namespace slrscreen
