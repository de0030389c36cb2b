#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrscreen/record.hpp"

namespace slrscreen {

// Maps export header names to record fields. Authors, title and abstract are
// mandatory in every input file; DOI and year columns may be absent.
struct ColumnMap {
    std::string authors = "Authors";
    std::string title = "Article Title";
    std::string abstract = "Abstract";
    std::string doi = "DOI";
    std::string year = "Publication Year";

    // Throws std::invalid_argument on empty or duplicate names.
    void validate() const;
};

struct MissingColumn : std::runtime_error {
    MissingColumn(const std::filesystem::path& path, const std::string& column_name);
    std::string column;
};

struct IngestReport {
    std::string file;
    size_t rows_read = 0;         // data rows, excluding the header
    size_t records_produced = 0;  // rows_read minus skipped rows
    std::vector<std::string> warnings;
};

struct IngestResult {
    std::vector<ArticleRecord> records;
    IngestReport report;
};

// Reads one export file. Rows whose field count does not match the header are
// skipped with a warning; blank or unparseable years become absent (a warning
// for unparseable or out-of-range values, none for blank). Unmapped columns
// are preserved as extras in file order. Throws FileUnreadable,
// csv::MalformedCsv, or MissingColumn.
IngestResult read_records(const std::filesystem::path& path, const ColumnMap& columns,
                          const std::string& source_label);

// Concatenates corpora in the given order; relative order within each corpus
// is preserved.
std::vector<ArticleRecord> merge_sources(std::vector<std::vector<ArticleRecord>> corpora);

}  // namespace slrscreen
