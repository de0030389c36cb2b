#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slrscreen::csv {

class MalformedCsv : public std::runtime_error {
public:
    MalformedCsv(size_t row, const std::string& detail);
    size_t row() const { return row_; }

private:
    size_t row_;
};

using Row = std::vector<std::string>;

// RFC 4180 parser. Accepts LF, CRLF and lone CR as record terminators, quoted
// fields containing commas, doubled quotes and newlines, and an optional UTF-8
// BOM. Blank lines yield no row. Throws MalformedCsv (with the 1-based row
// number) on stray quotes, junk after a closing quote, or an unterminated
// quoted field.
std::vector<Row> parse(std::string_view text);

std::string escape_field(std::string_view field);

std::string format_row(const Row& row);

// Rows joined with LF terminators, one per row.
std::string format(const std::vector<Row>& rows);

}  // namespace slrscreen::csv
