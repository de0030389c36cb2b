#include "slrscreen/csv.hpp"

namespace slrscreen::csv {

MalformedCsv::MalformedCsv(size_t row, const std::string& detail)
    : std::runtime_error("malformed CSV at row " + std::to_string(row) + ": " + detail),
      row_(row) {}

std::vector<Row> parse(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<Row> rows;
    Row row;
    std::string field;
    // True from the moment the current field has any representation in the
    // input (chars, an opening quote, or a preceding comma). Distinguishes a
    // trailing empty field from a blank line.
    bool field_pending = false;

    enum class State { FieldStart, Unquoted, Quoted, QuoteEnd };
    State state = State::FieldStart;

    auto current_row = [&] { return rows.size() + 1; };
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_pending = true;  // a comma implies a successor field
        state = State::FieldStart;
    };
    auto end_record = [&] {
        if (field_pending || !row.empty()) {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
        }
        field_pending = false;
        state = State::FieldStart;
    };

    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if ((c == '\n' || c == '\r') && state != State::Quoted) {
            end_record();
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            continue;
        }
        switch (state) {
        case State::FieldStart:
            if (c == '"') {
                state = State::Quoted;
                field_pending = true;
            } else if (c == ',') {
                end_field();
            } else {
                field.push_back(c);
                field_pending = true;
                state = State::Unquoted;
            }
            break;
        case State::Unquoted:
            if (c == '"') {
                throw MalformedCsv(current_row(), "quote inside unquoted field");
            } else if (c == ',') {
                end_field();
            } else {
                field.push_back(c);
            }
            break;
        case State::Quoted:
            if (c == '"') {
                state = State::QuoteEnd;
            } else {
                field.push_back(c);
            }
            break;
        case State::QuoteEnd:
            if (c == '"') {
                field.push_back('"');
                state = State::Quoted;
            } else if (c == ',') {
                end_field();
            } else {
                throw MalformedCsv(current_row(), "unexpected character after closing quote");
            }
            break;
        }
    }

    if (state == State::Quoted) {
        throw MalformedCsv(current_row(), "unterminated quoted field");
    }
    end_record();
    return rows;
}

std::string escape_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_row(const Row& row) {
    std::string out;
    for (size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += escape_field(row[i]);
    }
    return out;
}

std::string format(const std::vector<Row>& rows) {
    std::string out;
    for (const Row& row : rows) {
        out += format_row(row);
        out.push_back('\n');
    }
    return out;
}

}  // namespace slrscreen::csv
