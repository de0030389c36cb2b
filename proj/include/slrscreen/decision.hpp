#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace slrscreen {

enum class Acceptance { Accept, Reject };

std::string_view acceptance_label(Acceptance a);  // "Yes" / "No"

enum class MethodologyKind {
    Theoretical,
    EmpiricalQuantitative,
    EmpiricalQualitative,
    Other,
};

struct Methodology {
    MethodologyKind kind = MethodologyKind::Other;
    std::string other;  // verbatim reply text when kind is Other, else empty

    bool operator==(const Methodology&) const = default;
};

// Classifies free-form methodology text by comparing only its alphanumeric
// characters, case-folded, against the three taxonomy labels. Anything else
// is preserved verbatim as Other.
Methodology map_methodology(std::string_view raw);

// Canonical label for the taxonomy kinds; the verbatim text for Other.
std::string methodology_label(const Methodology& m);

struct ScreeningDecision {
    Acceptance acceptance = Acceptance::Reject;
    std::string echoed_authors;
    std::string echoed_title;
    std::optional<int> echoed_year;
    Methodology methodology;
    std::string explanation;

    bool operator==(const ScreeningDecision&) const = default;
};

enum class ParseErrorKind {
    EmptyReply,
    MissingAcceptance,
    UnrecognizedAcceptanceValue,
};

struct ParseError {
    ParseErrorKind kind = ParseErrorKind::EmptyReply;
    std::string offending_text;

    bool operator==(const ParseError&) const = default;
};

std::string_view parse_error_label(ParseErrorKind kind);

struct ParseOptions {
    // Lenient mode (default) matches keys case-insensitively and tolerates
    // leading whitespace on the line; strict mode requires the exact
    // "Key: " prefix at column zero.
    bool strict = false;
};

// Reads a reply in the prescribed line layout. Only the Acceptance line is
// load-bearing: a missing or unrecognizable one fails the parse, every other
// field degrades to empty/absent. For each key the first matching line wins.
std::variant<ScreeningDecision, ParseError> parse_decision(std::string_view raw,
                                                           const ParseOptions& opts = {});

// Canonical six-line rendering. parse_decision(render_decision(d)) == d for
// any decision whose field values are newline-free and whose methodology is
// in canonical form (i.e. produced by map_methodology or parse_decision).
std::string render_decision(const ScreeningDecision& decision);

}  // namespace slrscreen
