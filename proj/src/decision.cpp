#include "slrscreen/decision.hpp"

#include <vector>

#include "slrscreen/text.hpp"

namespace slrscreen {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

std::string_view skip_leading_space(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

// First line carrying "Key: ", or nullopt. Lenient matching ignores leading
// whitespace and key case.
std::optional<std::string_view> find_value(const std::vector<std::string_view>& lines,
                                           std::string_view key, bool strict) {
    std::string prefix(key);
    prefix += ": ";
    for (std::string_view line : lines) {
        std::string_view candidate = strict ? line : skip_leading_space(line);
        bool match = strict ? candidate.starts_with(prefix)
                            : starts_with_ci(candidate, prefix);
        if (match) return candidate.substr(prefix.size());
    }
    return std::nullopt;
}

}  // namespace

std::string_view acceptance_label(Acceptance a) {
    return a == Acceptance::Accept ? "Yes" : "No";
}

std::string_view parse_error_label(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::EmptyReply: return "empty reply";
    case ParseErrorKind::MissingAcceptance: return "missing Acceptance line";
    case ParseErrorKind::UnrecognizedAcceptanceValue: return "unrecognized Acceptance value";
    }
    return "unknown parse error";
}

Methodology map_methodology(std::string_view raw) {
    std::string folded;
    folded.reserve(raw.size());
    for (char c : raw) {
        if (c >= 'A' && c <= 'Z') {
            folded.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            folded.push_back(c);
        }
    }
    if (folded == "theoreticalpaper") return {MethodologyKind::Theoretical, {}};
    if (folded == "empiricalquantitative") return {MethodologyKind::EmpiricalQuantitative, {}};
    if (folded == "empiricalqualitative") return {MethodologyKind::EmpiricalQualitative, {}};
    return {MethodologyKind::Other, std::string(raw)};
}

std::string methodology_label(const Methodology& m) {
    switch (m.kind) {
    case MethodologyKind::Theoretical: return "Theoretical paper";
    case MethodologyKind::EmpiricalQuantitative: return "Empirical (Quantitative)";
    case MethodologyKind::EmpiricalQualitative: return "Empirical (Qualitative)";
    case MethodologyKind::Other: return m.other;
    }
    return m.other;
}

std::variant<ScreeningDecision, ParseError> parse_decision(std::string_view raw,
                                                           const ParseOptions& opts) {
    if (is_blank(raw)) {
        return ParseError{ParseErrorKind::EmptyReply, std::string(raw)};
    }
    const std::vector<std::string_view> lines = split_lines(raw);

    auto acceptance_value = find_value(lines, "Acceptance", opts.strict);
    if (!acceptance_value) {
        return ParseError{ParseErrorKind::MissingAcceptance, std::string(raw)};
    }
    const std::string token = trim(*acceptance_value);
    ScreeningDecision decision;
    if (equals_ci(token, "yes")) {
        decision.acceptance = Acceptance::Accept;
    } else if (equals_ci(token, "no")) {
        decision.acceptance = Acceptance::Reject;
    } else {
        return ParseError{ParseErrorKind::UnrecognizedAcceptanceValue, token};
    }

    auto text_or_empty = [&](std::string_view key) {
        auto value = find_value(lines, key, opts.strict);
        return value ? std::string(*value) : std::string();
    };
    decision.echoed_authors = text_or_empty("Authors");
    decision.echoed_title = text_or_empty("Article Title");
    decision.echoed_year = parse_int(text_or_empty("Publication Year"));
    decision.methodology = map_methodology(text_or_empty("Methodology"));
    decision.explanation = text_or_empty("Explanation");
    return decision;
}

std::string render_decision(const ScreeningDecision& decision) {
    std::string out;
    out += "Acceptance: ";
    out += acceptance_label(decision.acceptance);
    out += "\nAuthors: ";
    out += decision.echoed_authors;
    out += "\nArticle Title: ";
    out += decision.echoed_title;
    out += "\nPublication Year: ";
    if (decision.echoed_year) out += std::to_string(*decision.echoed_year);
    out += "\nMethodology: ";
    out += methodology_label(decision.methodology);
    out += "\nExplanation: ";
    out += decision.explanation;
    return out;
}

}  // namespace slrscreen
