#include "slrscreen/prompt.hpp"

#include "slrscreen/text.hpp"

namespace slrscreen {

namespace {

// Reply-layout block quoted verbatim in the instruction, including its
// informal grammar and the literal "\n" caveat. parse_decision depends on the
// "Key: value" line shapes prescribed here, so the wording is frozen.
constexpr const char* kOutputStyleBlock =
    "your style of output should be like the following:\n"
    "Acceptance:(if the article is acceptable or not) Yes/No\n"
    "Authors:\n"
    "Article Title:\n"
    "Publication Year:\n"
    "Methodology:(tell about it's methodology if it's (theoretical paper- empirical "
    "(quantitative)-empirical (qualitative)))\n"
    "Explanation:\n"
    "don't add any \\n or anything else except raw text";

}  // namespace

void ScreeningCriteria::validate() const {
    if (is_blank(topic)) throw std::invalid_argument("screening criteria: topic is blank");
    if (items.empty()) throw std::invalid_argument("screening criteria: no criterion items");
    for (const CriterionItem& item : items) {
        if (is_blank(item.heading)) {
            throw std::invalid_argument("screening criteria: item with blank heading");
        }
    }
}

std::string build_instruction(const ScreeningCriteria& criteria) {
    criteria.validate();

    std::string out;
    out += "Your primary function is to analyze academic articles related to ";
    out += criteria.topic;
    out +=
        ". You must evaluate each article's relevance and suitability for inclusion in a "
        "systematic literature review (SLR). Consider the following aspects in your "
        "evaluation:\n\n";
    for (size_t i = 0; i < criteria.items.size(); ++i) {
        out += std::to_string(i + 1);
        out += ". ";
        out += criteria.items[i].heading;
        out += ": ";
        out += criteria.items[i].body;
        out += "\n";
    }
    out += "\n";
    out +=
        "Your analysis should conclude with a clear recommendation on whether the article "
        "should be included in the SLR for further analysis. Provide a very brief "
        "justification for your decision based on the criteria above.\n\n";
    if (criteria.extra_guidance && !is_blank(*criteria.extra_guidance)) {
        out += *criteria.extra_guidance;
        out += "\n\n";
    }
    out += kOutputStyleBlock;
    return out;
}

IncompleteRecord::IncompleteRecord(const std::string& detail)
    : std::runtime_error("record not screenable: " + detail) {}

std::string build_user_message(const ArticleRecord& record) {
    if (!is_complete(record)) {
        throw IncompleteRecord("authors, title and abstract must all be non-blank (title: '" +
                               record.title + "')");
    }
    std::string out;
    out += "Abstract: ";
    out += record.abstract;
    out += "\nAuthors: ";
    out += record.authors;
    out += "\nArticle Title: ";
    out += record.title;
    out += "\nPublication Year: ";
    out += record.publication_year ? std::to_string(*record.publication_year) : "unknown";
    return out;
}

}  // namespace slrscreen
