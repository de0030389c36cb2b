#include "slrscreen/fake_assessor.hpp"

#include <cstdio>
#include <thread>

#include <nlohmann/json.hpp>

#include "slrscreen/io.hpp"
#include "slrscreen/text.hpp"

namespace slrscreen {

namespace {

using nlohmann::json;

struct MessageFields {
    std::string abstract;
    std::string authors;
    std::string title;
    std::string year;
};

// Inverts build_user_message. Record fields may contain newlines, but the
// three trailing markers are written by us, so scanning from the end is
// unambiguous.
MessageFields split_user_message(std::string_view msg) {
    constexpr std::string_view kAbstract = "Abstract: ";
    constexpr std::string_view kAuthors = "\nAuthors: ";
    constexpr std::string_view kTitle = "\nArticle Title: ";
    constexpr std::string_view kYear = "\nPublication Year: ";

    // Drop the corrective re-ask paragraph when present.
    const std::string reminder = std::string("\n\n") + kFormatReminder;
    if (msg.ends_with(reminder)) msg.remove_suffix(reminder.size());

    MessageFields fields;
    const size_t year_pos = msg.rfind(kYear);
    const size_t title_pos =
        year_pos == std::string_view::npos ? std::string_view::npos : msg.rfind(kTitle, year_pos);
    const size_t authors_pos =
        title_pos == std::string_view::npos ? std::string_view::npos : msg.rfind(kAuthors, title_pos);
    if (authors_pos == std::string_view::npos || !msg.starts_with(kAbstract)) {
        fields.abstract = std::string(msg);
        return fields;
    }
    fields.abstract = std::string(msg.substr(kAbstract.size(), authors_pos - kAbstract.size()));
    const size_t authors_end = authors_pos + kAuthors.size();
    fields.authors = std::string(msg.substr(authors_end, title_pos - authors_end));
    const size_t title_end = title_pos + kTitle.size();
    fields.title = std::string(msg.substr(title_end, year_pos - title_end));
    fields.year = std::string(msg.substr(year_pos + kYear.size()));
    return fields;
}

void apply_reply_fields(FakeRule& rule, const json& j, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (key == "abstract_contains") {
            rule.abstract_contains = value.get<std::string>();
        } else if (key == "raw_reply") {
            rule.raw_reply = value.get<std::string>();
        } else if (key == "acceptance") {
            rule.acceptance = value.get<std::string>();
        } else if (key == "methodology") {
            rule.methodology = value.get<std::string>();
        } else if (key == "explanation") {
            rule.explanation = value.get<std::string>();
        } else if (key == "authors") {
            rule.authors_override = value.get<std::string>();
        } else if (key == "title") {
            rule.title_override = value.get<std::string>();
        } else if (key == "year") {
            rule.year_override = value.get<std::string>();
        } else if (key == "delay_ms") {
            rule.delay_ms = value.get<int>();
        } else {
            throw std::invalid_argument("fake assessor rules: unknown key '" + key + "' in " +
                                        where);
        }
    }
}

}  // namespace

FakeAssessor FakeAssessor::from_file(const std::filesystem::path& rules_file) {
    const std::string text = read_text_file(rules_file);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw std::invalid_argument("fake assessor rules: " + rules_file.string() +
                                    " is not a JSON object");
    }

    std::vector<FakeRule> rules;
    FakeRule default_rule;
    for (const auto& [key, value] : j.items()) {
        if (key == "default") {
            apply_reply_fields(default_rule, value, "default");
            if (!default_rule.abstract_contains.empty()) {
                throw std::invalid_argument(
                    "fake assessor rules: 'default' cannot have abstract_contains");
            }
        } else if (key == "rules") {
            if (!value.is_array()) {
                throw std::invalid_argument("fake assessor rules: 'rules' must be an array");
            }
            for (size_t i = 0; i < value.size(); ++i) {
                FakeRule rule;
                apply_reply_fields(rule, value[i], "rules[" + std::to_string(i) + "]");
                if (rule.abstract_contains.empty()) {
                    throw std::invalid_argument(
                        "fake assessor rules: rules[" + std::to_string(i) +
                        "] needs a non-empty abstract_contains");
                }
                rules.push_back(std::move(rule));
            }
        } else {
            throw std::invalid_argument("fake assessor rules: unknown top-level key '" + key +
                                        "'");
        }
    }
    return FakeAssessor(std::move(rules), std::move(default_rule));
}

FakeAssessor::FakeAssessor(std::vector<FakeRule> rules, FakeRule default_rule)
    : rules_(std::move(rules)), default_(std::move(default_rule)) {}

TransportResult FakeAssessor::send(const std::string& instruction,
                                   const std::string& user_message) {
    (void)instruction;
    calls_.fetch_add(1);

    const MessageFields fields = split_user_message(user_message);
    const FakeRule* rule = &default_;
    for (const FakeRule& candidate : rules_) {
        if (!candidate.abstract_contains.empty() &&
            contains_ci(fields.abstract, candidate.abstract_contains)) {
            rule = &candidate;
            break;
        }
    }

    if (rule->delay_ms > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(rule->delay_ms));
    }

    TransportReply reply;
    if (rule->raw_reply) {
        reply.body = *rule->raw_reply;
    } else {
        reply.body = "Acceptance: " + rule->acceptance;
        reply.body += "\nAuthors: " + rule->authors_override.value_or(fields.authors);
        reply.body += "\nArticle Title: " + rule->title_override.value_or(fields.title);
        reply.body += "\nPublication Year: " + rule->year_override.value_or(fields.year);
        reply.body += "\nMethodology: " + rule->methodology;
        reply.body += "\nExplanation: " + rule->explanation;
    }

    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(user_message)));
    reply.request_id = std::string("fake-") + std::string(hex).substr(0, 12);
    return reply;
}

}  // namespace slrscreen
