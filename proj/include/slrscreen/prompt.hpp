#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrscreen/record.hpp"

namespace slrscreen {

struct CriterionItem {
    std::string heading;
    std::string body;
};

// What the review is about and how candidates are judged. Rendered into the
// system instruction; the expected reply layout the instruction prescribes is
// fixed and matches what parse_decision reads back.
struct ScreeningCriteria {
    std::string topic;
    std::vector<CriterionItem> items;
    std::optional<std::string> extra_guidance;

    // Throws std::invalid_argument on a blank topic, no items, or an item
    // with a blank heading.
    void validate() const;
};

std::string build_instruction(const ScreeningCriteria& criteria);

struct IncompleteRecord : std::runtime_error {
    explicit IncompleteRecord(const std::string& detail);
};

// One user message per record: abstract, authors, title, year on four lines.
// An absent year renders as "unknown". Throws IncompleteRecord unless
// is_complete(record).
std::string build_user_message(const ArticleRecord& record);

}  // namespace slrscreen
