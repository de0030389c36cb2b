#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "slrscreen/screening.hpp"

namespace slrscreen {

// One scripted reply. Matches when `abstract_contains` occurs
// case-insensitively in the incoming abstract; an empty pattern never
// matches (use the default reply instead).
struct FakeRule {
    std::string abstract_contains;
    std::optional<std::string> raw_reply;  // verbatim reply body, overrides the fields below
    std::string acceptance = "No";
    std::string methodology;
    std::string explanation;
    std::optional<std::string> authors_override;
    std::optional<std::string> title_override;
    std::optional<std::string> year_override;
    int delay_ms = 0;
};

// Offline stand-in for the model endpoint, driven by a JSON rules file. By
// default it echoes the record fields it finds in the user message back in
// the prescribed line format, so runs are fully deterministic and make no
// network connections. Request ids are derived from the request payload.
class FakeAssessor : public Assessor {
public:
    // Throws FileUnreadable or std::invalid_argument on a bad rules file.
    static FakeAssessor from_file(const std::filesystem::path& rules_file);

    FakeAssessor(std::vector<FakeRule> rules, FakeRule default_rule);

    FakeAssessor(FakeAssessor&& other) noexcept
        : rules_(std::move(other.rules_)),
          default_(std::move(other.default_)),
          calls_(other.calls_.load()) {}

    TransportResult send(const std::string& instruction,
                         const std::string& user_message) override;

    int calls() const { return calls_.load(); }

private:
    std::vector<FakeRule> rules_;
    FakeRule default_;
    std::atomic<int> calls_{0};
};

}  // namespace slrscreen
