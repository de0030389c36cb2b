#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "slrscreen/decision.hpp"
#include "slrscreen/record.hpp"

namespace slrscreen {

enum class AssessmentStatus { Decided, ParseFailed, TransportFailed };

// Column-facing label: "Decided" / "ParseFailed" / "TransportFailed".
std::string_view status_label(AssessmentStatus status);

// Journal-facing token: "decided" / "parse_failed" / "transport_failed".
std::string_view status_token(AssessmentStatus status);
std::optional<AssessmentStatus> status_from_token(std::string_view token);

// Final result of screening one record. The raw model text is always kept so
// a reply can be re-parsed later without re-contacting the endpoint.
struct AssessmentOutcome {
    RecordFingerprint fingerprint;
    AssessmentStatus status = AssessmentStatus::TransportFailed;
    std::string raw_response;                  // last body received, or last transport error
    std::optional<ScreeningDecision> decision; // present iff status == Decided
    std::string request_id;
    std::string completed_at;                  // ISO 8601 UTC

    bool operator==(const AssessmentOutcome&) const = default;
};

}  // namespace slrscreen
