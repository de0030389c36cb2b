#pragma once

#include <string>

#include "slrscreen/screening.hpp"

namespace slrscreen {

// Chat-completions transport. POSTs {model, temperature, messages:[system,
// user]} as JSON with a bearer token and returns the first choice's message
// content. Connection-level trouble maps to status_code 0; a 200 whose body
// does not carry the expected shape is a terminal failure.
class HttpAssessor : public Assessor {
public:
    // Throws std::invalid_argument when the endpoint URL is not http(s).
    HttpAssessor(const RunConfig& config, std::string api_key);

    TransportResult send(const std::string& instruction,
                         const std::string& user_message) override;

private:
    std::string base_;  // scheme://host[:port]
    std::string path_;
    std::string model_;
    double temperature_;
    std::chrono::milliseconds timeout_;
    std::string api_key_;
};

}  // namespace slrscreen
