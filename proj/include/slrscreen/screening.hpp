#pragma once

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slrscreen/journal.hpp"
#include "slrscreen/outcome.hpp"
#include "slrscreen/prompt.hpp"
#include "slrscreen/record.hpp"

namespace slrscreen {

struct RunConfig {
    std::string endpoint_url;
    std::string model_name;
    double temperature = 0.0;
    int max_retries = 5;  // extra transport attempts after the first
    std::chrono::milliseconds base_backoff{1000};
    double rate_limit_per_minute = 60.0;
    int concurrency = 1;
    std::chrono::milliseconds request_timeout{120000};
    int parse_retry = 1;  // corrective re-asks after an unparseable reply

    // Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct TransportReply {
    std::string body;        // the model's message text
    std::string request_id;  // provider-assigned id, may be empty
};

struct TransportFailure {
    int status_code = 0;  // HTTP status; 0 for connection-level failures
    std::string message;
};

using TransportResult = std::variant<TransportReply, TransportFailure>;

// 429, any 5xx, and connection-level failures are worth retrying; other
// HTTP statuses are terminal for the record.
bool transport_retryable(const TransportFailure& failure);

// One round trip to a model endpoint. Implementations must tolerate
// concurrent send() calls from multiple threads.
class Assessor {
public:
    virtual ~Assessor() = default;
    virtual TransportResult send(const std::string& instruction,
                                 const std::string& user_message) = 0;
};

// Paces callers to a fixed request rate. reserve() hands out the wait the
// caller must observe before proceeding; the caller does the sleeping, which
// keeps the limiter usable under a simulated clock. Thread-safe.
class RateLimiter {
public:
    explicit RateLimiter(double per_minute);
    std::chrono::milliseconds reserve(std::chrono::steady_clock::time_point now);

private:
    std::mutex mutex_;
    std::chrono::milliseconds interval_{0};
    std::optional<std::chrono::steady_clock::time_point> next_free_;
};

// Attempt k (0-based) waits base * 2^k * (1 + u) with u ~ U[0,1). Successive
// attempts' delay ranges meet only at their endpoints, so a retry sequence's
// delays are nondecreasing while still desynchronizing concurrent clients.
std::chrono::milliseconds backoff_delay(std::chrono::milliseconds base, int attempt,
                                        double jitter01);

std::string iso8601_utc(std::chrono::system_clock::time_point tp);

// Clock, sleep and RNG seams plus screening knobs. Defaults run in real time;
// tests substitute a simulated clock whose sleep_for advances mono_now.
struct ScreenEnv {
    std::function<std::chrono::steady_clock::time_point()> mono_now;
    std::function<void(std::chrono::milliseconds)> sleep_for;
    std::function<std::string()> wall_timestamp;
    std::function<double()> jitter01;
    std::function<void(size_t done, size_t total)> on_progress;  // may be null
    bool strict_parse = false;
    DoiNormalization doi;
    RateLimiter* limiter = nullptr;  // not owned; may be null

    ScreenEnv();
};

// Appended as a second paragraph to the user message on corrective re-asks.
inline constexpr const char* kFormatReminder =
    "Reply using exactly the prescribed line format.";

// Screens one record to a final outcome. Performs up to
// (parse_retry + 1) * (max_retries + 1) transport calls: each ask retries
// retryable transport failures with backoff, and an unparseable reply
// triggers a corrective re-ask. Never throws on transport or parse trouble;
// those become the outcome's status.
AssessmentOutcome assess_one(const ArticleRecord& record, const std::string& instruction,
                             const RunConfig& config, Assessor& transport,
                             const ScreenEnv& env = {});

// Screens every record not already in the journal, with config.concurrency
// worker threads sharing one rate limiter. Journaled fingerprints are
// replayed verbatim, never re-sent. Fresh outcomes are journaled before they
// are emitted, and the returned vector is aligned with `records`. Propagates
// the first worker/journal exception after draining the pool; the journal
// then still holds every outcome emitted so far, so a rerun resumes.
std::vector<AssessmentOutcome> screen_corpus(const std::vector<ArticleRecord>& records,
                                             const ScreeningCriteria& criteria,
                                             const RunConfig& config, RunJournal& journal,
                                             Assessor& transport, const ScreenEnv& env = {});

}  // namespace slrscreen
