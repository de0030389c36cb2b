#include <doctest.h>

#include <chrono>
#include <memory>
#include <random>
#include <stdexcept>

#include "slrscreen/screening.hpp"
#include "support/assessors.hpp"
#include "support/sim_env.hpp"
#include "support/temp_dir.hpp"

using namespace slrscreen;
using namespace std::chrono_literals;

namespace {

ArticleRecord make_record(const std::string& suffix, std::optional<int> year = 2024) {
    ArticleRecord r;
    r.authors = "Author " + suffix;
    r.title = "Title " + suffix;
    r.abstract = "Abstract body " + suffix;
    r.publication_year = year;
    return r;
}

RunConfig test_config() {
    RunConfig cfg;
    cfg.endpoint_url = "http://endpoint.invalid/v1/chat/completions";
    cfg.model_name = "test-model";
    return cfg;
}

ScreeningCriteria tiny_criteria() {
    ScreeningCriteria c;
    c.topic = "anything";
    c.items = {{"Relevance", "is it on-topic"}};
    return c;
}

}  // namespace

TEST_CASE("RunConfig validation rejects out-of-range knobs") {
    RunConfig cfg = test_config();
    CHECK_NOTHROW(cfg.validate());

    cfg = test_config();
    cfg.endpoint_url.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = test_config();
    cfg.temperature = 2.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = test_config();
    cfg.max_retries = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = test_config();
    cfg.rate_limit_per_minute = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = test_config();
    cfg.concurrency = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = test_config();
    cfg.parse_retry = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("transport_retryable: connection loss, 429 and 5xx only") {
    CHECK(transport_retryable({0, "connection refused"}));
    CHECK(transport_retryable({429, "slow down"}));
    CHECK(transport_retryable({500, "oops"}));
    CHECK(transport_retryable({503, "busy"}));
    CHECK_FALSE(transport_retryable({400, "bad request"}));
    CHECK_FALSE(transport_retryable({401, "who are you"}));
    CHECK_FALSE(transport_retryable({404, "no such model"}));
}

TEST_CASE("RateLimiter spaces reservations one interval apart") {
    RateLimiter limiter(60.0);  // 1000 ms interval
    const auto t0 = std::chrono::steady_clock::time_point{};
    CHECK(limiter.reserve(t0) == 0ms);
    CHECK(limiter.reserve(t0) == 1000ms);
    CHECK(limiter.reserve(t0) == 2000ms);
    // A caller arriving after its wait went by queues behind the backlog.
    CHECK(limiter.reserve(t0 + 1000ms) == 2000ms);
    // Once the backlog ages out, reservations are immediate again.
    CHECK(limiter.reserve(t0 + 10s) == 0ms);
    CHECK(limiter.reserve(t0 + 10s) == 1000ms);
}

TEST_CASE("a sub-millisecond interval disables pacing") {
    RateLimiter limiter(100000.0);
    const auto t0 = std::chrono::steady_clock::time_point{};
    for (int i = 0; i < 10; ++i) CHECK(limiter.reserve(t0) == 0ms);
}

TEST_CASE("backoff_delay doubles per attempt and folds in jitter") {
    CHECK(backoff_delay(1000ms, 0, 0.0) == 1000ms);
    CHECK(backoff_delay(1000ms, 1, 0.0) == 2000ms);
    CHECK(backoff_delay(1000ms, 2, 0.0) == 4000ms);
    CHECK(backoff_delay(1000ms, 0, 0.5) == 1500ms);
    CHECK(backoff_delay(1000ms, 1, 0.5) == 3000ms);
    CHECK(backoff_delay(250ms, 3, 0.0) == 2000ms);
    // Out-of-range jitter clamps into [0, 1); the clamped value may round up
    // to exactly the next attempt's floor, never past it.
    CHECK(backoff_delay(1000ms, 0, -3.0) == 1000ms);
    CHECK(backoff_delay(1000ms, 0, 7.0) >= 1999ms);
    CHECK(backoff_delay(1000ms, 0, 7.0) <= 2000ms);
}

TEST_CASE("successive backoff ranges meet only at their endpoints") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto base = 750ms;
    for (int iter = 0; iter < 500; ++iter) {
        const int attempt = static_cast<int>(rng() % 6);
        const auto lo = backoff_delay(base, attempt, 0.0);
        const auto d = backoff_delay(base, attempt, unit(rng));
        const auto next_lo = backoff_delay(base, attempt + 1, 0.0);
        CHECK(d >= lo);
        CHECK(d <= next_lo);
        // Hence any jittered retry sequence is nondecreasing.
        CHECK(backoff_delay(base, attempt + 1, unit(rng)) >= d);
    }
}

TEST_CASE("iso8601_utc formats wall time") {
    CHECK(iso8601_utc(std::chrono::system_clock::from_time_t(0)) == "1970-01-01T00:00:00Z");
    CHECK(iso8601_utc(std::chrono::system_clock::from_time_t(1714566896)) ==
          "2024-05-01T12:34:56Z");
}

TEST_CASE("assess_one: a clean reply decides in one call") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    testsupport::ScriptedAssessor assessor({});
    const ArticleRecord record = make_record("x");

    AssessmentOutcome outcome = assess_one(record, "INSTRUCTION", test_config(), assessor, env);
    CHECK(outcome.status == AssessmentStatus::Decided);
    CHECK(outcome.fingerprint == fingerprint(record));
    REQUIRE(outcome.decision.has_value());
    CHECK(outcome.decision->acceptance == Acceptance::Reject);
    CHECK(outcome.decision->explanation == "fallback");
    CHECK(outcome.request_id == "scripted");
    CHECK(outcome.completed_at == "1970-01-01T00:00:00Z");
    CHECK(outcome.raw_response.find("Explanation: fallback") != std::string::npos);

    CHECK(assessor.calls() == 1);
    CHECK(assessor.instructions().at(0) == "INSTRUCTION");
    CHECK(assessor.messages().at(0) == build_user_message(record));
    CHECK(clock->recorded().empty());  // no backoff, no limiter configured
}

TEST_CASE("assess_one: retryable failures back off, then succeed") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);  // jitter pinned to 0.5
    testsupport::ScriptedAssessor assessor({
        TransportFailure{429, "rate limited"},
        TransportFailure{503, "unavailable"},
    });
    AssessmentOutcome outcome =
        assess_one(make_record("r"), "i", test_config(), assessor, env);
    CHECK(outcome.status == AssessmentStatus::Decided);
    CHECK(assessor.calls() == 3);

    const auto sleeps = clock->recorded();
    REQUIRE(sleeps.size() == 2);
    CHECK(sleeps[0] == 1500ms);  // 1000 * 2^0 * 1.5
    CHECK(sleeps[1] == 3000ms);  // 1000 * 2^1 * 1.5
}

TEST_CASE("assess_one: a non-retryable status is terminal") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    testsupport::ScriptedAssessor assessor({TransportFailure{404, "no such model"}});
    AssessmentOutcome outcome =
        assess_one(make_record("t"), "i", test_config(), assessor, env);
    CHECK(outcome.status == AssessmentStatus::TransportFailed);
    CHECK(outcome.raw_response == "no such model");
    CHECK(outcome.request_id.empty());
    CHECK_FALSE(outcome.decision.has_value());
    CHECK(outcome.completed_at == "1970-01-01T00:00:00Z");
    CHECK(assessor.calls() == 1);
    CHECK(clock->recorded().empty());
}

TEST_CASE("assess_one: retry exhaustion uses exactly max_retries + 1 calls") {
    for (int max_retries : {0, 1, 3, 5}) {
        auto clock = std::make_shared<testsupport::SimClock>();
        ScreenEnv env = testsupport::sim_env(clock);
        testsupport::ScriptedAssessor assessor({}, TransportFailure{429, "always limited"});
        RunConfig cfg = test_config();
        cfg.max_retries = max_retries;

        AssessmentOutcome outcome = assess_one(make_record("e"), "i", cfg, assessor, env);
        CAPTURE(max_retries);
        CHECK(outcome.status == AssessmentStatus::TransportFailed);
        CHECK(outcome.raw_response == "always limited");
        CHECK(assessor.calls() == max_retries + 1);
        CHECK(clock->recorded().size() == static_cast<size_t>(max_retries));
    }
}

TEST_CASE("assess_one: an unparseable reply triggers one corrective re-ask") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    testsupport::ScriptedAssessor assessor({TransportReply{"I cannot comply.", "r1"}});
    const ArticleRecord record = make_record("p");

    AssessmentOutcome outcome = assess_one(record, "i", test_config(), assessor, env);
    CHECK(outcome.status == AssessmentStatus::Decided);
    CHECK(outcome.request_id == "scripted");
    REQUIRE(assessor.calls() == 2);

    const auto messages = assessor.messages();
    CHECK(messages[0] == build_user_message(record));
    CHECK(messages[1] == build_user_message(record) + "\n\n" + kFormatReminder);
}

TEST_CASE("assess_one: parse retries exhausted means ParseFailed") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    testsupport::ScriptedAssessor assessor({}, TransportReply{"gibberish", "g"});
    RunConfig cfg = test_config();
    cfg.parse_retry = 2;

    AssessmentOutcome outcome = assess_one(make_record("g"), "i", cfg, assessor, env);
    CHECK(outcome.status == AssessmentStatus::ParseFailed);
    CHECK(outcome.raw_response == "gibberish");
    CHECK(outcome.request_id == "g");
    CHECK_FALSE(outcome.decision.has_value());
    CHECK(assessor.calls() == 3);
}

TEST_CASE("assess_one: transport death after a reply keeps the last body") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    testsupport::ScriptedAssessor assessor({
        TransportReply{"unparseable text", "r1"},
        TransportFailure{404, "gone"},
    });
    AssessmentOutcome outcome =
        assess_one(make_record("m"), "i", test_config(), assessor, env);
    CHECK(outcome.status == AssessmentStatus::TransportFailed);
    CHECK(outcome.raw_response == "unparseable text");
    CHECK(outcome.request_id == "r1");
    CHECK(assessor.calls() == 2);
}

TEST_CASE("assess_one: the full call budget is (parse_retry+1)*(max_retries+1)") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    testsupport::ScriptedAssessor assessor({
        TransportFailure{429, "w"}, TransportFailure{429, "w"}, TransportReply{"junk", "a"},
        TransportFailure{429, "w"}, TransportFailure{429, "w"}, TransportReply{"junk", "b"},
    });
    RunConfig cfg = test_config();
    cfg.max_retries = 2;
    cfg.parse_retry = 1;

    AssessmentOutcome outcome = assess_one(make_record("b"), "i", cfg, assessor, env);
    CHECK(outcome.status == AssessmentStatus::ParseFailed);
    CHECK(assessor.calls() == 6);
}

TEST_CASE("assess_one honors strict parsing from the environment") {
    auto clock = std::make_shared<testsupport::SimClock>();
    testsupport::ScriptedAssessor assessor({}, TransportReply{"acceptance: yes", "lc"});
    RunConfig cfg = test_config();
    cfg.parse_retry = 0;

    ScreenEnv lenient = testsupport::sim_env(clock);
    CHECK(assess_one(make_record("s"), "i", cfg, assessor, lenient).status ==
          AssessmentStatus::Decided);

    ScreenEnv strict = testsupport::sim_env(clock);
    strict.strict_parse = true;
    CHECK(assess_one(make_record("s"), "i", cfg, assessor, strict).status ==
          AssessmentStatus::ParseFailed);
}

TEST_CASE("assess_one waits out the rate limiter before sending") {
    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    RateLimiter limiter(60.0);
    env.limiter = &limiter;
    testsupport::ScriptedAssessor assessor({});

    assess_one(make_record("1"), "i", test_config(), assessor, env);
    CHECK(clock->recorded().empty());  // first slot is free
    assess_one(make_record("2"), "i", test_config(), assessor, env);
    const auto sleeps = clock->recorded();
    REQUIRE(sleeps.size() == 1);
    CHECK(sleeps[0] == 1000ms);
}

TEST_CASE("screen_corpus emits outcomes aligned with the input order") {
    testsupport::TempDir dir;
    std::vector<ArticleRecord> records;
    for (int i = 0; i < 5; ++i) records.push_back(make_record(std::to_string(i)));

    auto clock = std::make_shared<testsupport::SimClock>();
    ScreenEnv env = testsupport::sim_env(clock);
    std::vector<std::pair<size_t, size_t>> progress;
    env.on_progress = [&](size_t done, size_t total) { progress.push_back({done, total}); };

    testsupport::EchoAssessor assessor;
    RunJournal journal(dir.file("run.jsonl"));
    auto outcomes = screen_corpus(records, tiny_criteria(), test_config(), journal, assessor, env);

    REQUIRE(outcomes.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(outcomes[i].fingerprint == fingerprint(records[i]));
        CHECK(outcomes[i].status == AssessmentStatus::Decided);
    }
    CHECK(assessor.calls() == 5);
    CHECK(journal.size() == 5);
    for (const auto& outcome : outcomes) {
        REQUIRE(journal.find(outcome.fingerprint) != nullptr);
        CHECK(*journal.find(outcome.fingerprint) == outcome);
    }
    REQUIRE(progress.size() == 5);
    CHECK(progress.front() == std::pair<size_t, size_t>{1, 5});
    CHECK(progress.back() == std::pair<size_t, size_t>{5, 5});
}

TEST_CASE("screen_corpus replays a complete journal without any transport") {
    testsupport::TempDir dir;
    const auto path = dir.file("run.jsonl");
    std::vector<ArticleRecord> records;
    for (int i = 0; i < 4; ++i) records.push_back(make_record(std::to_string(i)));

    auto clock = std::make_shared<testsupport::SimClock>();
    std::vector<AssessmentOutcome> first;
    {
        testsupport::EchoAssessor assessor;
        RunJournal journal(path);
        first = screen_corpus(records, tiny_criteria(), test_config(), journal, assessor,
                              testsupport::sim_env(clock));
    }
    testsupport::EchoAssessor untouched;
    RunJournal reloaded = journal_load(path);
    auto second = screen_corpus(records, tiny_criteria(), test_config(), reloaded, untouched,
                                testsupport::sim_env(clock));
    CHECK(second == first);
    CHECK(untouched.calls() == 0);
}

TEST_CASE("screen_corpus only contacts the endpoint for unjournaled records") {
    testsupport::TempDir dir;
    std::vector<ArticleRecord> records;
    for (int i = 0; i < 4; ++i) records.push_back(make_record(std::to_string(i)));

    RunJournal journal(dir.file("run.jsonl"));
    AssessmentOutcome seeded;
    seeded.fingerprint = fingerprint(records[2]);
    seeded.status = AssessmentStatus::ParseFailed;
    seeded.raw_response = "seeded earlier";
    seeded.completed_at = "2024-01-01T00:00:00Z";
    journal_append(journal, seeded);

    auto clock = std::make_shared<testsupport::SimClock>();
    testsupport::EchoAssessor assessor;
    auto outcomes = screen_corpus(records, tiny_criteria(), test_config(), journal, assessor,
                                  testsupport::sim_env(clock));
    CHECK(assessor.calls() == 3);
    CHECK(outcomes[2] == seeded);
    CHECK(outcomes[0].status == AssessmentStatus::Decided);
    CHECK(journal.size() == 4);
}

TEST_CASE("screen_corpus keeps input order under concurrency") {
    testsupport::TempDir dir;
    std::vector<ArticleRecord> records;
    for (int i = 0; i < 24; ++i) records.push_back(make_record(std::to_string(i)));

    auto clock = std::make_shared<testsupport::SimClock>();
    testsupport::EchoAssessor assessor;
    RunJournal journal(dir.file("run.jsonl"));
    RunConfig cfg = test_config();
    cfg.concurrency = 4;
    cfg.rate_limit_per_minute = 100000;

    auto outcomes = screen_corpus(records, tiny_criteria(), cfg, journal, assessor,
                                  testsupport::sim_env(clock));
    REQUIRE(outcomes.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(outcomes[i].fingerprint == fingerprint(records[i]));
    }
    CHECK(assessor.calls() == 24);
    CHECK(journal.size() == 24);
}

TEST_CASE("a crash mid-corpus leaves a journal that resumes cleanly") {
    testsupport::TempDir dir;
    const auto path = dir.file("run.jsonl");
    std::vector<ArticleRecord> records;
    for (int i = 0; i < 6; ++i) records.push_back(make_record(std::to_string(i)));

    auto clock = std::make_shared<testsupport::SimClock>();
    testsupport::EchoAssessor echo;
    {
        testsupport::CrashingAssessor crashing(echo, 3);
        RunJournal journal(path);
        CHECK_THROWS_AS(screen_corpus(records, tiny_criteria(), test_config(), journal,
                                      crashing, testsupport::sim_env(clock)),
                        testsupport::SimulatedCrash);
    }

    RunJournal reloaded = journal_load(path);
    CHECK(reloaded.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(reloaded.contains(fingerprint(records[i])));

    testsupport::EchoAssessor resumed;
    auto outcomes = screen_corpus(records, tiny_criteria(), test_config(), reloaded, resumed,
                                  testsupport::sim_env(clock));
    CHECK(outcomes.size() == 6);
    CHECK(resumed.calls() == 3);
    for (const auto& outcome : outcomes) {
        CHECK(outcome.status == AssessmentStatus::Decided);
    }
}

TEST_CASE("screen_corpus surfaces journal write failures") {
    std::vector<ArticleRecord> records = {make_record("j")};
    auto clock = std::make_shared<testsupport::SimClock>();
    testsupport::EchoAssessor assessor;
    RunJournal journal("/nonexistent-root-dir/nope/run.jsonl");
    CHECK_THROWS_AS(screen_corpus(records, tiny_criteria(), test_config(), journal, assessor,
                                  testsupport::sim_env(clock)),
                    JournalWriteFailed);
}

TEST_CASE("screen_corpus validates its configuration") {
    testsupport::TempDir dir;
    testsupport::EchoAssessor assessor;
    RunJournal journal(dir.file("run.jsonl"));
    RunConfig cfg = test_config();
    cfg.concurrency = 0;
    CHECK_THROWS_AS(
        screen_corpus({make_record("v")}, tiny_criteria(), cfg, journal, assessor),
        std::invalid_argument);
}

TEST_CASE("screening an empty corpus is a no-op") {
    testsupport::TempDir dir;
    testsupport::EchoAssessor assessor;
    RunJournal journal(dir.file("run.jsonl"));
    auto clock = std::make_shared<testsupport::SimClock>();
    auto outcomes = screen_corpus({}, tiny_criteria(), test_config(), journal, assessor,
                                  testsupport::sim_env(clock));
    CHECK(outcomes.empty());
    CHECK(assessor.calls() == 0);
    CHECK(journal.size() == 0);
}
