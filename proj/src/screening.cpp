#include "slrscreen/screening.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <ctime>
#include <exception>
#include <random>
#include <thread>

namespace slrscreen {

void RunConfig::validate() const {
    if (endpoint_url.empty()) throw std::invalid_argument("endpoint_url is empty");
    if (model_name.empty()) throw std::invalid_argument("model_name is empty");
    if (temperature < 0.0 || temperature > 2.0) {
        throw std::invalid_argument("temperature must be in [0, 2]");
    }
    if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
    if (base_backoff.count() < 0) throw std::invalid_argument("base_backoff must be >= 0");
    if (rate_limit_per_minute <= 0.0) {
        throw std::invalid_argument("rate_limit_per_minute must be > 0");
    }
    if (concurrency < 1) throw std::invalid_argument("concurrency must be >= 1");
    if (request_timeout.count() <= 0) throw std::invalid_argument("request_timeout must be > 0");
    if (parse_retry < 0) throw std::invalid_argument("parse_retry must be >= 0");
}

bool transport_retryable(const TransportFailure& failure) {
    return failure.status_code == 0 || failure.status_code == 429 ||
           failure.status_code >= 500;
}

RateLimiter::RateLimiter(double per_minute) {
    if (per_minute > 0.0) {
        interval_ = std::chrono::milliseconds(static_cast<long long>(60000.0 / per_minute));
    }
}

std::chrono::milliseconds RateLimiter::reserve(std::chrono::steady_clock::time_point now) {
    std::lock_guard lock(mutex_);
    if (interval_.count() <= 0) return std::chrono::milliseconds(0);
    auto slot = next_free_ && *next_free_ > now ? *next_free_ : now;
    next_free_ = slot + interval_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(slot - now);
}

std::chrono::milliseconds backoff_delay(std::chrono::milliseconds base, int attempt,
                                        double jitter01) {
    if (jitter01 < 0.0) jitter01 = 0.0;
    if (jitter01 >= 1.0) jitter01 = std::nextafter(1.0, 0.0);
    const double scaled =
        static_cast<double>(base.count()) * std::ldexp(1.0 + jitter01, attempt);
    return std::chrono::milliseconds(static_cast<long long>(scaled));
}

std::string iso8601_utc(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ScreenEnv::ScreenEnv()
    : mono_now([] { return std::chrono::steady_clock::now(); }),
      sleep_for([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }),
      wall_timestamp([] { return iso8601_utc(std::chrono::system_clock::now()); }),
      jitter01([] {
          thread_local std::mt19937_64 engine(
              std::random_device{}() ^
              static_cast<uint64_t>(
                  std::hash<std::thread::id>{}(std::this_thread::get_id())));
          return std::uniform_real_distribution<double>(0.0, 1.0)(engine);
      }) {}

namespace {

// One ask: transport attempts with backoff until a reply, a terminal
// failure, or retry exhaustion.
struct AskResult {
    std::optional<TransportReply> reply;
    TransportFailure last_failure;  // meaningful when !reply
};

AskResult ask_once(Assessor& transport, const std::string& instruction,
                   const std::string& user_message, const RunConfig& config,
                   const ScreenEnv& env) {
    AskResult result;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (attempt > 0) {
            env.sleep_for(backoff_delay(config.base_backoff, attempt - 1, env.jitter01()));
        }
        if (env.limiter) {
            auto wait = env.limiter->reserve(env.mono_now());
            if (wait.count() > 0) env.sleep_for(wait);
        }
        TransportResult r = transport.send(instruction, user_message);
        if (auto* reply = std::get_if<TransportReply>(&r)) {
            result.reply = std::move(*reply);
            return result;
        }
        result.last_failure = std::move(std::get<TransportFailure>(r));
        if (!transport_retryable(result.last_failure)) return result;
    }
    return result;
}

}  // namespace

AssessmentOutcome assess_one(const ArticleRecord& record, const std::string& instruction,
                             const RunConfig& config, Assessor& transport,
                             const ScreenEnv& env) {
    AssessmentOutcome outcome;
    outcome.fingerprint = fingerprint(record, env.doi);

    const std::string base_message = build_user_message(record);
    ParseOptions parse_opts{.strict = env.strict_parse};

    std::string last_body;
    bool got_reply = false;

    for (int ask = 0; ask <= config.parse_retry; ++ask) {
        std::string message = base_message;
        if (ask > 0) {
            message += "\n\n";
            message += kFormatReminder;
        }
        AskResult asked = ask_once(transport, instruction, message, config, env);
        if (!asked.reply) {
            // Transport gave out on this ask; the record's final state is a
            // transport failure even if an earlier ask returned text.
            outcome.status = AssessmentStatus::TransportFailed;
            outcome.raw_response = got_reply ? last_body : asked.last_failure.message;
            outcome.completed_at = env.wall_timestamp();
            return outcome;
        }
        last_body = asked.reply->body;
        got_reply = true;
        outcome.request_id = asked.reply->request_id;
        outcome.raw_response = last_body;

        auto parsed = parse_decision(last_body, parse_opts);
        if (auto* decision = std::get_if<ScreeningDecision>(&parsed)) {
            outcome.status = AssessmentStatus::Decided;
            outcome.decision = std::move(*decision);
            outcome.completed_at = env.wall_timestamp();
            return outcome;
        }
    }

    outcome.status = AssessmentStatus::ParseFailed;
    outcome.completed_at = env.wall_timestamp();
    return outcome;
}

namespace {

struct Slot {
    std::optional<AssessmentOutcome> outcome;
    bool fresh = false;  // true when produced this run (needs journaling)
    bool done = false;
};

}  // namespace

std::vector<AssessmentOutcome> screen_corpus(const std::vector<ArticleRecord>& records,
                                             const ScreeningCriteria& criteria,
                                             const RunConfig& config, RunJournal& journal,
                                             Assessor& transport, const ScreenEnv& env) {
    config.validate();
    const std::string instruction = build_instruction(criteria);

    RateLimiter local_limiter(config.rate_limit_per_minute);
    ScreenEnv run_env = env;
    if (!run_env.limiter) run_env.limiter = &local_limiter;

    const size_t n = records.size();
    std::vector<Slot> slots(n);

    // The journal is consulted before any worker starts and written only by
    // this (emitting) thread afterwards, so workers never touch it.
    std::vector<size_t> pending;
    pending.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (const AssessmentOutcome* replay = journal.find(fingerprint(records[i], run_env.doi))) {
            slots[i].outcome = *replay;
            slots[i].done = true;
        } else {
            pending.push_back(i);
        }
    }

    std::mutex mutex;
    std::condition_variable slot_ready;
    std::atomic<size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr worker_error;

    auto worker = [&] {
        while (!abort.load()) {
            const size_t q = next.fetch_add(1);
            if (q >= pending.size()) return;
            const size_t i = pending[q];
            try {
                AssessmentOutcome outcome =
                    assess_one(records[i], instruction, config, transport, run_env);
                std::lock_guard lock(mutex);
                slots[i].outcome = std::move(outcome);
                slots[i].fresh = true;
                slots[i].done = true;
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!worker_error) worker_error = std::current_exception();
                abort.store(true);
            }
            slot_ready.notify_all();
        }
    };

    const size_t worker_count =
        std::min<size_t>(static_cast<size_t>(config.concurrency), pending.size());
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (size_t w = 0; w < worker_count; ++w) workers.emplace_back(worker);

    auto drain = [&] {
        abort.store(true);
        for (auto& t : workers) {
            if (t.joinable()) t.join();
        }
    };

    std::vector<AssessmentOutcome> outcomes;
    outcomes.reserve(n);
    try {
        for (size_t i = 0; i < n; ++i) {
            std::unique_lock lock(mutex);
            slot_ready.wait(lock, [&] { return slots[i].done || abort.load(); });
            if (!slots[i].done) break;  // aborted with this slot unfilled
            AssessmentOutcome outcome = std::move(*slots[i].outcome);
            const bool fresh = slots[i].fresh;
            lock.unlock();
            if (fresh) journal_append(journal, outcome);
            outcomes.push_back(std::move(outcome));
            if (run_env.on_progress) run_env.on_progress(outcomes.size(), n);
        }
    } catch (...) {
        drain();
        throw;
    }
    drain();
    {
        std::lock_guard lock(mutex);
        if (worker_error) std::rethrow_exception(worker_error);
    }
    return outcomes;
}

}  // namespace slrscreen
