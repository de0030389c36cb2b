#include "slrscreen/journal.hpp"

#include <cerrno>
#include <cstring>
#include <utility>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "slrscreen/io.hpp"

namespace slrscreen {

namespace {

using nlohmann::json;
// Serialization uses ordered_json so each line starts with the version tag
// and reads in a stable, documented field order.
using nlohmann::ordered_json;

ordered_json decision_to_json(const ScreeningDecision& d) {
    ordered_json j;
    j["acceptance"] = std::string(acceptance_label(d.acceptance));
    j["authors"] = d.echoed_authors;
    j["title"] = d.echoed_title;
    if (d.echoed_year) j["year"] = *d.echoed_year;
    j["methodology"] = methodology_label(d.methodology);
    j["explanation"] = d.explanation;
    return j;
}

ScreeningDecision decision_from_json(const json& j) {
    ScreeningDecision d;
    d.acceptance = j.at("acceptance").get<std::string>() == "Yes" ? Acceptance::Accept
                                                                  : Acceptance::Reject;
    d.echoed_authors = j.at("authors").get<std::string>();
    d.echoed_title = j.at("title").get<std::string>();
    if (j.contains("year")) d.echoed_year = j.at("year").get<int>();
    d.methodology = map_methodology(j.at("methodology").get<std::string>());
    d.explanation = j.at("explanation").get<std::string>();
    return d;
}

std::string serialize_line(const AssessmentOutcome& outcome) {
    ordered_json j;
    j["v"] = 1;
    j["fingerprint"] = outcome.fingerprint.value;
    j["status"] = std::string(status_token(outcome.status));
    j["raw_response"] = outcome.raw_response;
    if (outcome.decision) j["decision"] = decision_to_json(*outcome.decision);
    j["request_id"] = outcome.request_id;
    j["completed_at"] = outcome.completed_at;
    // Replace invalid UTF-8 rather than refusing to journal a weird reply.
    return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

AssessmentOutcome deserialize_line(const std::string& line) {
    json j = json::parse(line);  // throws json::exception on bad input
    if (!j.is_object() || j.at("v").get<int>() != 1) {
        throw std::runtime_error("unsupported journal line version");
    }
    AssessmentOutcome outcome;
    outcome.fingerprint.value = j.at("fingerprint").get<std::string>();
    auto status = status_from_token(j.at("status").get<std::string>());
    if (!status) throw std::runtime_error("unknown status token");
    outcome.status = *status;
    outcome.raw_response = j.at("raw_response").get<std::string>();
    if (j.contains("decision")) outcome.decision = decision_from_json(j.at("decision"));
    outcome.request_id = j.at("request_id").get<std::string>();
    outcome.completed_at = j.at("completed_at").get<std::string>();
    return outcome;
}

}  // namespace

std::string_view status_label(AssessmentStatus status) {
    switch (status) {
    case AssessmentStatus::Decided: return "Decided";
    case AssessmentStatus::ParseFailed: return "ParseFailed";
    case AssessmentStatus::TransportFailed: return "TransportFailed";
    }
    return "TransportFailed";
}

std::string_view status_token(AssessmentStatus status) {
    switch (status) {
    case AssessmentStatus::Decided: return "decided";
    case AssessmentStatus::ParseFailed: return "parse_failed";
    case AssessmentStatus::TransportFailed: return "transport_failed";
    }
    return "transport_failed";
}

std::optional<AssessmentStatus> status_from_token(std::string_view token) {
    if (token == "decided") return AssessmentStatus::Decided;
    if (token == "parse_failed") return AssessmentStatus::ParseFailed;
    if (token == "transport_failed") return AssessmentStatus::TransportFailed;
    return std::nullopt;
}

JournalWriteFailed::JournalWriteFailed(const std::string& detail)
    : std::runtime_error("journal write failed: " + detail) {}

JournalCorrupt::JournalCorrupt(size_t line_number, const std::string& detail)
    : std::runtime_error("journal corrupt at line " + std::to_string(line_number) + ": " +
                         detail),
      line(line_number) {}

RunJournal::RunJournal(std::filesystem::path path) : path_(std::move(path)) {}

RunJournal::~RunJournal() {
    if (file_) std::fclose(file_);
}

RunJournal::RunJournal(RunJournal&& other) noexcept
    : path_(std::move(other.path_)),
      entries_(std::move(other.entries_)),
      file_(std::exchange(other.file_, nullptr)) {}

RunJournal& RunJournal::operator=(RunJournal&& other) noexcept {
    if (this != &other) {
        if (file_) std::fclose(file_);
        path_ = std::move(other.path_);
        entries_ = std::move(other.entries_);
        file_ = std::exchange(other.file_, nullptr);
    }
    return *this;
}

bool RunJournal::contains(const RecordFingerprint& fp) const {
    return entries_.contains(fp.value);
}

const AssessmentOutcome* RunJournal::find(const RecordFingerprint& fp) const {
    auto it = entries_.find(fp.value);
    return it == entries_.end() ? nullptr : &it->second;
}

RunJournal journal_load(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    RunJournal journal(path);
    if (!std::filesystem::exists(path)) return journal;

    const std::string text = read_text_file(path);
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = end + 1;
    }
    size_t last_entry = lines.size();
    while (last_entry > 0 && lines[last_entry - 1].empty()) --last_entry;

    for (size_t i = 0; i < last_entry; ++i) {
        if (lines[i].empty()) continue;
        try {
            AssessmentOutcome outcome = deserialize_line(lines[i]);
            journal.entries_[outcome.fingerprint.value] = std::move(outcome);
        } catch (const std::exception& e) {
            // The last entry line is assumed to be an interrupted append:
            // skipped, so the record is simply screened again. Anywhere else
            // a bad line means real corruption.
            if (i + 1 == last_entry) {
                if (warnings) {
                    warnings->push_back(path.string() + " line " + std::to_string(i + 1) +
                                        ": truncated or malformed final line skipped (" +
                                        e.what() + ")");
                }
            } else {
                throw JournalCorrupt(i + 1, e.what());
            }
        }
    }
    return journal;
}

void journal_append(RunJournal& journal, const AssessmentOutcome& outcome) {
    if (journal.path_.empty()) {
        throw JournalWriteFailed("journal has no backing path");
    }
    if (!journal.file_) {
        journal.file_ = std::fopen(journal.path_.string().c_str(), "ab");
        if (!journal.file_) {
            throw JournalWriteFailed(journal.path_.string() + ": " + std::strerror(errno));
        }
    }
    std::string line = serialize_line(outcome);
    line.push_back('\n');
    if (std::fwrite(line.data(), 1, line.size(), journal.file_) != line.size()) {
        throw JournalWriteFailed(journal.path_.string() + ": short write");
    }
    if (std::fflush(journal.file_) != 0 || ::fsync(::fileno(journal.file_)) != 0) {
        throw JournalWriteFailed(journal.path_.string() + ": " + std::strerror(errno));
    }
    journal.entries_[outcome.fingerprint.value] = outcome;
}

}  // namespace slrscreen
