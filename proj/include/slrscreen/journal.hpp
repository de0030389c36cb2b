#pragma once

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "slrscreen/outcome.hpp"

namespace slrscreen {

struct JournalWriteFailed : std::runtime_error {
    explicit JournalWriteFailed(const std::string& detail);
};

struct JournalCorrupt : std::runtime_error {
    JournalCorrupt(size_t line, const std::string& detail);
    size_t line;
};

// Append-only NDJSON record of completed assessments, keyed by record
// fingerprint. Each append is flushed and fsynced before it is considered
// durable, so after a crash the journal holds every outcome that was ever
// reported, at worst plus one truncated trailing line. Not thread-safe;
// screen_corpus funnels all access through one thread.
class RunJournal {
public:
    RunJournal() = default;
    explicit RunJournal(std::filesystem::path path);
    ~RunJournal();

    RunJournal(RunJournal&& other) noexcept;
    RunJournal& operator=(RunJournal&& other) noexcept;
    RunJournal(const RunJournal&) = delete;
    RunJournal& operator=(const RunJournal&) = delete;

    const std::filesystem::path& path() const { return path_; }
    size_t size() const { return entries_.size(); }
    bool contains(const RecordFingerprint& fp) const;
    // Pointer invalidated by the next append.
    const AssessmentOutcome* find(const RecordFingerprint& fp) const;
    const std::unordered_map<std::string, AssessmentOutcome>& entries() const {
        return entries_;
    }

private:
    friend RunJournal journal_load(const std::filesystem::path&, std::vector<std::string>*);
    friend void journal_append(RunJournal&, const AssessmentOutcome&);

    std::filesystem::path path_;
    std::unordered_map<std::string, AssessmentOutcome> entries_;
    std::FILE* file_ = nullptr;
};

// Loads an existing journal; a missing file is an empty journal. On replayed
// fingerprints the last write wins. A malformed final line is assumed to be a
// crash artifact: skipped, with a note appended to *warnings when given.
// A malformed line anywhere else throws JournalCorrupt.
RunJournal journal_load(const std::filesystem::path& path,
                        std::vector<std::string>* warnings = nullptr);

// Appends one outcome and makes it durable (flush + fsync) before returning.
// Throws JournalWriteFailed if durability cannot be established.
void journal_append(RunJournal& journal, const AssessmentOutcome& outcome);

}  // namespace slrscreen
