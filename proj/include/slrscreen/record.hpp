#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slrscreen {

inline constexpr int kMinPublicationYear = 1500;
inline constexpr int kMaxPublicationYear = 2100;

// One bibliographic entry as exported by a literature database. The five
// mapped fields are held directly; any other export columns ride along in
// `extras` in file order so nothing is lost between pipeline stages.
struct ArticleRecord {
    std::string authors;
    std::string title;
    std::string abstract;
    std::optional<std::string> doi;      // raw, exactly as exported
    std::optional<int> publication_year; // absent when blank or unparseable
    std::string source;                  // label of the originating export
    std::vector<std::pair<std::string, std::string>> extras;

    bool operator==(const ArticleRecord&) const = default;
};

struct DoiNormalization {
    // Strip "doi:" and doi.org / dx.doi.org URL prefixes before comparing.
    bool strip_prefixes = true;
};

// Canonical DOI: trimmed, ASCII-lowercased, prefixes stripped to a fixed
// point. Absent or effectively empty input yields absent. Idempotent.
std::optional<std::string> normalize_doi(const std::optional<std::string>& raw,
                                         const DoiNormalization& opts = {});

// Fallback dedup identity for records without a DOI: case-folded,
// whitespace-collapsed authors and title joined with '|'.
std::string author_title_key(const ArticleRecord& record);

// Shared normalization behind author_title_key and echo comparison.
std::string normalize_for_key(std::string_view text);

// Authors, title and abstract all non-blank.
bool is_complete(const ArticleRecord& record);

uint64_t fnv1a64(std::string_view data);

// 16 lowercase hex digits of a 64-bit FNV-1a over the record's dedup
// identity. DOI-bearing records hash "doi:" + canonical DOI, the rest hash
// "at:" + author_title_key, so the two domains cannot collide. Two records
// get equal fingerprints exactly when dedup would consider them duplicates.
struct RecordFingerprint {
    std::string value;
    auto operator<=>(const RecordFingerprint&) const = default;
};

RecordFingerprint fingerprint(const ArticleRecord& record, const DoiNormalization& opts = {});

}  // namespace slrscreen
