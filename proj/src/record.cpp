#include "slrscreen/record.hpp"

#include <array>
#include <cstdint>
#include <string_view>

#include "slrscreen/text.hpp"

namespace slrscreen {

namespace {

constexpr std::array<std::string_view, 5> kDoiPrefixes = {
    "doi:",
    "https://doi.org/",
    "http://doi.org/",
    "https://dx.doi.org/",
    "http://dx.doi.org/",
};

std::string hex16(uint64_t value) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

}  // namespace

uint64_t fnv1a64(std::string_view data) {
    uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::optional<std::string> normalize_doi(const std::optional<std::string>& raw,
                                         const DoiNormalization& opts) {
    if (!raw) return std::nullopt;
    std::string s = ascii_lower(trim(*raw));
    if (opts.strip_prefixes) {
        for (;;) {
            const std::string before = s;
            for (std::string_view prefix : kDoiPrefixes) {
                if (s.starts_with(prefix)) {
                    s = trim(s.substr(prefix.size()));
                }
            }
            if (s == before) break;
        }
    }
    if (s.empty()) return std::nullopt;
    return s;
}

std::string normalize_for_key(std::string_view text) {
    return ascii_lower(collapse_whitespace(text));
}

std::string author_title_key(const ArticleRecord& record) {
    return normalize_for_key(record.authors) + "|" + normalize_for_key(record.title);
}

bool is_complete(const ArticleRecord& record) {
    return !is_blank(record.authors) && !is_blank(record.title) && !is_blank(record.abstract);
}

RecordFingerprint fingerprint(const ArticleRecord& record, const DoiNormalization& opts) {
    std::string key;
    if (auto doi = normalize_doi(record.doi, opts)) {
        key = "doi:" + *doi;
    } else {
        key = "at:" + author_title_key(record);
    }
    return {hex16(fnv1a64(key))};
}

}  // namespace slrscreen
