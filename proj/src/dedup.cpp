#include "slrscreen/dedup.hpp"

#include <string>
#include <unordered_map>
#include <utility>

#include "slrscreen/ingest.hpp"

namespace slrscreen {

IncompleteSplit remove_incomplete(std::vector<ArticleRecord> records) {
    IncompleteSplit split;
    for (auto& record : records) {
        if (is_complete(record)) {
            split.kept.push_back(std::move(record));
        } else {
            split.removed.push_back(std::move(record));
        }
    }
    return split;
}

DedupResult deduplicate(std::vector<ArticleRecord> records, const DoiNormalization& opts) {
    DedupResult result;
    std::unordered_map<std::string, RecordFingerprint> seen_doi;
    std::unordered_map<std::string, RecordFingerprint> seen_key;

    for (auto& record : records) {
        auto doi = normalize_doi(record.doi, opts);
        auto& seen = doi ? seen_doi : seen_key;
        std::string key = doi ? std::move(*doi) : author_title_key(record);

        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), fingerprint(record, opts));
            result.kept.push_back(std::move(record));
        } else {
            result.removed.push_back({std::move(record), it->second});
        }
    }
    return result;
}

StageOneResult run_stage_one(std::vector<std::vector<ArticleRecord>> corpora,
                             const DoiNormalization& opts) {
    std::vector<ArticleRecord> merged = merge_sources(std::move(corpora));
    const size_t total = merged.size();

    IncompleteSplit complete = remove_incomplete(std::move(merged));
    DedupResult deduped = deduplicate(std::move(complete.kept), opts);

    StageOneResult result;
    result.report.total_processed = total;
    result.report.removed_empty = complete.removed.size();
    result.report.removed_duplicates = deduped.removed.size();
    result.report.kept = deduped.kept.size();
    result.kept = std::move(deduped.kept);
    result.removed_incomplete = std::move(complete.removed);
    result.removed_duplicates = std::move(deduped.removed);
    return result;
}

}  // namespace slrscreen
