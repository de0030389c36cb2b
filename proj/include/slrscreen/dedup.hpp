#pragma once

#include <cstddef>
#include <vector>

#include "slrscreen/record.hpp"

namespace slrscreen {

struct DedupReport {
    size_t total_processed = 0;
    size_t removed_empty = 0;
    size_t removed_duplicates = 0;
    size_t kept = 0;
};

struct IncompleteSplit {
    std::vector<ArticleRecord> kept;     // original relative order
    std::vector<ArticleRecord> removed;  // failed is_complete
};

IncompleteSplit remove_incomplete(std::vector<ArticleRecord> records);

struct RemovedDuplicate {
    ArticleRecord record;
    RecordFingerprint kept_fingerprint;  // fingerprint of the record it duplicated
};

struct DedupResult {
    std::vector<ArticleRecord> kept;  // first occurrences, original relative order
    std::vector<RemovedDuplicate> removed;
};

// Two-partition dedup: records with a DOI are duplicates exactly when their
// canonical DOIs match; records without one are duplicates exactly when their
// author/title keys match. A DOI-less record is never deduplicated against a
// DOI-bearing one, even on identical authors and title. First occurrence wins.
DedupResult deduplicate(std::vector<ArticleRecord> records, const DoiNormalization& opts = {});

struct StageOneResult {
    std::vector<ArticleRecord> kept;
    std::vector<ArticleRecord> removed_incomplete;
    std::vector<RemovedDuplicate> removed_duplicates;
    DedupReport report;
};

// merge -> drop incomplete -> deduplicate, with the bookkeeping invariant
// report.total_processed == kept + removed_empty + removed_duplicates.
StageOneResult run_stage_one(std::vector<std::vector<ArticleRecord>> corpora,
                             const DoiNormalization& opts = {});

}  // namespace slrscreen
