#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace slrscreen {

struct FileUnreadable : std::runtime_error {
    explicit FileUnreadable(const std::filesystem::path& path, const std::string& detail = {});
};

struct FileUnwritable : std::runtime_error {
    explicit FileUnwritable(const std::filesystem::path& path, const std::string& detail = {});
};

std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over the target, so the target
// is never observable half-written.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace slrscreen
