#include "slrscreen/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace slrscreen {

namespace {

std::string describe(const std::filesystem::path& path, const std::string& verb,
                      const std::string& detail) {
    std::string msg = "cannot " + verb + " " + path.string();
    if (!detail.empty()) msg += ": " + detail;
    return msg;
}

}  // namespace

FileUnreadable::FileUnreadable(const std::filesystem::path& path, const std::string& detail)
    : std::runtime_error(describe(path, "read", detail)) {}

FileUnwritable::FileUnwritable(const std::filesystem::path& path, const std::string& detail)
    : std::runtime_error(describe(path, "write", detail)) {}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileUnreadable(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw FileUnreadable(path, "read error");
    return std::move(buf).str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FileUnwritable(path, "cannot open temp file " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignore;
            std::filesystem::remove(tmp, ignore);
            throw FileUnwritable(path, "write error on temp file");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        std::filesystem::remove(tmp, ignore);
        throw FileUnwritable(path, ec.message());
    }
}

}  // namespace slrscreen
