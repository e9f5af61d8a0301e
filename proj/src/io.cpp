#include "boundedflow/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "boundedflow/errors.hpp"

namespace boundedflow {

std::string format_real(Real v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace boundedflow
