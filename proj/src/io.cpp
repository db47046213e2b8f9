// SPDX-License-Identifier: MIT
#include "ifpt/io.hpp"

#include "ifpt/error.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace ifpt {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorKind::ConfigError, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(ErrorKind::ConfigError, "cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : columns_(header.size())
{
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_) {
        throw Error(ErrorKind::LengthMismatch, "CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                                                   std::to_string(columns_));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

}  // namespace ifpt
