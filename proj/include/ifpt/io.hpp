// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ifpt {

/// 17 significant digits, round-trips binary64.
std::string format_double(double v);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Simple CSV builder: header once, then rows of cells joined by commas.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    const std::string& str() const noexcept { return text_; }

private:
    std::string text_;
    std::size_t columns_;
};

}  // namespace ifpt
