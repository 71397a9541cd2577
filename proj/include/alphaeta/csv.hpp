#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace aeta {

/// One result cell. Doubles are printed with "%.12g", '.' decimal point.
using Field = std::variant<std::int64_t, std::uint64_t, double, std::string>;

std::string field_to_string(const Field& f);

/// Column-checked result table, writable as CSV (header row, LF endings,
/// UTF-8) or as a JSON array of row objects. Output is byte-reproducible
/// for identical inputs.
class ResultTable {
public:
    explicit ResultTable(std::vector<std::string> header);

    void add_row(std::vector<Field> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<Field>>& rows() const { return rows_; }

    void write_csv(const std::filesystem::path& path) const;
    void write_json(const std::filesystem::path& path) const;

    /// CSV bytes without touching the filesystem (used by determinism checks).
    std::string csv_string() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Field>> rows_;
};

}  // namespace aeta
