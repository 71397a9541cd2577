#include "alphaeta/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace aeta {

std::string field_to_string(const Field& f) {
    if (const auto* i = std::get_if<std::int64_t>(&f)) return std::to_string(*i);
    if (const auto* u = std::get_if<std::uint64_t>(&f)) return std::to_string(*u);
    if (const auto* d = std::get_if<double>(&f)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    return std::get<std::string>(f);
}

ResultTable::ResultTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("ResultTable: empty header");
}

void ResultTable::add_row(std::vector<Field> row) {
    if (row.size() != header_.size())
        throw std::invalid_argument("ResultTable: row width does not match header");
    rows_.push_back(std::move(row));
}

std::string ResultTable::csv_string() const {
    std::string out;
    for (std::size_t c = 0; c < header_.size(); ++c) {
        if (c) out += ',';
        out += header_[c];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += field_to_string(row[c]);
        }
        out += '\n';
    }
    return out;
}

void ResultTable::write_csv(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << csv_string();
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

void ResultTable::write_json(const std::filesystem::path& path) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows_) {
        nlohmann::json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const Field& f = row[c];
            if (const auto* i = std::get_if<std::int64_t>(&f))
                obj[header_[c]] = *i;
            else if (const auto* u = std::get_if<std::uint64_t>(&f))
                obj[header_[c]] = *u;
            else if (const auto* d = std::get_if<double>(&f))
                obj[header_[c]] = *d;
            else
                obj[header_[c]] = std::get<std::string>(f);
        }
        arr.push_back(std::move(obj));
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << arr.dump(2) << '\n';
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace aeta
