#include "eelab/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eelab {

void ResultRow::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : fields)
        if (k == key) {
            v = value;
            return;
        }
    fields.emplace_back(key, value);
}

void ResultRow::set(const std::string& key, double value) { set(key, format_double(value)); }

void ResultRow::set(const std::string& key, long value) { set(key, std::to_string(value)); }

std::optional<std::string> ResultRow::get(const std::string& key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    return std::nullopt;
}

double ResultRow::get_double(const std::string& key) const {
    auto v = get(key);
    if (!v || v->empty())
        throw std::runtime_error("ResultRow: missing field '" + key + "'");
    return std::stod(*v);
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
    std::vector<std::string> columns;
    for (const auto& row : rows)
        for (const auto& [k, v] : row.fields) {
            bool seen = false;
            for (const auto& c : columns)
                if (c == k) {
                    seen = true;
                    break;
                }
            if (!seen) columns.push_back(k);
        }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    out << "# schema=" << kCsvSchemaVersion << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (auto v = row.get(columns[i])) out << *v;
            out << (i + 1 < columns.size() ? "," : "\n");
        }
    }
}

std::vector<ResultRow> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("# schema=", 0) != 0)
        throw std::runtime_error("read_csv: missing '# schema=' header in " + path.string());
    const int version = std::stoi(line.substr(9));
    if (version != kCsvSchemaVersion)
        throw std::runtime_error("read_csv: unsupported schema version " +
                                 std::to_string(version));
    if (!std::getline(in, line))
        throw std::runtime_error("read_csv: missing column header");
    std::vector<std::string> columns;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) columns.push_back(cell);
    }
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ResultRow row;
        std::stringstream ss(line);
        std::string cell;
        std::size_t i = 0;
        while (i < columns.size() && std::getline(ss, cell, ',')) {
            if (!cell.empty()) row.set(columns[i], cell);
            ++i;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace eelab
