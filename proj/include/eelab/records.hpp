#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eelab {

/// One self-describing output row: every input echoed next to the computed
/// quantities, so a row can be reinterpreted without external context.
/// Missing quantities stay empty in the CSV.
struct ResultRow {
    std::vector<std::pair<std::string, std::string>> fields;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long value);
    std::optional<std::string> get(const std::string& key) const;
    double get_double(const std::string& key) const;
};

/// Format a double with enough digits to round-trip exactly.
std::string format_double(double value);

inline constexpr int kCsvSchemaVersion = 1;

/// Write rows as CSV with the `# schema=N` header comment. The column set is
/// the union of all keys, inputs first in first-seen order.
void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

/// Read a schema-tagged CSV back into rows.
std::vector<ResultRow> read_csv(const std::filesystem::path& path);

} // namespace eelab
