#pragma once

// Tabular experiment output and its CSV / JSON renderings.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nomapop {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Derived totals, written after the rows.
    std::vector<std::pair<std::string, double>> summary;

    void add_row(std::vector<Cell> row);

    /// Numeric column by name; throws std::out_of_range for an unknown name.
    std::vector<double> numbers(const std::string& column) const;
    std::vector<std::string> strings(const std::string& column) const;
    double summary_value(const std::string& key) const;
};

enum class OutputFormat { Csv, Json };

/// `provenance` becomes the leading `# ...` line of the CSV and the
/// "provenance" member of the JSON document.
void write_csv(std::ostream& out, const Table& table, const std::string& provenance);
void write_json(std::ostream& out, const Table& table, const std::string& provenance);
void write_table(std::ostream& out, const Table& table, const std::string& provenance, OutputFormat format);

}  // namespace nomapop
