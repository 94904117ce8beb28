#include "nomapop/report.hpp"

#include "nomapop/config_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace nomapop {

namespace {

std::size_t index_of(const std::vector<std::string>& columns, const std::string& name)
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range("no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::string csv_cell(const Cell& cell)
{
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    if (const auto* i = std::get_if<long long>(&cell)) {
        return std::to_string(*i);
    }
    return std::get<std::string>(cell);
}

std::string csv_field(const Cell& cell)
{
    std::string text = csv_cell(cell);
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (const char ch : text) {
        quoted += ch;
        if (ch == '"') {
            quoted += '"';
        }
    }
    return quoted + '"';
}

nlohmann::ordered_json json_number(double x)
{
    if (std::isfinite(x)) {
        return x;
    }
    // JSON has no infinities; keep them readable.
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

}  // namespace

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw std::logic_error("row width does not match the column count");
    }
    rows.push_back(std::move(row));
}

std::vector<double> Table::numbers(const std::string& column) const
{
    const std::size_t idx = index_of(columns, column);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const Cell& cell = row[idx];
        if (const auto* d = std::get_if<double>(&cell)) {
            out.push_back(*d);
        } else if (const auto* i = std::get_if<long long>(&cell)) {
            out.push_back(static_cast<double>(*i));
        } else {
            throw std::out_of_range("column '" + column + "' is not numeric");
        }
    }
    return out;
}

std::vector<std::string> Table::strings(const std::string& column) const
{
    const std::size_t idx = index_of(columns, column);
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(csv_cell(row[idx]));
    }
    return out;
}

double Table::summary_value(const std::string& key) const
{
    for (const auto& [k, v] : summary) {
        if (k == key) {
            return v;
        }
    }
    throw std::out_of_range("no summary entry '" + key + "'");
}

void write_csv(std::ostream& out, const Table& table, const std::string& provenance)
{
    out << "# " << provenance << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_field(row[i]);
        }
        out << '\n';
    }
    for (const auto& [key, value] : table.summary) {
        out << "# " << key << '=' << format_number(value) << '\n';
    }
}

void write_json(std::ostream& out, const Table& table, const std::string& provenance)
{
    nlohmann::ordered_json doc;
    doc["provenance"] = provenance;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            if (const auto* d = std::get_if<double>(&cell)) {
                obj[table.columns[i]] = json_number(*d);
            } else if (const auto* n = std::get_if<long long>(&cell)) {
                obj[table.columns[i]] = *n;
            } else {
                obj[table.columns[i]] = std::get<std::string>(cell);
            }
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    auto summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.summary) {
        summary[key] = json_number(value);
    }
    doc["summary"] = std::move(summary);
    out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, const std::string& provenance, OutputFormat format)
{
    if (format == OutputFormat::Json) {
        write_json(out, table, provenance);
    } else {
        write_csv(out, table, provenance);
    }
}

}  // namespace nomapop
