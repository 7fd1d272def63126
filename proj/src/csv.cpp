#include "ptq/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace ptq {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void check_field(const std::string& text) {
    if (text.find_first_of(",\n\r") != std::string::npos) {
        throw ValidationError(fmt::format("CSV field '{}' contains a separator", text));
    }
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

double parse_real(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ValidationError(fmt::format("'{}' is not a number", text));
    return value;
}

void CsvTable::add_meta(std::string key, double value) { add_meta(std::move(key), format_real(value)); }

void CsvTable::add_row(const std::vector<Cell>& cells) {
    if (cells.size() != header.size()) {
        throw ValidationError(fmt::format("row has {} cells but header has {}", cells.size(), header.size()));
    }
    std::vector<std::string> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
        row.push_back(std::holds_alternative<double>(c) ? format_real(std::get<double>(c)) : std::get<std::string>(c));
    }
    rows.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ValidationError(fmt::format("no column named '{}'", name));
}

std::vector<double> CsvTable::real_column(const std::string& name) const {
    const std::size_t idx = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(parse_real(row.at(idx)));
    return out;
}

const std::string& CsvTable::meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    throw ValidationError(fmt::format("no metadata key '{}'", key));
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (const auto& [key, value] : table.metadata) {
        check_field(key);
        check_field(value);
        out << "# " << key << '=' << value << '\n';
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        check_field(table.header[i]);
        out << (i ? "," : "") << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header && line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ValidationError(fmt::format("malformed metadata line '{}'", line));
            table.add_meta(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (!have_header) {
            table.header = split_fields(line);
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        auto row = split_fields(line);
        if (row.size() != table.header.size()) {
            throw ValidationError(fmt::format("row '{}' does not match the header width", line));
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ValidationError("CSV input has no header row");
    return table;
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
    write_csv(out, table);
    out.flush();
    if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path));
    return read_csv(in);
}

CsvTable curves_to_table(const std::vector<DecayCurve>& curves) {
    if (curves.empty()) throw ValidationError("no curves to tabulate");
    CsvTable table;
    table.header.push_back("z");
    for (const auto& c : curves) {
        if (c.size() != curves.front().size()) throw ValidationError("curves have different lengths");
        table.header.push_back(c.label());
    }
    for (std::size_t i = 0; i < curves.front().size(); ++i) {
        std::vector<Cell> row{curves.front()[i].z};
        for (const auto& c : curves) {
            if (c[i].z != curves.front()[i].z) throw ValidationError("curves are sampled on different grids");
            row.emplace_back(c[i].value);
        }
        table.add_row(row);
    }
    return table;
}

std::vector<DecayCurve> table_to_curves(const CsvTable& table) {
    if (table.header.size() < 2) throw ValidationError("a curve table needs a z column and a value column");
    std::vector<double> z;
    z.reserve(table.rows.size());
    for (const auto& row : table.rows) z.push_back(parse_real(row[0]));
    std::vector<DecayCurve> out;
    for (std::size_t col = 1; col < table.header.size(); ++col) {
        std::vector<CurvePoint> pts;
        pts.reserve(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) pts.push_back({z[i], parse_real(table.rows[i][col])});
        out.emplace_back(table.header[col], std::move(pts));
    }
    return out;
}

}  // namespace ptq
