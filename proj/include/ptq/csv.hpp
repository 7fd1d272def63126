// CSV record format shared by every data file the tools emit.
//
//   # key=value            zero or more metadata lines
//   name1,name2,...        header
//   v11,v12,...            data rows
//
// Reals are written with 17 significant digits so that parsing a file back
// reproduces every double bit for bit.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ptq/core.hpp"

namespace ptq {

/// Raised for unreadable/unwritable files; the message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, std::string>;

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
    void add_meta(std::string key, double value);
    void add_row(const std::vector<Cell>& cells);

    /// Index of a header column; throws ValidationError if absent.
    std::size_t column(const std::string& name) const;
    /// Column parsed as reals.
    std::vector<double> real_column(const std::string& name) const;
    /// Metadata value by key; throws ValidationError if absent.
    const std::string& meta(const std::string& key) const;
};

std::string format_real(double value);
double parse_real(const std::string& text);

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

void write_csv_file(const std::string& path, const CsvTable& table);
CsvTable read_csv_file(const std::string& path);

/// One z column followed by one value column per curve. All curves must share
/// the same z samples.
CsvTable curves_to_table(const std::vector<DecayCurve>& curves);

/// Inverse of curves_to_table: the first column is z, every other column a curve.
std::vector<DecayCurve> table_to_curves(const CsvTable& table);

}  // namespace ptq
