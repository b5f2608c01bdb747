#pragma once

#include <string>
#include <vector>

#include "cmiknn/types.hpp"

namespace cmiknn::cli {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 reader: quoted fields, doubled-quote escapes, CRLF line ends.
/// Throws std::runtime_error when the file cannot be opened or a quoted
/// field is left open.
CsvTable read_csv(const std::string& path);

struct ExtractedData {
    VariableBlock x, y, z;
    int n_used = 0;
    int n_dropped = 0;
};

/// Pulls the named columns into numeric blocks. A row is dropped when any
/// selected cell is empty or equals `na_string`; any other non-numeric or
/// non-finite cell throws std::invalid_argument, as does an unknown
/// column name. z_cols may be empty (unconditional test).
ExtractedData extract_columns(const CsvTable& table, const std::vector<std::string>& x_cols,
                              const std::vector<std::string>& y_cols,
                              const std::vector<std::string>& z_cols,
                              const std::string& na_string);

/// One CSV field per value, full double round-trip precision.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

/// "a,b,c" -> {"a","b","c"}; empty input gives an empty list.
std::vector<std::string> split_list(const std::string& text);

}  // namespace cmiknn::cli
