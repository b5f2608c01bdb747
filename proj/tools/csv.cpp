#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmiknn::cli {

namespace {

std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // A lone blank line is not a record.
        if (record.size() == 1 && record[0].empty()) {
            record.clear();
            return;
        }
        records.push_back(std::move(record));
        record = {};
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (in_quotes) {
            if (ch == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                if (!field_started) {
                    in_quotes = true;
                    field_started = true;
                } else {
                    field.push_back(ch);
                }
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                break;
            default:
                field_started = true;
                field.push_back(ch);
        }
    }
    if (in_quotes) {
        throw std::runtime_error("csv: unterminated quoted field");
    }
    if (field_started || !field.empty() || !record.empty()) {
        end_record();
    }
    return records;
}

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quoted(const std::string& field) {
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out += '"';
    return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    auto records = parse_records(buffer.str());
    if (records.empty()) {
        throw std::runtime_error("csv: no header row in " + path);
    }
    CsvTable table;
    table.header = std::move(records.front());
    table.rows.assign(std::make_move_iterator(records.begin() + 1),
                      std::make_move_iterator(records.end()));
    return table;
}

ExtractedData extract_columns(const CsvTable& table, const std::vector<std::string>& x_cols,
                              const std::vector<std::string>& y_cols,
                              const std::vector<std::string>& z_cols,
                              const std::string& na_string) {
    auto index_of = [&](const std::string& name) {
        for (std::size_t j = 0; j < table.header.size(); ++j) {
            if (table.header[j] == name) return static_cast<int>(j);
        }
        throw std::invalid_argument("unknown column: " + name);
    };

    std::vector<int> indices;
    for (const auto& name : x_cols) indices.push_back(index_of(name));
    for (const auto& name : y_cols) indices.push_back(index_of(name));
    for (const auto& name : z_cols) indices.push_back(index_of(name));
    if (x_cols.empty() || y_cols.empty()) {
        throw std::invalid_argument("x and y column lists must be nonempty");
    }

    std::vector<std::vector<double>> kept;
    int dropped = 0;
    std::vector<double> row_values(indices.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        bool missing = false;
        for (std::size_t q = 0; q < indices.size(); ++q) {
            const std::size_t j = static_cast<std::size_t>(indices[q]);
            if (j >= row.size() || row[j].empty() || row[j] == na_string) {
                missing = true;
                break;
            }
            const std::string& cell = row[j];
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() + cell.size()) {
                throw std::invalid_argument("non-numeric cell '" + cell + "' in row " +
                                            std::to_string(r + 2) + ", column " +
                                            table.header[j]);
            }
            if (!std::isfinite(value)) {
                throw std::invalid_argument("non-finite value in row " + std::to_string(r + 2) +
                                            ", column " + table.header[j]);
            }
            row_values[q] = value;
        }
        if (missing) {
            ++dropped;
            continue;
        }
        kept.push_back(row_values);
    }

    const int n = static_cast<int>(kept.size());
    ExtractedData out;
    out.n_used = n;
    out.n_dropped = dropped;
    out.x = VariableBlock(n, static_cast<int>(x_cols.size()));
    out.y = VariableBlock(n, static_cast<int>(y_cols.size()));
    out.z = VariableBlock(n, static_cast<int>(z_cols.size()));
    for (int i = 0; i < n; ++i) {
        std::size_t q = 0;
        for (int j = 0; j < out.x.cols(); ++j) out.x.at(i, j) = kept[static_cast<std::size_t>(i)][q++];
        for (int j = 0; j < out.y.cols(); ++j) out.y.at(i, j) = kept[static_cast<std::size_t>(i)][q++];
        for (int j = 0; j < out.z.cols(); ++j) out.z.at(i, j) = kept[static_cast<std::size_t>(i)][q++];
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw std::runtime_error("cannot write file: " + path);
    }
    auto write_record = [&](const std::vector<std::string>& record) {
        for (std::size_t j = 0; j < record.size(); ++j) {
            if (j > 0) stream << ',';
            stream << (needs_quoting(record[j]) ? quoted(record[j]) : record[j]);
        }
        stream << "\r\n";
    };
    write_record(header);
    for (const auto& row : rows) write_record(row);
    if (!stream) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace cmiknn::cli
