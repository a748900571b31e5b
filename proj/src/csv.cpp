#include "supou/csv.hpp"

#include <cmath>
#include <cstdio>

#include "supou/errors.hpp"

namespace supou {

std::string csv_double(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw NumericError("cannot open output file '" + path + "'");
}

void CsvWriter::header(std::initializer_list<std::string_view> names) {
    bool first = true;
    for (const auto name : names) {
        if (!first) out_ << ',';
        out_ << name;
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void CsvWriter::row_doubles(const std::vector<double>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out_ << ',';
        out_ << csv_double(cells[i]);
    }
    out_ << '\n';
}

}  // namespace supou
