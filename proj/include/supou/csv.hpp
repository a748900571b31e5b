#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace supou {

// RFC-4180-style output: header row, '.' decimal point, '\n' line endings.
// Doubles are printed with %.17g so a re-run with the same manifest is
// byte-identical. NaN cells are written empty ("absent").
std::string csv_double(double v);

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void header(std::initializer_list<std::string_view> names);
    void row(const std::vector<std::string>& cells);
    void row_doubles(const std::vector<double>& cells);

  private:
    std::ofstream out_;
};

}  // namespace supou
