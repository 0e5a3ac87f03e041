#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qlat {

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 12 significant digits, comma separated, one header line.
std::string format_number(double v);

class CsvTable {
 public:
  using Cell = std::variant<double, long, std::string>;

  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

// Throws OutputError when the file cannot be written.
void write_text(const std::string& path, const std::string& text);

}  // namespace qlat
