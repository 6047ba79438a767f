#include "ltlrl/util/csv.hpp"

#include <cstdio>
#include <ctime>
#include <ostream>

#include "ltlrl/errors.hpp"

namespace ltlrl::util {

std::string csv_num(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> columns,
                     bool timestamp)
    : out_(out), columns_(std::move(columns)) {
  if (columns_.empty()) throw Error("csv: no columns");
  if (timestamp) {
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out_ << "# written " << stamp << "\n";
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns_[i];
  }
  out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw LengthMismatch("csv: row has " + std::to_string(cells.size()) +
                         " cells, header has " + std::to_string(columns_.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace ltlrl::util
