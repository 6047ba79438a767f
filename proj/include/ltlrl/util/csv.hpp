#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltlrl::util {

/* Formats a double the way every CSV in this project does: shortest form
 * with ten significant digits.  Integral values print without a decimal
 * point, so column types stay stable across rows. */
std::string csv_num(double value);

/* Minimal CSV emitter with a fixed column set.  The header row is written
 * on construction; an optional leading comment line carries the wall-clock
 * timestamp, which reproducibility-sensitive callers suppress.  Cells are
 * written verbatim, so numeric cells should go through csv_num. */
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns,
            bool timestamp = false);

  void comment(const std::string& text);
  void row(const std::vector<std::string>& cells);
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::ostream& out_;
  std::vector<std::string> columns_;
};

}  // namespace ltlrl::util
