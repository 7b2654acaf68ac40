#ifndef EHCDF_CSV_HPP
#define EHCDF_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ehcdf {

/// RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& s);

/// Shortest round-trip decimal ("%.17g"); "NA" for non-finite values.
std::string format_real(double v);

/// Writes CRLF-terminated RFC-4180 rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace ehcdf

#endif  // EHCDF_CSV_HPP
