#pragma once

#include <string>
#include <vector>

namespace ldp {

// Shortest decimal string that round-trips to the same double ("inf" and
// "-inf" for infinities).  Every number the project writes goes through this
// so reruns are byte-identical.
std::string format_double(double x);

double parse_double(const std::string& s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

std::string csv_join(const std::vector<std::string>& fields);

}  // namespace ldp
