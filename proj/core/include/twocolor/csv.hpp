#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace twocolor {

// One line of a sweep file; the row alone identifies its grid point.
struct SweepRow {
  double T_fs = 0.0;
  double gamma = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::string flags;
  double t_ps = 0.0;
  double value = 0.0;
  int n_t0 = 0;
  int Jmax = 0;
  double dt_fs = 0.0;
};

inline constexpr const char* kSweepColumns =
    "T_fs,gamma,delta1,delta2,flags,t_ps,value,n_t0,Jmax,dt_fs";

// `# key: value` lines before the column line, in file order.
using CsvMeta = std::vector<std::pair<std::string, std::string>>;

struct SweepTable {
  CsvMeta meta;
  std::vector<SweepRow> rows;

  // First value of a meta key, or empty.
  std::string meta_value(const std::string& key) const;
};

std::string format_double(double v);

std::string format_sweep_csv(const CsvMeta& meta, const std::vector<SweepRow>& rows);
SweepTable parse_sweep_csv(const std::string& text);
SweepTable read_sweep_csv(const std::string& path);

// Writes to a temporary sibling and renames it into place. Leaves an
// existing file with identical content untouched.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace twocolor
