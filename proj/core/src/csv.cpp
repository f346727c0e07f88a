#include "twocolor/csv.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "twocolor/error.hpp"

namespace twocolor {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, int line, const char* column) {
  // strtod rather than stod: subnormal values are valid data, not errors.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  const std::size_t pos = static_cast<std::size_t>(end - s.c_str());
  if (s.empty() || std::isspace(static_cast<unsigned char>(s[0])) || pos != s.size()) {
    throw InvalidInput("line " + std::to_string(line) + ": bad value '" + s + "' in column " + column);
  }
  return v;
}

int to_int(const std::string& s, int line, const char* column) {
  const double v = to_double(s, line, column);
  if (v != static_cast<int>(v)) {
    throw InvalidInput("line " + std::to_string(line) + ": column " + column + " is not an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

std::string SweepTable::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return {};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_sweep_csv(const CsvMeta& meta, const std::vector<SweepRow>& rows) {
  std::string out;
  for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
  out += kSweepColumns;
  out += '\n';
  for (const SweepRow& r : rows) {
    if (r.flags.find(',') != std::string::npos) throw InvalidInput("flags label contains a comma");
    out += format_double(r.T_fs) + ',' + format_double(r.gamma) + ',' + format_double(r.delta1) +
           ',' + format_double(r.delta2) + ',' + r.flags + ',' + format_double(r.t_ps) + ',' +
           format_double(r.value) + ',' + std::to_string(r.n_t0) + ',' + std::to_string(r.Jmax) +
           ',' + format_double(r.dt_fs) + '\n';
  }
  return out;
}

SweepTable parse_sweep_csv(const std::string& text) {
  SweepTable table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_columns = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      std::string value = line.substr(colon + 1);
      auto strip = [](std::string& s) {
        s.erase(0, s.find_first_not_of(' '));
        s.erase(s.find_last_not_of(' ') + 1);
      };
      strip(key);
      strip(value);
      table.meta.emplace_back(key, value);
      continue;
    }
    if (!have_columns) {
      if (line != kSweepColumns) {
        const auto got = split(line, ',');
        const auto want = split(kSweepColumns, ',');
        for (std::size_t i = 0; i < want.size(); ++i) {
          if (i >= got.size() || got[i] != want[i]) {
            throw InvalidInput("unexpected column '" + (i < got.size() ? got[i] : std::string()) +
                               "', expected '" + want[i] + "'");
          }
        }
        throw InvalidInput("unexpected extra columns in sweep file");
      }
      have_columns = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 10) {
      throw InvalidInput("line " + std::to_string(lineno) + ": expected 10 fields, got " +
                         std::to_string(f.size()));
    }
    SweepRow r;
    r.T_fs = to_double(f[0], lineno, "T_fs");
    r.gamma = to_double(f[1], lineno, "gamma");
    r.delta1 = to_double(f[2], lineno, "delta1");
    r.delta2 = to_double(f[3], lineno, "delta2");
    r.flags = f[4];
    r.t_ps = to_double(f[5], lineno, "t_ps");
    r.value = to_double(f[6], lineno, "value");
    r.n_t0 = to_int(f[7], lineno, "n_t0");
    r.Jmax = to_int(f[8], lineno, "Jmax");
    r.dt_fs = to_double(f[9], lineno, "dt_fs");
    table.rows.push_back(std::move(r));
  }
  if (!have_columns) throw InvalidInput("sweep file has no column line");
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SweepTable read_sweep_csv(const std::string& path) { return parse_sweep_csv(read_file(path)); }

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  std::error_code ec;
  if (fs::exists(target, ec)) {
    std::ifstream in(target, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    if (in && ss.str() == content) return;
  }
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

}  // namespace twocolor
