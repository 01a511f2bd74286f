#include "obisect/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "obisect/errors.hpp"
#include "obisect/kahan.hpp"

namespace obisect {
namespace {

void append_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

std::string format_csv_row(const RunRecord& rec) {
  std::string row;
  row.reserve(96);
  row += std::to_string(rec.t);
  row += ',';
  append_double(row, rec.error);
  row += ',';
  append_double(row, rec.avg_error_so_far);
  row += ',';
  row += std::to_string(rec.phase);
  row += ',';
  append_double(row, rec.side_length);
  row += ',';
  row += std::to_string(rec.oracle_called);
  row += ',';
  row += std::to_string(rec.matched_dim);
  return row;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const RunRecord& rec) {
  out << format_csv_row(rec) << '\n';
}

std::vector<RunRecord> load_run_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open run log '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ConfigError("run log '" + path + "': bad or missing header");

  std::vector<RunRecord> records;
  KahanSum errors;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RunRecord rec;
    std::istringstream ss(line);
    std::string field;
    auto next = [&](const char* name) {
      if (!std::getline(ss, field, ','))
        throw ConfigError("run log '" + path + "': missing field " + name);
      return field;
    };
    rec.t = std::stoll(next("t"));
    rec.error = std::stod(next("error"));
    rec.avg_error_so_far = std::stod(next("avg_error_so_far"));
    rec.phase = std::stoi(next("phase"));
    rec.side_length = std::stod(next("side_length"));
    rec.oracle_called = std::stoi(next("oracle_called"));
    rec.matched_dim = std::stoi(next("matched_dim"));

    errors.add(rec.error);
    const double recomputed =
        errors.value() / static_cast<double>(records.size() + 1);
    if (recomputed != rec.avg_error_so_far)
      throw ConfigError("run log '" + path + "': avg_error_so_far at t=" +
                        std::to_string(rec.t) +
                        " does not match the error column");
    records.push_back(rec);
  }
  return records;
}

}  // namespace obisect
