#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace obisect {

/// One row of the per-query run log.
struct RunRecord {
  std::int64_t t = 0;
  double error = 0.0;
  double avg_error_so_far = 0.0;
  int phase = 0;
  double side_length = 0.0;
  int oracle_called = 0;
  int matched_dim = -1;
};

inline constexpr const char* kCsvHeader =
    "t,error,avg_error_so_far,phase,side_length,oracle_called,matched_dim";

/// Floats carry 17 significant digits so values round-trip exactly.
std::string format_csv_row(const RunRecord& rec);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const RunRecord& rec);

/// Reads a run log back and re-derives the prefix means from the error
/// column; throws if the file disagrees with its own bookkeeping.
std::vector<RunRecord> load_run_records(const std::string& path);

}  // namespace obisect
