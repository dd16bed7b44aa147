#pragma once

#include "pvg/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace pvg {

/// Parses one sample per line, either `value` or `time,value`; the
/// `index,time,value` form written by write_series_csv is accepted too. A single
/// non-numeric first line is treated as a header; blank lines are skipped.
/// With times present, spacing must be uniform to 1e-9 relative tolerance and
/// dt/t0 come from the file; otherwise `default_dt` is used with t0 = 0.
/// Failures throw Error(ParseError) naming the offending line.
[[nodiscard]] TimeSeries parse_series_csv(std::istream& in, double default_dt,
                                          const std::string& source = "<stream>");

[[nodiscard]] TimeSeries load_series_csv(const std::filesystem::path& path, double default_dt);

/// Writes `index,time,value` with a header row.
void write_series_csv(std::ostream& out, const TimeSeries& series);
void save_series_csv(const std::filesystem::path& path, const TimeSeries& series);

}  // namespace pvg
