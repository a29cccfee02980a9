// Machine-readable analysis reports.
//
// One record per (window, statistic family). JSON reports are a single
// object with run metadata and a `records` array holding one record per
// line; CSV reports have a header row and one record per row. Fields that do
// not apply to a family are null (JSON) or empty (CSV). Non-finite numbers
// are never written: they raise NonFiniteResult.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mbstat/rolling.hpp"

namespace mbstat::report {

inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv };

Format parse_format(std::string_view name);

struct RunInfo {
  std::string asset1;
  std::string asset2;
  rolling::EngineConfig config;
};

class Writer {
 public:
  Writer(std::ostream& out, Format format, RunInfo info);
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  /// Appends every requested family of one window.
  void write(const rolling::WindowResult& window);
  /// Closes the JSON document and flushes. Must be called once.
  void finish();

  std::size_t records_written() const noexcept { return records_; }

 private:
  struct Record;
  void write_record(const Record& r);
  void append(std::string_view s);
  void flush();

  std::ostream& out_;
  Format format_;
  RunInfo info_;
  std::string prefix_;  // "N", "alpha", "beta" fields shared by every record
  std::vector<char> buf_;
  std::size_t used_ = 0;
  std::size_t window_bound_ = 0;
  std::size_t records_ = 0;
};

/// Formats a double the way reports do (throws NonFiniteResult).
void append_number(std::string& out, double x);

}  // namespace mbstat::report
