// `mbstat generate | analyze | verify`.
//
// Exit codes: 0 success, 1 verification tolerance breached, 2 invalid flags,
// 3 I/O failure, 4 input parse/validation failure, 5 insufficient history.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "mbstat/report.hpp"
#include "mbstat/rolling.hpp"
#include "mbstat/synth.hpp"

namespace mbstat::cli {

enum ExitCode : int {
  kOk = 0,
  kToleranceBreach = 1,
  kUsage = 2,
  kIoFailure = 3,
  kInvalidInput = 4,
  kInsufficientHistory = 5,
};

struct GenerateOptions {
  SynthConfig synth;
  std::string out = "-";  // "-" is standard output
};

struct AnalyzeRequest {
  std::string asset1_path;
  std::string asset2_path;  // empty: same as asset 1
  rolling::EngineConfig engine;
  std::string output = "-";
  report::Format format = report::Format::json;
};

struct VerifyRequest {
  std::string asset1_path;
  std::string asset2_path;
  rolling::EngineConfig engine;
  double tolerance = 1e-9;
};

int run_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int run_analyze(const AnalyzeRequest& request, std::ostream& out, std::ostream& err);
int run_verify(const VerifyRequest& request, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mbstat::cli
