#include "mbstat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <memory>

#include "mbstat/errors.hpp"
#include "mbstat/trade_series.hpp"
#include "mbstat/verify.hpp"

namespace mbstat::cli {
namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::MissingHistory: return kInsufficientHistory;
    case ErrorCode::InvalidConfig: return kUsage;
    default: return kInvalidInput;
  }
}

/// Runs `body`, translating library failures into exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "mbstat: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::ios_base::failure& e) {
    err << "mbstat: I/O failure: " << e.what() << '\n';
    return kIoFailure;
  }
}

struct LoadedPair {
  SeriesPtr asset1;
  SeriesPtr asset2;
};

LoadedPair load_pair(const std::string& path1, const std::string& path2) {
  LoadedPair pair;
  pair.asset1 = std::make_shared<const TradeSeries>(load_trades(path1));
  pair.asset2 = path2.empty() || path2 == path1
                    ? pair.asset1
                    : std::make_shared<const TradeSeries>(load_trades(path2));
  return pair;
}

void write_meta(const GenerateOptions& options) {
  const SynthConfig& c = options.synth;
  nlohmann::ordered_json meta = {
      {"generator", kGeneratorId},
      {"seed", c.seed},
      {"n_ticks", c.n_ticks},
      {"mode", to_string(c.mode)},
      {"alpha", c.alpha},
      {"price_start", c.price_start},
      {"log_price_step_sd", c.log_price_step_sd},
      {"volume_log_mean", c.volume_log_mean},
      {"volume_log_sd", c.volume_log_sd},
      {"asset_id", c.asset_id},
  };
  std::ofstream out(options.out + ".meta.json");
  out << meta.dump(2) << '\n';
  if (!out) throw std::ios_base::failure("cannot write " + options.out + ".meta.json");
}

}  // namespace

int run_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string csv = serialize_trades(gen_trades(options.synth));
    if (options.out == "-") {
      out << csv;
      out.flush();
      if (!out) throw std::ios_base::failure("cannot write to standard output");
      return int{kOk};
    }
    std::ofstream file(options.out, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open " + options.out);
    file << csv;
    file.close();
    if (!file) throw std::ios_base::failure("cannot write " + options.out);
    write_meta(options);
    return int{kOk};
  });
}

int run_analyze(const AnalyzeRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedPair pair = load_pair(request.asset1_path, request.asset2_path);
    const rolling::Engine engine(pair.asset1, pair.asset2, request.engine);

    std::ofstream file;
    std::ostream* sink = &out;
    if (request.output != "-") {
      file.open(request.output, std::ios::binary);
      if (!file) throw std::ios_base::failure("cannot open " + request.output);
      sink = &file;
    }
    report::Writer writer(*sink, request.format,
                          {pair.asset1->asset_id(), pair.asset2->asset_id(), request.engine});
    engine.for_each_window([&](const rolling::WindowResult& w) { writer.write(w); });
    writer.finish();
    if (!*sink) throw std::ios_base::failure("cannot write report");
    return int{kOk};
  });
}

int run_verify(const VerifyRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedPair pair = load_pair(request.asset1_path, request.asset2_path);
    const rolling::Engine engine(pair.asset1, pair.asset2, request.engine);
    const verify::Summary summary = verify::run(engine, request.tolerance);

    out << std::setprecision(3);
    for (const auto& f : summary.families) {
      out << f.family << ": windows=" << f.windows << " max_rel_dev=" << std::scientific
          << f.max_deviation << std::defaultfloat << " worst_window=" << f.worst_window
          << " t_center=" << f.worst_t_center
          << (f.max_deviation <= summary.tolerance ? " ok" : " BREACH") << '\n';
    }
    if (!summary.passed()) {
      out << "tolerance " << std::scientific << summary.tolerance << " breached\n";
      return int{kToleranceBreach};
    }
    out << "all families within tolerance " << std::scientific << summary.tolerance << '\n';
    return int{kOk};
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Market-based trade statistics: VWAP, VaWAR, correlations, volatilities"};
  app.name("mbstat");
  app.require_subcommand(1);

  GenerateOptions gen;
  std::string mode = "free";
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic trade series as CSV");
  generate->add_option("--n", gen.synth.n_ticks, "Number of ticks (>= 2)");
  generate->add_option("--seed", gen.synth.seed, "Generator seed");
  generate->add_option("--mode", mode, "free | constant-volume | constant-past-value");
  generate->add_option("--alpha", gen.synth.alpha, "Horizon held constant in constant-past-value mode");
  generate->add_option("--price-start", gen.synth.price_start);
  generate->add_option("--price-sd", gen.synth.log_price_step_sd, "Log-price step deviation");
  generate->add_option("--volume-log-mean", gen.synth.volume_log_mean);
  generate->add_option("--volume-log-sd", gen.synth.volume_log_sd);
  generate->add_option("--asset-id", gen.synth.asset_id);
  generate->add_option("--out", gen.out, "Output file, '-' for stdout");

  AnalyzeRequest analyze_req;
  VerifyRequest verify_req;
  std::string stats_list = "price_corr";
  std::string format = "json";
  std::string asset1, asset2;
  std::int64_t alpha = 1, beta = 0;
  std::size_t window = 256, stride = 1;
  int threads = 1;
  double tol = 1e-9;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--asset1", asset1, "CSV trades of asset 1")->required();
    cmd->add_option("--asset2", asset2, "CSV trades of asset 2 (default: asset 1)");
    cmd->add_option("--alpha", alpha, "Return horizon of asset 1 (time units)");
    cmd->add_option("--beta", beta, "Price lag and return horizon of asset 2 (time units)");
    cmd->add_option("--window", window, "Ticks per window");
    cmd->add_option("--stride", stride, "Grid steps between window positions");
    cmd->add_option("--stats", stats_list,
                    "Comma list: price_corr, return_corr, price_return_corr, price_vol, "
                    "return_vol, joint_moments, all");
    cmd->add_option("--threads", threads, "Worker threads (0: all cores)");
  };
  auto* analyze = app.add_subcommand("analyze", "Rolling-window statistics report");
  add_common(analyze);
  analyze->add_option("--out", analyze_req.output, "Report file, '-' for stdout");
  analyze->add_option("--format", format, "json | csv");
  auto* verify_cmd = app.add_subcommand("verify", "Check closed forms against the oracle");
  add_common(verify_cmd);
  verify_cmd->add_option("--tol", tol, "Maximum relative deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mbstat: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kUsage;
  }

  auto engine_config = [&] {
    rolling::EngineConfig c;
    c.alpha = alpha;
    c.beta = beta;
    c.window = window;
    c.stride = stride;
    c.threads = threads;
    c.stats = rolling::StatSet::parse(stats_list);
    return c;
  };

  try {
    if (generate->parsed()) {
      gen.synth.mode = parse_synth_mode(mode);
      return run_generate(gen, out, err);
    }
    if (analyze->parsed()) {
      analyze_req.asset1_path = asset1;
      analyze_req.asset2_path = asset2;
      analyze_req.engine = engine_config();
      analyze_req.format = report::parse_format(format);
      return run_analyze(analyze_req, out, err);
    }
    verify_req.asset1_path = asset1;
    verify_req.asset2_path = asset2;
    verify_req.engine = engine_config();
    verify_req.tolerance = tol;
    if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidConfig, "tolerance must be nonnegative");
    return run_verify(verify_req, out, err);
  } catch (const Error& e) {
    err << "mbstat: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace mbstat::cli
