#include "cli/app.hpp"

#include <cmath>
#include <map>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "cli/commands.hpp"

namespace tetra::cli {

namespace {

struct CommonOptions {
  std::optional<double> tol;
  Format format = Format::Json;
  std::string out;
};

void add_common(CLI::App& sub, CommonOptions& o) {
  sub.add_option("--tol", o.tol, "equality tolerance (relative); overrides TETRALAB_TOL")
      ->check(CLI::PositiveNumber);
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"text", Format::Text}};
  sub.add_option("--format", o.format, "output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("json");
  sub.add_option("--out", o.out, "write the output to PATH instead of stdout");
}

double parse_env_tol(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, "TETRALAB_TOL must be a positive number, got '" + s + "'");
  }
  return v;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_tol) {
  CLI::App app{"Numerical checks for tetrablock contractions"};
  app.set_version_flag("--version", std::string("tetralab ") + TETRALAB_VERSION);
  app.require_subcommand(1);

  CommonOptions common;
  std::uint64_t seed = 0;
  std::uint64_t count = 200;
  Index dim = 8;
  std::optional<Index> degree;
  Index bidisc_degree = 6;
  std::string triple_file;
  std::string theta_file;
  std::string symbols_file;

  CLI::App* bidisc = app.add_subcommand("verify-bidisc", "check the truncated bidisc shift example");
  bidisc->add_option("--degree", bidisc_degree, "truncation degree N (dimension (N+1)^2)")->capture_default_str();
  add_common(*bidisc, common);

  CLI::App* suite = app.add_subcommand("random-suite", "run every battery on seeded random instances");
  suite->add_option("--seed", seed, "suite seed")->required();
  suite->add_option("--count", count, "number of instances")->capture_default_str();
  suite->add_option("--dim", dim, "largest dimension; instances use 2..DIM")->capture_default_str();
  suite->add_option("--degree", degree, "model truncation degree (default: chosen from the power tail)");
  add_common(*suite, common);

  CLI::App* model = app.add_subcommand("model-check", "model checks for a triple read from a file");
  model->add_option("triple", triple_file, "triple JSON file")->required();
  model->add_option("--degree", degree, "truncation degree (default: chosen from the power tail)");
  model->add_option("--seed", seed, "seed for the sample points")->capture_default_str();
  add_common(*model, common);

  CLI::App* blh = app.add_subcommand("blh", "extract (G1, G2) from an inner symbol and a symbol pair");
  blh->add_option("theta", theta_file, "symbol JSON file")->required();
  blh->add_option("symbols", symbols_file, "symbol pair JSON file {F1, F2}")->required();
  blh->add_option("--degree", degree, "truncation degree (default: degree of Theta + 5)");
  add_common(*blh, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAllPass : kUsageError;
  }

  try {
    TolerancePolicy pol;
    if (common.tol) {
      pol = pol.with_eq_tol(*common.tol);
    } else if (env_tol) {
      pol = pol.with_eq_tol(parse_env_tol(*env_tol));
    }
    CommandOutput result;
    if (bidisc->parsed()) {
      result = cmd_verify_bidisc(bidisc_degree, pol, common.format);
    } else if (suite->parsed()) {
      SuiteConfig cfg;
      cfg.seed = seed;
      cfg.count = count;
      cfg.max_dim = dim;
      cfg.degree = degree;
      cfg.pol = pol;
      result = cmd_random_suite(cfg, common.format);
    } else if (model->parsed()) {
      result = cmd_model_check(triple_file, degree, seed, pol, common.format);
    } else {
      result = cmd_blh(theta_file, symbols_file, degree, pol, common.format);
    }
    if (common.out.empty()) {
      out << result.text;
    } else {
      write_text_file(common.out, result.text);
    }
    return result.code;
  } catch (const Error& e) {
    err << "tetralab: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace tetra::cli
