#include "cli/commands.hpp"

#include <sstream>

#include "tetralab/bidisc.hpp"
#include "tetralab/blh.hpp"
#include "tetralab/charfn.hpp"
#include "tetralab/fundamental.hpp"

namespace tetra::cli {

namespace {

Json bundle_head(const char* command) {
  Json j;
  j["tool"] = "tetralab";
  j["version"] = TETRALAB_VERSION;
  j["command"] = command;
  return j;
}

Json tolerance_echo(const TolerancePolicy& pol) {
  Json j;
  j["eq_tol"] = pol.eq_tol;
  j["rank_tol"] = pol.rank_tol;
  j["clamp_tol"] = pol.clamp_tol;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string matrix_text(const char* name, const CMatrix& m) {
  std::ostringstream os;
  os << name << " (" << m.rows() << " x " << m.cols() << "):\n";
  char buf[64];
  for (Index i = 0; i < m.rows(); ++i) {
    os << " ";
    for (Index k = 0; k < m.cols(); ++k) {
      std::snprintf(buf, sizeof buf, " %+.6f%+.6fi", m(i, k).real(), m(i, k).imag());
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int exit_code_for(const Error& e) noexcept {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Io:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::NonFinite:
      return kUsageError;
    default:
      return kCheckFailure;
  }
}

CommandOutput cmd_verify_bidisc(Index N, const TolerancePolicy& pol, Format format) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "--degree must be at least 1");
  CheckReport rep = verify_example(N, pol);
  if (N >= 3) {
    for (Index n = 3; n <= N; ++n) rep.merge(truncation_consistency(n, pol), "consistency/N=" + std::to_string(n));
  }
  CommandOutput out;
  out.code = rep.overall() ? kAllPass : kCheckFailure;
  if (format == Format::Json) {
    Json j = bundle_head("verify-bidisc");
    Json c;
    c["degree"] = N;
    c["tolerance"] = tolerance_echo(pol);
    j["config"] = std::move(c);
    j["report"] = report_to_json(rep);
    j["overall"] = rep.overall() ? "pass" : "fail";
    out.text = dump(j);
  } else {
    out.text = render_text(rep);
  }
  return out;
}

CommandOutput cmd_random_suite(const SuiteConfig& cfg, Format format) {
  if (cfg.count == 0) throw Error(ErrorKind::InvalidArgument, "--count must be positive");
  if (cfg.max_dim < cfg.min_dim) {
    throw Error(ErrorKind::InvalidArgument, "--dim must be at least " + std::to_string(cfg.min_dim));
  }
  if (cfg.degree && *cfg.degree < 1) throw Error(ErrorKind::InvalidArgument, "--degree must be at least 1");
  const SuiteResult r = run_suite(cfg);
  CommandOutput out;
  out.code = r.all_passed() ? kAllPass : kCheckFailure;
  out.text = format == Format::Json ? dump(suite_to_json(cfg, r)) : suite_to_text(cfg, r);
  return out;
}

CommandOutput cmd_model_check(const std::string& triple_file, std::optional<Index> N, std::uint64_t seed,
                              const TolerancePolicy& pol, Format format) {
  if (N && *N < 1) throw Error(ErrorKind::InvalidArgument, "--degree must be at least 1");
  const TripleFile file = triple_from_json(read_json_file(triple_file));
  const TetrablockTriple t = validate(file.A, file.B, file.P, pol);
  CheckReport rep("model check", std::string(kNecessaryConditionsHeader));
  rep.merge(necessary_conditions(file.A, file.B, file.P, pol), "necessary");
  const FundamentalPair f = solve_fundamental(t, pol);
  const FundamentalPair g = solve_fundamental(t.adjoint(), pol);
  rep.merge(verify_pair_bounds(t, f, pol), "F");
  rep.merge(verify_pair_bounds(t.adjoint(), g, pol), "G");
  const Index degree = N ? *N : suggest_degree(t.P(), 1e-10);
  const ModelData m = build_model(t.contraction(), degree, pol);
  rep.merge(verify_L0(m, pol), "model");
  rep.merge(verify_fm(t, m, g, pol), "fm");
  Rng rng(seed);
  const std::vector<cplx> zs = random_disc_points(rng, 20);
  const std::vector<cplx> ws = random_disc_points(rng, 20);
  rep.merge(verify_scor1(t, f, g, zs, pol), "intertwining");
  rep.merge(verify_kernel_identity(t.contraction(), zs, ws, pol), "kernel");

  CommandOutput out;
  out.code = rep.overall() ? kAllPass : kCheckFailure;
  if (format == Format::Json) {
    Json j = bundle_head("model-check");
    Json c;
    c["triple"] = triple_file;
    c["degree"] = degree;
    c["seed"] = seed;
    c["tolerance"] = tolerance_echo(pol);
    j["config"] = std::move(c);
    if (!file.meta.empty()) j["meta"] = file.meta;
    j["tail"] = m.tail;
    j["fundamental"] = symbol_pair_to_json(f.F1, f.F2);
    j["adjoint_fundamental"] = symbol_pair_to_json(g.F1, g.F2);
    j["report"] = report_to_json(rep);
    j["overall"] = rep.overall() ? "pass" : "fail";
    out.text = dump(j);
  } else {
    char buf[96];
    std::snprintf(buf, sizeof buf, "degree %lld, truncation tail %.3e\n", static_cast<long long>(degree), m.tail);
    out.text = render_text(rep) + buf;
  }
  return out;
}

CommandOutput cmd_blh(const std::string& theta_file, const std::string& symbols_file, std::optional<Index> N,
                      const TolerancePolicy& pol, Format format) {
  const AnalyticSymbol theta = symbol_from_json(read_json_file(theta_file));
  const auto [f1, f2] = symbol_pair_from_json(read_json_file(symbols_file));
  if (f1.rows() != theta.rows() || f2.rows() != theta.rows() || f1.cols() != f1.rows() || f2.cols() != f2.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "symbols must be square with the row dimension of Theta");
  }
  const Index degree = N ? *N : theta.degree() + 5;
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "--degree must be at least 1");
  const SymbolExtraction ex = extract_symbols(theta, f1, f2, degree, pol);
  CheckReport rep("symbol extraction", std::string(kNecessaryConditionsHeader));
  rep.merge(ex.report, "extraction");
  rep.merge(check_invariance(InvariantSubspace::from_symbol(theta, degree, pol), f1, f2, pol), "invariance");
  rep.merge(verify_isometry_propagation(f1, f2, ex.G1, ex.G2, degree, pol), "propagation");

  CommandOutput out;
  out.code = rep.overall() ? kAllPass : kCheckFailure;
  if (format == Format::Json) {
    Json j = bundle_head("blh");
    Json c;
    c["theta"] = theta_file;
    c["symbols"] = symbols_file;
    c["degree"] = degree;
    c["tolerance"] = tolerance_echo(pol);
    j["config"] = std::move(c);
    j["interior"] = ex.interior;
    j["G1"] = matrix_to_json(ex.G1);
    j["G2"] = matrix_to_json(ex.G2);
    j["report"] = report_to_json(rep);
    j["overall"] = rep.overall() ? "pass" : "fail";
    out.text = dump(j);
  } else {
    out.text = render_text(rep) + "interior degree " + std::to_string(ex.interior) + "\n" + matrix_text("G1", ex.G1) +
               matrix_text("G2", ex.G2);
  }
  return out;
}

}  // namespace tetra::cli
