#include "cli/suite.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "tetralab/blh.hpp"
#include "tetralab/charfn.hpp"
#include "tetralab/fundamental.hpp"
#include "tetralab/invariants.hpp"

namespace tetra::cli {

namespace {

// Streams forked from the instance seed, one per randomized stage.
enum Stream : std::uint64_t { kSamples = 1, kConjugate = 2, kCorrupt = 3 };

// Runs a stage, turning a library error into a failed flag named after it.
template <class F>
void stage(CheckReport& rep, const char* name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    rep.add_flag(name, false, e.what());
  }
}

}  // namespace

CheckReport instance_battery(const TetrablockTriple& t, std::uint64_t seed, const SuiteConfig& cfg,
                             Index* degree_used) {
  const TolerancePolicy& pol = cfg.pol;
  CheckReport rep("instance", std::string(kNecessaryConditionsHeader));
  if (degree_used != nullptr) *degree_used = -1;
  const double tol = pol.eq_tol * relative_scale({&t.A(), &t.B(), &t.P()});

  std::optional<FundamentalPair> f;
  std::optional<FundamentalPair> g;
  stage(rep, "fundamental", [&] {
    f = solve_fundamental(t, pol);
    g = solve_fundamental(t.adjoint(), pol);
    rep.merge(fundamental_battery(t, *f, *g, pol));
    const FundamentalPair l = solve_fundamental_lsq(t, pol);
    rep.add("solver/F1 = least-squares F1", op_norm(f->ambient1() - l.ambient1()), tol);
    rep.add("solver/F2 = least-squares F2", op_norm(f->ambient2() - l.ambient2()), tol);
  });
  if (!f || !g) return rep;

  const PurityCertificate cert = is_pure(t.P(), pol);
  rep.add_flag("P pure", cert.pure);
  if (!cert.pure) return rep;

  const Index N = cfg.degree ? *cfg.degree : suggest_degree(t.P(), cfg.tail_target);
  if (degree_used != nullptr) *degree_used = N;
  Rng samples_rng = Rng(seed).fork(kSamples);
  const std::vector<cplx> zs = random_disc_points(samples_rng, cfg.samples);
  const std::vector<cplx> ws = random_disc_points(samples_rng, cfg.samples);

  stage(rep, "model", [&] {
    const ModelData m = build_model(t.contraction(), N, pol);
    rep.add("model/truncation tail", m.tail, cfg.tail_target);
    rep.merge(verify_L0(m, pol), "model");
    rep.merge(verify_fm(t, m, *g, pol), "fm");
  });
  stage(rep, "kernel", [&] { rep.merge(verify_kernel_identity(t.contraction(), zs, ws, pol), "kernel"); });
  stage(rep, "intertwining", [&] { rep.merge(verify_scor1(t, *f, *g, zs, pol), "intertwining"); });

  stage(rep, "blh", [&] {
    const AnalyticSymbol theta = theta_taylor(t.contraction().adjoint(), N + 1, pol);
    const Index nb = N + 6;
    const SymbolExtraction ex = extract_symbols(theta, f->F1, f->F2, nb, pol);
    rep.merge(ex.report, "blh");
    rep.add("blh/G1 = solved G1", op_norm(ex.G1 - g->F1), tol);
    rep.add("blh/G2 = solved G2", op_norm(ex.G2 - g->F2), tol);
    rep.merge(check_invariance(InvariantSubspace::from_symbol(theta, nb, pol), f->F1, f->F2, pol), "blh/invariance");
    rep.merge(verify_isometry_propagation(f->F1, f->F2, ex.G1, ex.G2, nb, pol), "blh/propagation");
  });

  stage(rep, "invariants", [&] {
    Rng urng = Rng(seed).fork(kConjugate);
    const CMatrix U = random_unitary(urng, t.dim());
    const TetrablockTriple t2 = conjugate(t, U, pol);
    rep.merge(unitary_invariant_suite(t, t2, U, N, zs, pol), "invariants");
    CoincidenceWitness bad = induced_defect_unitary(U, t, t2, pol);
    if (bad.u_star.size() > 0) {
      Rng crng = Rng(seed).fork(kCorrupt);
      bad.u_star = random_unitary(crng, bad.u_star.rows());
      const bool rejected = !converse_construction(t, t2, bad, N, zs, pol).overall();
      rep.add_flag("invariants/corrupted witness rejected", rejected);
    }
  });
  return rep;
}

InstanceResult run_instance(std::uint64_t index, const SuiteConfig& cfg) {
  InstanceResult r;
  r.index = index;
  try {
    const GeneratedInstance inst = generate_instance(cfg.seed, index, cfg.min_dim, cfg.max_dim, cfg.pol);
    r.family = inst.family;
    r.dim = inst.dim;
    r.seed = inst.seed;
    r.report = instance_battery(inst.triple, inst.seed, cfg, &r.degree);
  } catch (const Error& e) {
    r.report = CheckReport("instance", std::string(kNecessaryConditionsHeader));
    r.report.add_flag("generate", false, e.what());
  }
  return r;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult out;
  out.instances.reserve(cfg.count);
  for (std::uint64_t i = 0; i < cfg.count; ++i) {
    out.instances.push_back(run_instance(i, cfg));
    const CheckReport& rep = out.instances.back().report;
    out.passed += rep.overall() ? 1 : 0;
    out.checks += rep.entries().size();
    out.check_failures += rep.failures();
    out.skipped += rep.skipped();
  }
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Json suite_to_json(const SuiteConfig& cfg, const SuiteResult& r, bool with_wall_time) {
  Json j;
  j["tool"] = "tetralab";
  j["version"] = TETRALAB_VERSION;
  j["command"] = "random-suite";
  Json c;
  c["seed"] = cfg.seed;
  c["count"] = cfg.count;
  c["min_dim"] = cfg.min_dim;
  c["max_dim"] = cfg.max_dim;
  c["degree"] = cfg.degree ? Json(*cfg.degree) : Json(nullptr);
  c["tail_target"] = cfg.tail_target;
  c["samples"] = cfg.samples;
  c["eq_tol"] = cfg.pol.eq_tol;
  c["rank_tol"] = cfg.pol.rank_tol;
  c["clamp_tol"] = cfg.pol.clamp_tol;
  j["config"] = std::move(c);
  Json list = Json::array();
  for (const auto& inst : r.instances) {
    Json x;
    x["index"] = inst.index;
    x["family"] = to_string(inst.family);
    x["dim"] = inst.dim;
    x["seed"] = inst.seed;
    x["degree"] = inst.degree >= 0 ? Json(inst.degree) : Json(nullptr);
    x["report"] = report_to_json(inst.report);
    list.push_back(std::move(x));
  }
  j["instances"] = std::move(list);
  Json agg;
  agg["instances"] = r.instances.size();
  agg["passed"] = r.passed;
  agg["failed"] = r.instances.size() - r.passed;
  agg["checks"] = r.checks;
  agg["check_failures"] = r.check_failures;
  agg["skipped"] = r.skipped;
  j["aggregate"] = std::move(agg);
  j["overall"] = r.all_passed() ? "pass" : "fail";
  if (with_wall_time) j["wall_time_s"] = r.wall_time;
  return j;
}

std::string suite_to_text(const SuiteConfig& cfg, const SuiteResult& r) {
  std::ostringstream os;
  os << "random suite: seed " << cfg.seed << ", " << cfg.count << " instances, dims " << cfg.min_dim << ".."
     << cfg.max_dim << ", eq_tol " << cfg.pol.eq_tol << "\n";
  for (const auto& inst : r.instances) {
    char line[160];
    std::snprintf(line, sizeof line, "#%-4llu %-12s dim %-2lld N %-4lld %-5s %zu checks, %zu failed, %zu skipped\n",
                  static_cast<unsigned long long>(inst.index), to_string(inst.family).c_str(),
                  static_cast<long long>(inst.dim), static_cast<long long>(inst.degree),
                  inst.report.overall() ? "pass" : "FAIL", inst.report.entries().size(), inst.report.failures(),
                  inst.report.skipped());
    os << line;
    for (const auto& e : inst.report.entries()) {
      if (e.status != CheckStatus::Fail) continue;
      os << "      fail " << e.name;
      if (e.residual) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  %.3e > %.2e", *e.residual, e.tolerance);
        os << buf;
      }
      if (!e.note.empty()) os << "  " << e.note;
      os << "\n";
    }
  }
  os << "passed " << r.passed << "/" << r.instances.size() << " instances (" << r.checks << " checks, "
     << r.check_failures << " failed, " << r.skipped << " skipped)\n";
  char wt[48];
  std::snprintf(wt, sizeof wt, "wall time %.2f s\n", r.wall_time);
  os << wt;
  return os.str();
}

}  // namespace tetra::cli
