#pragma once

#include <string>

#include <gtest/gtest.h>

#include "tetralab/matcore.hpp"
#include "tetralab/random.hpp"
#include "tetralab/report.hpp"

namespace tetra::testing {

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Random strict contraction with |T| = norm.
inline CMatrix random_contraction(Rng& rng, Index n, double norm = 0.9) {
  const CMatrix g = random_gaussian(rng, n, n);
  return g * (norm / op_norm(g));
}

/// Lists the failing entries, for assertion messages.
inline std::string failures(const CheckReport& r) {
  std::string out;
  for (const auto& e : r.entries()) {
    if (e.status != CheckStatus::Fail) continue;
    out += e.name + " (" + (e.residual ? std::to_string(*e.residual) : std::string("-")) + " > " +
           std::to_string(e.tolerance) + ") " + e.note + "\n";
  }
  return out;
}

inline double residual_of(const CheckReport& r, const std::string& name) {
  const CheckEntry* e = r.find(name);
  if (e == nullptr) {
    ADD_FAILURE() << "no entry named '" << name << "'";
    return 1e300;
  }
  if (!e->residual) {
    ADD_FAILURE() << "entry '" << name << "' is skipped";
    return 1e300;
  }
  return *e->residual;
}

}  // namespace tetra::testing

#define EXPECT_REPORT_PASSES(rep) EXPECT_TRUE((rep).overall()) << tetra::testing::failures(rep)
