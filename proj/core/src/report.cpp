#include "tetralab/report.hpp"

#include <algorithm>
#include <cmath>

namespace tetra {

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

CheckReport::CheckReport(std::string title, std::string header)
    : title_(std::move(title)), header_(std::move(header)) {}

CheckEntry& CheckReport::add(std::string name, double residual, double tolerance, std::string note) {
  const bool ok = std::isfinite(residual) && residual <= tolerance;
  entries_.push_back({std::move(name), residual, tolerance, ok ? CheckStatus::Pass : CheckStatus::Fail,
                      std::move(note)});
  return entries_.back();
}

CheckEntry& CheckReport::skip(std::string name, std::string reason) {
  entries_.push_back({std::move(name), std::nullopt, 0.0, CheckStatus::Skipped, std::move(reason)});
  return entries_.back();
}

CheckEntry& CheckReport::add_flag(std::string name, bool ok, std::string note) {
  entries_.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok ? CheckStatus::Pass : CheckStatus::Fail,
                      std::move(note)});
  return entries_.back();
}

void CheckReport::merge(const CheckReport& other, std::string_view prefix) {
  for (const auto& e : other.entries_) {
    CheckEntry copy = e;
    if (!prefix.empty()) copy.name = std::string(prefix) + "/" + e.name;
    entries_.push_back(std::move(copy));
  }
}

bool CheckReport::overall() const noexcept { return failures() == 0; }

std::size_t CheckReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return !e.passed(); }));
}

std::size_t CheckReport::skipped() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const auto& e) { return e.status == CheckStatus::Skipped; }));
}

const CheckEntry* CheckReport::find(std::string_view name) const noexcept {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

double CheckReport::max_residual(std::string_view prefix) const noexcept {
  double m = 0.0;
  for (const auto& e : entries_) {
    if (!e.residual || !std::string_view(e.name).starts_with(prefix)) continue;
    m = std::max(m, *e.residual);
  }
  return m;
}

}  // namespace tetra
