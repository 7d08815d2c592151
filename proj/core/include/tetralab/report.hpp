#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tetra {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s) noexcept;

struct CheckEntry {
  std::string name;
  std::optional<double> residual;  // empty for skipped entries
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;

  // Skipped entries never count as failures, but are never reported as passes.
  bool passed() const noexcept { return status != CheckStatus::Fail; }
};

/// Named battery of residual checks. overall() is the conjunction of entry passes.
class CheckReport {
 public:
  explicit CheckReport(std::string title = {}, std::string header = {});

  /// Records a residual; passes iff it is finite and <= tolerance.
  CheckEntry& add(std::string name, double residual, double tolerance, std::string note = {});
  CheckEntry& skip(std::string name, std::string reason);
  CheckEntry& add_flag(std::string name, bool ok, std::string note = {});

  /// Appends the entries of another report with "prefix/" prepended to names.
  void merge(const CheckReport& other, std::string_view prefix = {});

  bool overall() const noexcept;
  std::size_t failures() const noexcept;
  std::size_t skipped() const noexcept;

  const CheckEntry* find(std::string_view name) const noexcept;
  /// Max residual over non-skipped entries whose names start with prefix (0 if none).
  double max_residual(std::string_view prefix = {}) const noexcept;

  const std::string& title() const noexcept { return title_; }
  const std::string& header() const noexcept { return header_; }
  void set_header(std::string header) { header_ = std::move(header); }
  const std::vector<CheckEntry>& entries() const noexcept { return entries_; }

 private:
  std::string title_;
  std::string header_;
  std::vector<CheckEntry> entries_;
};

/// Header carried by every report that reasons about tetrablock membership.
inline constexpr std::string_view kNecessaryConditionsHeader =
    "necessary conditions only: spectral-set membership of the closed tetrablock is not decided";

}  // namespace tetra
