#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kerr2jc/liouvillian.hpp"
#include "kerr2jc/observables.hpp"
#include "kerr2jc/sweep.hpp"

namespace kerr2jc {

/// Version of every CSV column layout written by this package. Bumped whenever a
/// column is renamed, reordered or removed.
inline constexpr int kCsvSchemaVersion = 1;

/// Shortest-looking decimal text with 12 significant digits. Values with
/// 0 < |x| < 1e-3 are always written in scientific notation; NaN is written as "nan".
std::string format_number(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  /// Appends one row of preformatted cells; throws std::invalid_argument on a width mismatch.
  void add_row(std::vector<std::string> cells);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Coordinates, then delta_c_star for refined sweeps, then n_s, g2, g3, g4, label, residual.
/// With kappa_hz set each coordinate gains a `<name>_hz` companion column.
CsvTable sweep_table(const SweepSpec& spec, const std::vector<SweepRecord>& records,
                     std::optional<double> kappa_hz = std::nullopt);

/// tau, then one `g<n>_2` column per series. With kappa_hz a `tau_s` column follows tau.
CsvTable correlation_table(const std::vector<CorrelationSeries>& series,
                           std::optional<double> kappa_hz = std::nullopt);

/// q, p, p_amp.
CsvTable distribution_table(const PhotonStatistics& stats);

/// Writes `text` to a sibling temporary file and renames it into place.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace kerr2jc
