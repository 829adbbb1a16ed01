#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kerr2jc/hilbert_space.hpp"
#include "kerr2jc/liouvillian.hpp"

namespace kerr2jc {

/// p(q): photon-number populations summed over both atomic levels, q = 0..n_max.
std::vector<double> photon_distribution(const DensityMatrix& rho);

/// n_s = Tr(a'a rho).
double mean_photon_number(const DensityMatrix& rho);

/// g_1^(n)(0) = Tr(a'^n a^n rho) / n_s^n. Throws DomainError for n < 2 and
/// UndefinedCorrelatorError when n_s vanishes.
double equal_time_correlator(const DensityMatrix& rho, int n);

/// p~(q) = sqrt(q p(q) / n_s), q = 0..n_max. Throws UndefinedCorrelatorError when n_s vanishes.
std::vector<double> photon_amplitude(const DensityMatrix& rho);

struct PhotonStatistics {
  double n_s = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double g4 = 0.0;
  std::vector<double> p;      ///< p(q)
  std::vector<double> p_amp;  ///< p~(q)
};

PhotonStatistics photon_statistics(const DensityMatrix& rho);

enum class RegimeKind { SinglePB, MultiPB, PIT, Bundles, Unclassified };

const char* to_string(RegimeKind kind) noexcept;

/// One inequality checked by `classify`. margin > 0 means the inequality held.
struct Evidence {
  std::string condition;
  double margin = 0.0;
  bool holds = false;
};

struct RegimeLabel {
  RegimeKind kind = RegimeKind::Unclassified;
  int order = 0;  ///< n for MultiPB(n) and Bundles(n), 0 otherwise
  std::vector<Evidence> evidence;

  /// "SinglePB", "MultiPB(3)", "Bundles(2)", "PIT", "Unclassified".
  std::string name() const;
};

struct ClassifyOptions {
  double guard_band = 1e-6;   ///< |g - 1| <= guard_band counts as neither above nor below 1
  double tau_window = 5.0;    ///< delays (0, tau_window] enter the tau inequalities
};

/// Emission regime from equal-time correlators and, optionally, the delayed series
/// g_1^(2)(tau) and g_n^(2)(tau). Bundle tests need `group_series` with group_size equal to
/// the blockade order; without the series the label carries blockade-only evidence.
RegimeLabel classify(const PhotonStatistics& stats, const CorrelationSeries* g1_series = nullptr,
                     const CorrelationSeries* group_series = nullptr, const ClassifyOptions& options = {});

/// Delay of the first interior local extremum of a series, if any.
std::optional<double> first_local_extremum(const CorrelationSeries& series);

}  // namespace kerr2jc
