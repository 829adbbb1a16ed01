#include "kerr2jc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "kerr2jc/errors.hpp"

namespace kerr2jc {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  if (x != 0.0 && std::abs(x) < 1e-3) {
    std::snprintf(buf, sizeof buf, "%.11e", x);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g", x);
  }
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CsvTable: row has " + std::to_string(cells.size()) + " cells, header has " +
                                std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

CsvTable sweep_table(const SweepSpec& spec, const std::vector<SweepRecord>& records, std::optional<double> kappa_hz) {
  std::vector<std::string> coords{to_string(spec.axis1.parameter)};
  if (spec.axis2) coords.emplace_back(to_string(spec.axis2->parameter));
  if (spec.refine) coords.emplace_back("delta_c_star");

  std::vector<std::string> header = coords;
  if (kappa_hz) {
    for (const std::string& c : coords) header.push_back(c + "_hz");
  }
  for (const char* h : {"n_s", "g2", "g3", "g4", "label", "residual"}) header.emplace_back(h);
  CsvTable table(std::move(header));

  for (const SweepRecord& r : records) {
    std::vector<double> values = r.coordinates;
    if (spec.refine) values.push_back(r.delta_c_star.value_or(std::nan("")));
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(format_number(v));
    if (kappa_hz) {
      for (double v : values) cells.push_back(format_number(v * *kappa_hz));
    }
    const double nan = std::nan("");
    const bool ok = !r.meta.failed;
    cells.push_back(format_number(ok ? r.stats.n_s : nan));
    cells.push_back(format_number(ok ? r.stats.g2 : nan));
    cells.push_back(format_number(ok ? r.stats.g3 : nan));
    cells.push_back(format_number(ok ? r.stats.g4 : nan));
    cells.push_back(ok ? r.label.name() : "Failed");
    cells.push_back(format_number(r.meta.residual));
    table.add_row(std::move(cells));
  }
  return table;
}

CsvTable correlation_table(const std::vector<CorrelationSeries>& series, std::optional<double> kappa_hz) {
  if (series.empty()) throw DomainError("correlation_table: no series");
  std::vector<std::string> header{"tau"};
  if (kappa_hz) header.emplace_back("tau_s");
  for (const CorrelationSeries& s : series) {
    if (s.times != series.front().times) throw DomainError("correlation_table: series use different grids");
    header.push_back("g" + std::to_string(s.group_size) + "_2");
  }
  CsvTable table(std::move(header));
  const auto& times = series.front().times;
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<std::string> cells{format_number(times[i])};
    if (kappa_hz) cells.push_back(format_number(times[i] / (2.0 * M_PI * *kappa_hz)));
    for (const CorrelationSeries& s : series) cells.push_back(format_number(s.values[i]));
    table.add_row(std::move(cells));
  }
  return table;
}

CsvTable distribution_table(const PhotonStatistics& stats) {
  CsvTable table({"q", "p", "p_amp"});
  for (std::size_t q = 0; q < stats.p.size(); ++q) {
    table.add_row({std::to_string(q), format_number(stats.p[q]),
                   format_number(q < stats.p_amp.size() ? stats.p_amp[q] : std::nan(""))});
  }
  return table;
}

}  // namespace kerr2jc
