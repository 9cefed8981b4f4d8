#pragma once

// Text artifacts written next to every run: time-series CSV, a key = value
// summary, the two-mode CSV, and sweep tables. All floating-point data uses
// 17-significant-digit scientific notation so files round-trip exactly.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "strobe/config.hpp"
#include "strobe/errors.hpp"
#include "strobe/format.hpp"
#include "strobe/metrics.hpp"
#include "strobe/sweep.hpp"
#include "strobe/twomode.hpp"

namespace strobe {

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open())
    throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out.good()) throw IoError("failed while writing '" + path + "'");
}

inline const char* timeseries_header() {
  return "t_s,a11,a12,a21,a22,two_sigma_x,two_sigma_p,det,kappa_sq";
}

inline std::string timeseries_csv(const Trajectory& traj) {
  std::string out;
  out.reserve(traj.samples.size() * 220 + 128);
  out += timeseries_header();
  out += '\n';
  for (const auto& s : traj.samples) {
    const SqueezingReport r = report(s.state);
    out += fmt_sci17(s.state.t);
    out += ',';
    out += fmt_sci17(s.state.a11);
    out += ',';
    out += fmt_sci17(s.state.a12);
    out += ',';
    out += fmt_sci17(s.state.a21);
    out += ',';
    out += fmt_sci17(s.state.a22);
    out += ',';
    out += fmt_sci17(r.two_sigma_x);
    out += ',';
    out += fmt_sci17(r.two_sigma_p);
    out += ',';
    out += fmt_sci17(r.det);
    out += ',';
    out += fmt_sci17(s.kappa_sq);
    out += '\n';
  }
  return out;
}

// Headline numbers of one run in the same key = value syntax as the config.
inline std::string summary_text(const ResolvedRun& rr, const Trajectory& traj) {
  const double omega = rr.config.phys.omega;
  const double fpm = final_period_min(traj, omega);
  const Envelope env = envelope(traj, omega);
  const std::optional<double> fs = first_squeezing_time(traj);
  const CovarianceState& last = traj.samples.back().state;

  std::ostringstream out;
  if (!rr.config.preset.empty()) out << "summary.preset = " << rr.config.preset << "\n";
  out << "summary.final_period_min_two_sigma = " << fmt_shortest(fpm) << "\n";
  out << "summary.global_min_two_sigma = " << fmt_shortest(env.global_min) << "\n";
  out << "summary.global_min_time_s = " << fmt_shortest(env.global_min_t) << "\n";
  out << "summary.squeezed = " << (fpm < SQRT2 ? "true" : "false") << "\n";
  out << "summary.first_squeezing_time_s = "
      << (fs ? fmt_shortest(*fs) : std::string("none")) << "\n";
  out << "summary.final_a11 = " << fmt_shortest(last.a11) << "\n";
  out << "summary.final_a22 = " << fmt_shortest(last.a22) << "\n";
  out << "summary.det_end = " << fmt_shortest(uncertainty_det(last)) << "\n";
  out << "summary.kappa_sq_avg = " << fmt_shortest(rr.kappa_sq_avg) << "\n";
  out << "summary.kappa_sq_peak = " << fmt_shortest(rr.schedule.kappa_sq_peak) << "\n";
  out << "summary.uncertainty_warning = "
      << (traj.uncertainty_warning ? "true" : "false") << "\n";
  return out.str();
}

inline std::string twomode_csv(const TwoModeTrajectory& tm) {
  std::string out;
  out.reserve(tm.samples.size() * 150 + 128);
  out += "t_s,var_x_plus,var_p_plus,var_x_minus,var_p_minus,duan_sum,entangled\n";
  for (const auto& s : tm.samples) {
    out += fmt_sci17(s.t);
    out += ',';
    out += fmt_sci17(s.var_x_plus);
    out += ',';
    out += fmt_sci17(s.var_p_plus);
    out += ',';
    out += fmt_sci17(s.var_x_minus);
    out += ',';
    out += fmt_sci17(s.var_p_minus);
    out += ',';
    out += fmt_sci17(s.duan);
    out += ',';
    out += (s.entangled ? "true" : "false");
    out += '\n';
  }
  return out;
}

namespace detail {

// Quote a CSV field if it contains a delimiter, quote, or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += "\"\"";
    else q += ch;
  }
  q += '"';
  return q;
}

}  // namespace detail

inline std::string sweep_csv(const SweepResult& res) {
  std::string out;
  out += "axis,value,ok,final_period_min_two_sigma,first_squeezing_time_s,"
         "global_min_two_sigma,det_end,error\n";
  for (const auto& row : res.rows) {
    out += axis_name(res.axis);
    out += ',';
    out += fmt_sci17(row.value);
    out += ',';
    out += row.ok ? "true" : "false";
    out += ',';
    if (row.ok) {
      out += fmt_sci17(row.final_period_min);
      out += ',';
      out += row.first_squeezing_t ? fmt_sci17(*row.first_squeezing_t)
                                   : std::string("none");
      out += ',';
      out += fmt_sci17(row.global_min);
      out += ',';
      out += fmt_sci17(row.det_end);
      out += ',';
    } else {
      out += ",,,,";  // empty metric fields on failed rows
    }
    out += detail::csv_field(row.error);
    out += '\n';
  }
  return out;
}

// Write the sweep table plus one resolved-config sidecar per successful row,
// so every number in the table can be traced to the exact run that made it.
inline void write_sweep(const SweepResult& res, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  write_text_file(dir + "/sweep.csv", sweep_csv(res));
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    if (!res.rows[i].config_echo.empty())
      write_text_file(dir + "/row_" + std::to_string(i) + ".config.txt",
                      res.rows[i].config_echo);
  }
}

}  // namespace strobe
