// Command-line front end: run single simulations (hand-written config or
// named preset), reproduce the published figures, sweep parameters, search
// for squeezing thresholds, optimize the gate, and simulate the two-mode
// entanglement protocol. Every run writes its resolved configuration, a
// time-series CSV, a summary, and an SVG plot into the output directory.
//
// Exit codes: 0 success, 2 configuration error, 3 diverged simulation,
// 4 output I/O error, 1 anything unexpected.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "strobe/strobe.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open())
    throw strobe::IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw strobe::IoError("failed while reading '" + path + "'");
  return ss.str();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw strobe::IoError("cannot create directory '" + dir + "': " + ec.message());
}

std::vector<double> parse_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw strobe::ConfigError(std::string(what) + ": empty entry in list");
    out.push_back(strobe::parse_double_strict(item.substr(b, e - b + 1), what));
  }
  if (out.empty())
    throw strobe::ConfigError(std::string(what) + ": list must be non-empty");
  return out;
}

strobe::RunConfig load_base(const std::string& config_path,
                            const std::string& preset) {
  if (!config_path.empty()) return strobe::parse_config(read_file(config_path));
  if (!preset.empty()) return strobe::make_preset(preset);
  return strobe::RunConfig{};
}

// Simulate one resolved configuration and write all per-run artifacts.
void run_and_write(const strobe::RunConfig& cfg, const std::string& out_dir,
                   bool plot) {
  const strobe::ResolvedRun rr = strobe::resolve(cfg);
  const std::string echo = strobe::echo_config(rr);
  std::cout << echo;

  const strobe::Trajectory traj = strobe::run(rr);
  const std::string summary = strobe::summary_text(rr, traj);
  std::cout << summary;
  if (traj.uncertainty_warning)
    std::cerr << "warning: uncertainty product fell below the physical bound at t = "
              << strobe::fmt_label(traj.uncertainty_warning_t)
              << " s; results in that region are unreliable\n";

  ensure_dir(out_dir);
  strobe::write_text_file(out_dir + "/config.txt", echo);
  strobe::write_text_file(out_dir + "/timeseries.csv", strobe::timeseries_csv(traj));
  strobe::write_text_file(out_dir + "/summary.txt", summary);
  if (plot)
    strobe::write_text_file(out_dir + "/plot.svg",
                            strobe::svg_plot(traj, rr.config.phys.omega));
  std::cout << "wrote " << out_dir << "/{config.txt, timeseries.csv, summary.txt"
            << (plot ? ", plot.svg" : "") << "}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional squeezing of a stroboscopically probed mechanical resonator"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir = "out";
  bool no_plot = false;

  auto add_common = [&](CLI::App* cmd, bool allow_config) {
    if (allow_config) {
      auto* c = cmd->add_option("--config", config_path,
                                "path to a key = value configuration file");
      auto* p = cmd->add_option("--preset", preset, "named preset configuration");
      c->excludes(p);
    }
    cmd->add_option("--out", out_dir, "output directory (default: out)");
  };

  auto* sim = app.add_subcommand("simulate", "run one simulation");
  add_common(sim, true);
  sim->add_flag("--no-plot", no_plot, "skip the SVG plot");

  auto* rep = app.add_subcommand("reproduce", "run a named figure preset");
  std::string rep_preset;
  rep->add_option("--preset", rep_preset, "preset name")->required();
  rep->add_option("--out", out_dir, "output directory (default: out)");
  rep->add_flag("--no-plot", no_plot, "skip the SVG plot");

  auto* list = app.add_subcommand("presets", "list the available presets");

  auto* swp = app.add_subcommand("sweep", "repeat a run across one axis");
  std::string axis_str, values_str;
  int workers = 1;
  add_common(swp, true);
  swp->add_option("--axis", axis_str,
                  "temperature | gamma | kappa_sq_avg | threshold | eta")
      ->required();
  swp->add_option("--values", values_str, "comma-separated axis values")->required();
  swp->add_option("--workers", workers, "worker threads (default 1)");

  auto* thr = app.add_subcommand(
      "threshold", "bisect one axis for the squeezing boundary crossing");
  double lo = 0.0, hi = 0.0;
  add_common(thr, true);
  thr->add_option("--axis", axis_str,
                  "temperature | gamma | kappa_sq_avg | threshold | eta")
      ->required();
  thr->add_option("--lo", lo, "lower end of the search bracket")->required();
  thr->add_option("--hi", hi, "upper end of the search bracket")->required();

  auto* opt = app.add_subcommand(
      "optimize", "grid + golden-section search over gate threshold and phase");
  std::string thresholds_str, phases_str;
  add_common(opt, true);
  opt->add_option("--thresholds", thresholds_str,
                  "comma-separated gate thresholds in (0,1)")
      ->required();
  opt->add_option("--phases", phases_str, "comma-separated gate phases (rad)")
      ->required();

  auto* ent = app.add_subcommand(
      "entangle", "two-mode protocol: symmetric and antisymmetric collective modes");
  double minus_shift = 0.5 * strobe::PI;
  add_common(ent, true);
  ent->add_option("--minus-phase-shift", minus_shift,
                  "gate phase shift of the minus mode relative to the plus mode "
                  "(rad, default pi/2)");
  ent->add_flag("--no-plot", no_plot, "skip the SVG plot");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      run_and_write(load_base(config_path, preset), out_dir, !no_plot);
    } else if (rep->parsed()) {
      run_and_write(strobe::make_preset(rep_preset), out_dir, !no_plot);
    } else if (list->parsed()) {
      for (const auto& n : strobe::preset_names()) std::cout << n << "\n";
    } else if (swp->parsed()) {
      const strobe::RunConfig base = load_base(config_path, preset);
      const strobe::SweepAxis axis = strobe::axis_from_string(axis_str);
      const std::vector<double> values = parse_list(values_str, "--values");
      if (workers < 1) throw strobe::ConfigError("--workers must be >= 1");
      const strobe::SweepResult res = strobe::run_sweep(base, axis, values, workers);
      std::cout << strobe::sweep_csv(res);
      strobe::write_sweep(res, out_dir);
      std::cout << "wrote " << out_dir << "/sweep.csv and per-row config sidecars\n";
    } else if (thr->parsed()) {
      const strobe::RunConfig base = load_base(config_path, preset);
      const strobe::SweepAxis axis = strobe::axis_from_string(axis_str);
      const strobe::ThresholdSearchResult r = strobe::find_threshold(base, axis, lo, hi);
      std::ostringstream out;
      out << "threshold.axis = " << strobe::axis_name(axis) << "\n";
      out << "threshold.value = " << strobe::fmt_shortest(r.value) << "\n";
      out << "threshold.bracket_lo = " << strobe::fmt_shortest(r.bracket_lo) << "\n";
      out << "threshold.bracket_hi = " << strobe::fmt_shortest(r.bracket_hi) << "\n";
      out << "threshold.cert_lo = " << strobe::fmt_shortest(r.cert_lo) << "\n";
      out << "threshold.cert_hi = " << strobe::fmt_shortest(r.cert_hi) << "\n";
      out << "threshold.metric_cert_lo = " << strobe::fmt_shortest(r.metric_cert_lo) << "\n";
      out << "threshold.metric_cert_hi = " << strobe::fmt_shortest(r.metric_cert_hi) << "\n";
      std::cout << out.str();
      ensure_dir(out_dir);
      strobe::write_text_file(out_dir + "/threshold.txt", out.str());
      std::cout << "wrote " << out_dir << "/threshold.txt\n";
    } else if (opt->parsed()) {
      const strobe::RunConfig base = load_base(config_path, preset);
      const std::vector<double> thresholds = parse_list(thresholds_str, "--thresholds");
      const std::vector<double> phases = parse_list(phases_str, "--phases");
      const strobe::OptimizeResult r = strobe::optimize_pulse(base, thresholds, phases);
      std::ostringstream out;
      out << "optimize.threshold = " << strobe::fmt_shortest(r.threshold) << "\n";
      out << "optimize.phase = " << strobe::fmt_shortest(r.phase) << "\n";
      out << "optimize.final_period_min_two_sigma = "
          << strobe::fmt_shortest(r.objective) << "\n";
      out << "optimize.evaluations = " << r.evaluations << "\n";
      std::cout << out.str();
      ensure_dir(out_dir);
      strobe::write_text_file(out_dir + "/optimize.txt", out.str());
      std::cout << "wrote " << out_dir << "/optimize.txt\n";
    } else if (ent->parsed()) {
      const strobe::RunConfig base = load_base(config_path, preset);
      const strobe::ResolvedRun rr = strobe::resolve(base);
      strobe::TwoModeConfig tm =
          strobe::make_two_mode_config(rr.config.phys, rr.schedule);
      tm.schedule_minus.phase = rr.schedule.phase + minus_shift;
      const strobe::TwoModeTrajectory traj = strobe::simulate_entanglement(
          tm, rr.config.duration, rr.config.grid_dt, rr.config.steps_per_period);

      bool ever = false;
      double min_duan = 1e300, min_t = 0.0;
      for (const auto& s : traj.samples) {
        if (s.duan < min_duan) {
          min_duan = s.duan;
          min_t = s.t;
        }
        ever = ever || s.entangled;
      }
      std::ostringstream out;
      out << "entangle.duan_end = "
          << strobe::fmt_shortest(traj.samples.back().duan) << "\n";
      out << "entangle.duan_min = " << strobe::fmt_shortest(min_duan) << "\n";
      out << "entangle.duan_min_time_s = " << strobe::fmt_shortest(min_t) << "\n";
      out << "entangle.entangled_at_end = "
          << (traj.samples.back().entangled ? "true" : "false") << "\n";
      out << "entangle.entangled_ever = " << (ever ? "true" : "false") << "\n";
      std::cout << strobe::echo_config(rr) << out.str();
      ensure_dir(out_dir);
      strobe::write_text_file(out_dir + "/config.txt", strobe::echo_config(rr));
      strobe::write_text_file(out_dir + "/twomode.csv", strobe::twomode_csv(traj));
      strobe::write_text_file(out_dir + "/entangle.txt", out.str());
      if (!no_plot)
        strobe::write_text_file(out_dir + "/duan.svg", strobe::svg_plot_duan(traj));
      std::cout << "wrote " << out_dir << "/{config.txt, twomode.csv, entangle.txt"
                << (no_plot ? "" : ", duan.svg") << "}\n";
    }
  } catch (const strobe::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const strobe::DivergenceError& e) {
    std::cerr << "simulation diverged: " << e.what() << "\n";
    return 3;
  } catch (const strobe::IoError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
