// xxring command line: simulations, analyses, sweeps, and oracle checks for
// the single-excitation dynamics of a periodic XX chain. Emits CSV series
// plus a JSON manifest per run; outputs are deterministic byte for byte.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xxring/bessel.hpp"
#include "xxring/coherence.hpp"
#include "xxring/io.hpp"
#include "xxring/observables.hpp"
#include "xxring/oracle.hpp"
#include "xxring/recurrence.hpp"
#include "xxring/scaling.hpp"
#include "xxring/util.hpp"

namespace {

using namespace xxring;
using nlohmann::json;

struct CommonOptions {
  int n_sites = 2;
  double coupling = 1.0;
  double onsite = 0.0;
  double tau_max = 0.0;
  double step = 0.1;
  bool physical_time = false;
  int threads = 1;
  std::string out_dir = ".";
  std::string prefix;
};

ChainSpec spec_of(const CommonOptions& opt) {
  return ChainSpec{opt.n_sites, opt.coupling, opt.onsite};
}

void add_common(CLI::App* cmd, CommonOptions& opt, const std::string& default_prefix,
                bool with_sites = true) {
  opt.prefix = default_prefix;
  if (with_sites) cmd->add_option("--n-sites,-n", opt.n_sites, "number of sites N")->required();
  cmd->add_option("--coupling,-g", opt.coupling, "exchange coupling g > 0");
  cmd->add_option("--onsite,-w", opt.onsite,
                  "on-site energy (kept for reporting; the dynamics does not depend on it)");
  cmd->add_flag("--physical-time", opt.physical_time,
                "report time as t = tau / (2g) instead of the scaled tau");
  cmd->add_option("--threads", opt.threads, "worker threads for grid evaluation")
      ->check(CLI::Range(1, 256));
  cmd->add_option("--out-dir", opt.out_dir, "output directory");
  cmd->add_option("--prefix", opt.prefix, "output file prefix");
}

std::string out_path(const CommonOptions& opt, const std::string& suffix) {
  return (std::filesystem::path(opt.out_dir) / (opt.prefix + suffix)).string();
}

// Time column per the --physical-time flag.
double report_time(const CommonOptions& opt, double tau) {
  return opt.physical_time ? tau / (2.0 * opt.coupling) : tau;
}

const char* time_column(const CommonOptions& opt) { return opt.physical_time ? "t" : "tau"; }

class ManifestWriter {
 public:
  explicit ManifestWriter(std::string command) : start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
  }
  void param(const std::string& key, const std::string& value) {
    manifest_.parameters[key] = value;
  }
  void param(const std::string& key, double value) { param(key, format_double(value)); }
  void param(const std::string& key, int value) { param(key, std::to_string(value)); }
  void common(const CommonOptions& opt) {
    param("n_sites", opt.n_sites);
    param("coupling", opt.coupling);
    param("onsite", opt.onsite);
    param("threads", opt.threads);
    param("physical_time", std::string(opt.physical_time ? "true" : "false"));
  }
  void add_output(const std::string& path) { manifest_.outputs.push_back(path); }
  void write(const std::string& path) {
    manifest_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_manifest(path, manifest_);
  }

 private:
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

int run_coherence(const CommonOptions& opt, const std::vector<int>& sites, bool compare_bessel) {
  const ChainSpec spec = spec_of(opt);
  validate(spec);
  for (int site : sites)
    if (site < 0 || site >= spec.n_sites) throw std::out_of_range("site index outside 0 .. N-1");
  const auto taus = make_grid(opt.tau_max, opt.step);
  const auto series = coherence_series(spec, taus, opt.threads);

  std::vector<std::string> header{time_column(opt)};
  for (int site : sites) {
    header.push_back("re_phi_" + std::to_string(site));
    header.push_back("im_phi_" + std::to_string(site));
  }
  if (compare_bessel)
    for (int site : sites) {
      header.push_back("re_ref_" + std::to_string(site));
      header.push_back("im_ref_" + std::to_string(site));
    }

  std::vector<std::vector<double>> rows(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    auto& row = rows[j];
    row.push_back(report_time(opt, taus[j]));
    for (int site : sites) {
      const Complex amp = series[j].amps[static_cast<std::size_t>(site)];
      row.push_back(amp.real());
      row.push_back(amp.imag());
    }
    if (compare_bessel)
      for (int site : sites) {
        // infinite-chain reference at the ring distance of the site
        const int d = std::min(site, spec.n_sites - site);
        const Complex ref = phi_infinite(d, taus[j]);
        row.push_back(ref.real());
        row.push_back(ref.imag());
      }
  }

  ManifestWriter manifest("coherence");
  manifest.common(opt);
  manifest.param("tau_max", opt.tau_max);
  manifest.param("step", opt.step);
  manifest.param("compare_bessel", std::string(compare_bessel ? "true" : "false"));
  const std::string csv = out_path(opt, "_phi.csv");
  write_series(csv, header, rows);
  manifest.add_output(csv);
  manifest.write(out_path(opt, ".manifest.json"));
  return 0;
}

int run_populations(const CommonOptions& opt) {
  const ChainSpec spec = spec_of(opt);
  const auto taus = make_grid(opt.tau_max, opt.step);
  const PopulationField field = population_field(spec, taus, opt.threads);

  std::vector<std::string> header{time_column(opt)};
  for (int n = 0; n < spec.n_sites; ++n) header.push_back("p_" + std::to_string(n));
  std::vector<std::vector<double>> rows(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    rows[j].reserve(1 + field.pops[j].size());
    rows[j].push_back(report_time(opt, taus[j]));
    rows[j].insert(rows[j].end(), field.pops[j].begin(), field.pops[j].end());
  }

  ManifestWriter manifest("populations");
  manifest.common(opt);
  manifest.param("tau_max", opt.tau_max);
  manifest.param("step", opt.step);
  const std::string csv = out_path(opt, "_populations.csv");
  write_series(csv, header, rows);
  manifest.add_output(csv);
  manifest.write(out_path(opt, ".manifest.json"));
  return 0;
}

int run_entropy(const CommonOptions& opt) {
  const ChainSpec spec = spec_of(opt);
  const auto taus = make_grid(opt.tau_max, opt.step);
  const EntropyTrace trace = entropy_trace(spec, taus, opt.threads);

  std::vector<std::string> header{time_column(opt)};
  for (int n = 0; n < spec.n_sites; ++n) header.push_back("s_" + std::to_string(n));
  header.push_back("c_t");
  std::vector<std::vector<double>> rows(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    rows[j].reserve(2 + trace.site_entropy[j].size());
    rows[j].push_back(report_time(opt, taus[j]));
    rows[j].insert(rows[j].end(), trace.site_entropy[j].begin(), trace.site_entropy[j].end());
    rows[j].push_back(trace.total_correlation[j]);
  }

  ManifestWriter manifest("entropy");
  manifest.common(opt);
  manifest.param("tau_max", opt.tau_max);
  manifest.param("step", opt.step);
  const std::string csv = out_path(opt, "_entropy.csv");
  write_series(csv, header, rows);
  manifest.add_output(csv);

  json summary;
  summary["c_max"] = trace.c_max;
  summary["c_max_per_site"] = trace.c_max / spec.n_sites;
  summary["eta"] = trace.eta;
  if (taus.back() + 1e-9 >= static_cast<double>(spec.n_sites)) {
    const CorrelationPeak peak = correlation_peak(trace, spec);
    summary["tau_star"] = peak.tau_star;
    summary["c_star"] = peak.c_star;
  }
  const std::string summary_path = out_path(opt, "_summary.json");
  write_json(summary_path, summary);
  manifest.add_output(summary_path);
  manifest.write(out_path(opt, ".manifest.json"));
  return 0;
}

int run_recurrences(const CommonOptions& opt, double threshold, double window, bool infinite) {
  const ChainSpec spec = spec_of(opt);
  validate(spec);
  const auto taus = make_grid(opt.tau_max, opt.step);
  std::vector<std::complex<double>> phi0(taus.size());
  if (infinite) {
    for (std::size_t j = 0; j < taus.size(); ++j) phi0[j] = phi_infinite(0, taus[j]);
  } else {
    const auto series = coherence_series(spec, taus, opt.threads);
    for (std::size_t j = 0; j < taus.size(); ++j) phi0[j] = series[j].amps[0];
  }
  const RecurrenceReport report = detect_recurrences(taus, phi0, spec, threshold, window);

  json doc;
  doc["t_rec_scaled"] = report.t_rec_scaled;
  doc["threshold"] = report.threshold;
  doc["detection_window"] = report.detection_window;
  doc["input"] = infinite ? "infinite_reference" : "finite_chain";
  doc["events"] = json::array();
  for (const auto& event : report.events)
    doc["events"].push_back({{"q", event.q},
                             {"tau_detected", event.tau_detected},
                             {"strength", event.strength}});

  ManifestWriter manifest("recurrences");
  manifest.common(opt);
  manifest.param("tau_max", opt.tau_max);
  manifest.param("step", opt.step);
  manifest.param("threshold", threshold);
  manifest.param("window", window);
  manifest.param("infinite", std::string(infinite ? "true" : "false"));
  const std::string path = out_path(opt, "_recurrences.json");
  write_json(path, doc);
  manifest.add_output(path);
  manifest.write(out_path(opt, ".manifest.json"));
  std::cout << "events: " << report.events.size() << '\n';
  return 0;
}

int run_lightcone(const CommonOptions& opt, double pop_threshold) {
  const ChainSpec spec = spec_of(opt);
  const auto taus = make_grid(opt.tau_max, opt.step);
  const PopulationField field = population_field(spec, taus, opt.threads);
  const LightConeFit fit = lightcone_front(field, spec, pop_threshold);

  json doc;
  doc["threshold"] = pop_threshold;
  doc["speed"] = fit.speed;
  doc["intercept"] = fit.intercept;
  doc["residual"] = fit.residual;
  doc["first_arrival"] = json::array();
  for (double arrival : fit.first_arrival) {
    if (std::isfinite(arrival))
      doc["first_arrival"].push_back(arrival);
    else
      doc["first_arrival"].push_back(nullptr);
  }

  ManifestWriter manifest("lightcone");
  manifest.common(opt);
  manifest.param("tau_max", opt.tau_max);
  manifest.param("step", opt.step);
  manifest.param("pop_threshold", pop_threshold);
  const std::string path = out_path(opt, "_lightcone.json");
  write_json(path, doc);
  manifest.add_output(path);
  manifest.write(out_path(opt, ".manifest.json"));
  std::cout << "front speed: " << fit.speed << " scaled-time units per site\n";
  return 0;
}

int run_scaling(const CommonOptions& opt, std::vector<int> sizes, double span, double budget,
                bool trajectories, int points) {
  SweepOptions sweep_options;
  sweep_options.coupling = opt.coupling;
  sweep_options.onsite = opt.onsite;
  sweep_options.work_budget = budget;
  sweep_options.threads = opt.threads;
  const ScalingTable table = sweep_eta(sizes, opt.step, span, sweep_options);
  const PowerLawFit fit = fit_power_law(table);

  ManifestWriter manifest("scaling");
  manifest.param("coupling", opt.coupling);
  manifest.param("onsite", opt.onsite);
  manifest.param("step", opt.step);
  manifest.param("span", span);
  manifest.param("threads", opt.threads);
  {
    std::string joined;
    for (int n : sizes) joined += (joined.empty() ? "" : ",") + std::to_string(n);
    manifest.param("sizes", joined);
  }

  std::vector<std::string> header{"n_sites", "eta", "tau_star", "c_star"};
  std::vector<std::vector<double>> rows;
  for (const ScalingRow& row : table.rows)
    rows.push_back({static_cast<double>(row.n_sites), row.eta, row.tau_star, row.c_star});
  const std::string csv = out_path(opt, "_table.csv");
  write_series(csv, header, rows);
  manifest.add_output(csv);

  json doc;
  doc["alpha"] = fit.alpha;
  doc["log_intercept"] = fit.log_intercept;
  doc["residual_rms"] = fit.residual_rms;
  doc["grid_step"] = table.grid_step;
  doc["grid_span_factor"] = table.grid_span_factor;
  const std::string fit_path = out_path(opt, "_fit.json");
  write_json(fit_path, doc);
  manifest.add_output(fit_path);

  if (trajectories) {
    const ScaledTrajectories curves = scaled_trajectories(sizes, points, sweep_options);
    for (std::size_t i = 0; i < curves.sizes.size(); ++i) {
      std::vector<std::string> traj_header{"scaled_time", "ct_per_site", "cmax_per_site"};
      std::vector<std::vector<double>> traj_rows;
      for (std::size_t j = 0; j < curves.scaled_time.size(); ++j)
        traj_rows.push_back(
            {curves.scaled_time[j], curves.ct_over_n[i][j], curves.cmax_over_n[i]});
      const std::string traj_path =
          out_path(opt, "_traj_" + std::to_string(curves.sizes[i]) + ".csv");
      write_series(traj_path, traj_header, traj_rows);
      manifest.add_output(traj_path);
    }
  }
  manifest.write(out_path(opt, ".manifest.json"));
  std::cout << "alpha: " << fit.alpha << '\n';
  return 0;
}

int run_oracle_check(const CommonOptions& opt, bool full_spin, double tolerance) {
  const ChainSpec spec = spec_of(opt);
  validate(spec);
  if (full_spin && spec.n_sites > 12)
    throw budget_error("oracle-check: --full-spin requires N <= 12");
  const auto taus = make_grid(opt.tau_max, opt.step);
  const OracleReport report = compare(spec, taus);

  json doc;
  doc["max_abs_dev"] = report.max_abs_dev;
  doc["worst_site"] = report.worst_site;
  doc["worst_tau"] = report.worst_tau;
  doc["tolerance"] = tolerance;
  doc["oracles"] = json::array({"dense_sector"});
  if (spec.n_sites <= 12) doc["oracles"].push_back("full_spin");

  ManifestWriter manifest("oracle-check");
  manifest.common(opt);
  manifest.param("tau_max", opt.tau_max);
  manifest.param("step", opt.step);
  manifest.param("tolerance", tolerance);
  const std::string path = out_path(opt, "_oracle.json");
  write_json(path, doc);
  manifest.add_output(path);
  manifest.write(out_path(opt, ".manifest.json"));

  std::cout << "max |deviation|: " << report.max_abs_dev << " (site " << report.worst_site
            << ", tau " << report.worst_tau << ")\n";
  return report.max_abs_dev <= tolerance ? 0 : 1;
}

int run_bench(const CommonOptions& opt, double tau) {
  const ChainSpec spec = spec_of(opt);
  validate(spec);
  std::vector<int> spots;
  for (int i = 0; i < 8; ++i)
    spots.push_back(static_cast<int>(static_cast<long long>(i) * (spec.n_sites - 1) / 7));
  const BenchResult bench = coherence_bench(spec, tau, spots);

  std::vector<std::string> header{"n_sites", "tau",       "fft_seconds",
                                  "direct_seconds", "speedup", "max_spot_dev"};
  std::vector<std::vector<double>> rows{{static_cast<double>(spec.n_sites), tau,
                                         bench.fft_seconds, bench.direct_seconds,
                                         bench.direct_seconds / bench.fft_seconds,
                                         bench.max_spot_dev}};
  ManifestWriter manifest("bench");
  manifest.common(opt);
  manifest.param("tau", tau);
  const std::string csv = out_path(opt, "_bench.csv");
  write_series(csv, header, rows);
  manifest.add_output(csv);
  manifest.write(out_path(opt, ".manifest.json"));

  std::cout << "one batch call: " << bench.fft_seconds << " s; " << spec.n_sites
            << " direct calls: " << bench.direct_seconds
            << " s; speedup: " << bench.direct_seconds / bench.fft_seconds
            << "x; max spot deviation: " << bench.max_spot_dev << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-excitation dynamics of a periodic XX chain"};
  app.require_subcommand(1);

  CommonOptions coherence_opt, populations_opt, entropy_opt, recurrences_opt, lightcone_opt,
      scaling_opt, oracle_opt, bench_opt;

  auto* coherence_cmd =
      app.add_subcommand("coherence", "coherence-function series for selected sites");
  add_common(coherence_cmd, coherence_opt, "coherence");
  std::vector<int> sites{0};
  bool compare_bessel = false;
  coherence_cmd->add_option("--sites", sites, "site indices")->delimiter(',');
  coherence_cmd->add_flag("--compare-bessel", compare_bessel,
                          "also emit the infinite-chain Bessel reference");
  coherence_cmd->add_option("--tau-max", coherence_opt.tau_max, "grid end (scaled time)")
      ->required();
  coherence_cmd->add_option("--step", coherence_opt.step, "grid step (scaled time)");

  auto* populations_cmd =
      app.add_subcommand("populations", "excited-state populations of every site");
  add_common(populations_cmd, populations_opt, "populations");
  populations_cmd->add_option("--tau-max", populations_opt.tau_max, "grid end")->required();
  populations_cmd->add_option("--step", populations_opt.step, "grid step");

  auto* entropy_cmd =
      app.add_subcommand("entropy", "per-site entropies and the total correlation");
  add_common(entropy_cmd, entropy_opt, "entropy");
  entropy_cmd->add_option("--tau-max", entropy_opt.tau_max, "grid end")->required();
  entropy_cmd->add_option("--step", entropy_opt.step, "grid step");

  auto* recurrences_cmd = app.add_subcommand("recurrences", "detect bumps of |Phi_0| near qN");
  add_common(recurrences_cmd, recurrences_opt, "recurrences");
  double threshold = 3.0, window = 0.15;
  bool infinite = false;
  recurrences_cmd->add_option("--tau-max", recurrences_opt.tau_max, "grid end")->required();
  recurrences_cmd->add_option("--step", recurrences_opt.step, "grid step");
  recurrences_cmd->add_option("--threshold", threshold, "peak/baseline contrast threshold");
  recurrences_cmd->add_option("--window", window, "detection window fraction around qN");
  recurrences_cmd->add_flag("--infinite", infinite,
                            "analyze the infinite-chain reference instead (control run)");

  auto* lightcone_cmd = app.add_subcommand("lightcone", "population front arrival and speed fit");
  add_common(lightcone_cmd, lightcone_opt, "lightcone");
  double pop_threshold = 0.02;
  lightcone_cmd->add_option("--tau-max", lightcone_opt.tau_max, "grid end")->required();
  lightcone_cmd->add_option("--step", lightcone_opt.step, "grid step");
  lightcone_cmd->add_option("--pop-threshold", pop_threshold, "arrival population threshold");

  auto* scaling_cmd = app.add_subcommand("scaling", "size sweep of eta and the power-law fit");
  add_common(scaling_cmd, scaling_opt, "scaling", /*with_sites=*/false);
  scaling_opt.step = 0.05;
  std::vector<int> sizes;
  double span = 1.0, budget = 2e9;
  bool trajectories = false;
  int points = 200;
  scaling_cmd->add_option("--sizes", sizes, "chain sizes")->required()->delimiter(',');
  scaling_cmd->add_option("--step", scaling_opt.step, "grid step (scaled time)");
  scaling_cmd->add_option("--span", span, "grid span factor: tau runs over [0, span*N]");
  scaling_cmd->add_option("--budget", budget, "work budget guard");
  scaling_cmd->add_flag("--trajectories", trajectories, "also emit scaled C_T/N curves");
  scaling_cmd->add_option("--points", points, "points per scaled trajectory");

  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "brute-force oracles against the spectral route");
  add_common(oracle_cmd, oracle_opt, "oracle");
  bool full_spin = false;
  double tolerance = 1e-10;
  oracle_cmd->add_option("--tau-max", oracle_opt.tau_max, "grid end")->required();
  oracle_cmd->add_option("--step", oracle_opt.step, "grid step");
  oracle_cmd->add_flag("--full-spin", full_spin, "require the full 2^N spin oracle (N <= 12)");
  oracle_cmd->add_option("--tol", tolerance, "failure tolerance on the max deviation");

  auto* bench_cmd = app.add_subcommand("bench", "time the batch route against N direct sums");
  add_common(bench_cmd, bench_opt, "bench");
  double bench_tau = 50.0;
  bench_cmd->add_option("--tau", bench_tau, "scaled time of the benchmark point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (coherence_cmd->parsed()) return run_coherence(coherence_opt, sites, compare_bessel);
    if (populations_cmd->parsed()) return run_populations(populations_opt);
    if (entropy_cmd->parsed()) return run_entropy(entropy_opt);
    if (recurrences_cmd->parsed())
      return run_recurrences(recurrences_opt, threshold, window, infinite);
    if (lightcone_cmd->parsed()) return run_lightcone(lightcone_opt, pop_threshold);
    if (scaling_cmd->parsed())
      return run_scaling(scaling_opt, sizes, span, budget, trajectories, points);
    if (oracle_cmd->parsed()) return run_oracle_check(oracle_opt, full_spin, tolerance);
    if (bench_cmd->parsed()) return run_bench(bench_opt, bench_tau);
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
