// Command-line front end: detect / calibrate / sweep / chernoff.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mimdetect/csv.hpp"
#include "mimdetect/detectors.hpp"
#include "mimdetect/distributions.hpp"
#include "mimdetect/error_analysis.hpp"
#include "mimdetect/errors.hpp"
#include "mimdetect/experiments.hpp"
#include "mimdetect/rng.hpp"
#include "mimdetect/svg.hpp"

namespace {

using namespace mimd;

// A numeric flag that records whether it was given on the command line or in
// a config file; presets fill only values that came from neither.
struct OptVal {
  double value = 0.0;
  bool from_preset = false;
  CLI::Option* opt = nullptr;

  bool has() const { return from_preset || (opt != nullptr && opt->count() > 0); }
  void fill(double v) {
    if (!has()) {
      value = v;
      from_preset = true;
    }
  }
  double require(const char* flag) const {
    if (!has())
      throw ValidationError(std::string("missing ") + flag +
                            " (pass the flag or pick a --preset)");
    return value;
  }
};

struct ModelOpts {
  OptVal w_a, w_b, mean_a, std_a, mean_b, std_b, s0;
  std::string preset;

  void add_to(CLI::App* sub, bool with_s0 = true) {
    w_a.opt = sub->add_option("--wA", w_a.value, "prior probability of event A");
    w_b.opt = sub->add_option("--wB", w_b.value, "prior probability of event B");
    mean_a.opt = sub->add_option("--meanA", mean_a.value, "mean of the A density");
    std_a.opt = sub->add_option("--stdA", std_a.value,
                                "standard deviation of the A density");
    mean_b.opt = sub->add_option("--meanB", mean_b.value, "mean of the B density");
    std_b.opt = sub->add_option("--stdB", std_b.value,
                                "standard deviation of the B density");
    if (with_s0)
      s0.opt = sub->add_option(
          "--s0", s0.value, "magnifier scale (default: calibrate from A draws)");
    sub->add_option("--preset", preset, "named setup: fig1, fig3 or fig4")
        ->check(CLI::IsMember({"fig1", "fig3", "fig4"}));
  }

  // Named setups. fig1: the illustration pair with strongly unequal priors.
  // fig3: same A density against a farther B mean, priors at log-ratio 3.
  // fig4: the mean-separation setup; B mean defaults to the grid midpoint.
  void apply_preset() {
    if (preset.empty()) return;
    mean_a.fill(0.0);
    std_a.fill(0.126);
    std_b.fill(0.1);
    if (preset == "fig1") {
      w_b.fill(0.001);
      w_a.fill(1.0 - 0.001);
      mean_b.fill(0.35);
    } else if (preset == "fig3") {
      const double wb = 1.0 / 1001.0;  // log10(wA/wB) = 3
      w_b.fill(wb);
      w_a.fill(1.0 - wb);
      mean_b.fill(0.5);
    } else {
      w_b.fill(0.008);
      w_a.fill(1.0 - 0.008);
      mean_b.fill(0.5);
    }
  }

  PriorPair priors(bool default_equal = false) const {
    if (w_a.has() && w_b.has()) return PriorPair(w_a.value, w_b.value);
    if (w_a.has()) return PriorPair(w_a.value, 1.0 - w_a.value);
    if (w_b.has()) return PriorPair(1.0 - w_b.value, w_b.value);
    if (default_equal) return PriorPair(0.5, 0.5);
    throw ValidationError("missing priors: pass --wA or --wB, or pick a --preset");
  }

  GaussianDensity density_a() const {
    return GaussianDensity(mean_a.require("--meanA"), std_a.require("--stdA"));
  }
  GaussianDensity density_b() const {
    return GaussianDensity(mean_b.require("--meanB"), std_b.require("--stdB"));
  }
};

// Exactly 12 significant digits, plain decimal, trailing zeros kept.
std::string format_sig12(double v) {
  int decimals = 11;
  if (v > 0.0) decimals -= static_cast<int>(std::floor(std::log10(v)));
  if (decimals < 0) decimals = 0;
  if (decimals > 30) decimals = 30;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string describe_model(const PriorPair& priors, const GaussianDensity& da,
                           const GaussianDensity& db) {
  std::string s = "model: wA=" + csv::format_sig(priors.w_a, 6) +
                  " wB=" + csv::format_sig(priors.w_b, 6);
  s += " A=N(" + csv::format_sig(da.mean(), 6) + "," +
       csv::format_sig(da.stddev(), 6) + "^2)";
  s += " B=N(" + csv::format_sig(db.mean(), 6) + "," +
       csv::format_sig(db.stddev(), 6) + "^2)";
  return s;
}

std::string rates_line(const char* name, const ErrorRates& r) {
  return std::string(name) + ": alpha=" + csv::format_sig(r.alpha, 6) +
         " beta=" + csv::format_sig(r.beta, 6) +
         " pe=" + csv::format_sig(r.pe, 6);
}

std::string svg_path_for(const std::string& out) {
  if (out.size() > 4 && out.substr(out.size() - 4) == ".csv")
    return out.substr(0, out.size() - 4) + ".svg";
  return out + ".svg";
}

struct DetectArgs {
  ModelOpts model;
  std::string data;
  std::string out = "decisions.csv";
  std::uint64_t seed = 1;
  std::uint64_t calibration_size = 10000;
};

int run_detect(DetectArgs& a) {
  a.model.apply_preset();
  const PriorPair priors = a.model.priors();
  const GaussianDensity da = a.model.density_a();
  const GaussianDensity db = a.model.density_b();

  const csv::Observations obs = csv::read_observations(a.data);

  double s0;
  std::string s0_note;
  if (a.model.s0.has()) {
    s0 = a.model.s0.value;
    if (!(s0 > 0.0)) throw ValidationError("--s0 must be positive");
    s0_note = "(given)";
  } else {
    const std::vector<double> training =
        sample_density(da, a.calibration_size, a.seed);
    const DetectorModel precal{&da, &db, priors, 1.0};
    s0 = calibrate_s0(precal, training);
    s0_note = "(calibrated from " + std::to_string(a.calibration_size) +
              " A draws, seed " + std::to_string(a.seed) + ")";
  }
  const DetectorModel model{&da, &db, priors, s0};

  std::vector<std::string> lines;
  lines.push_back("x,verdict_bayes,verdict_mim,bayes_score,mim_score");
  for (double x : obs.xs) {
    const Decision d = decide(model, x);
    lines.push_back(csv::format_g17(x) + ',' + event_char(d.bayes) + ',' +
                    event_char(d.mim) + ',' + csv::format_g17(d.bayes_score) +
                    ',' + csv::format_g17(d.mim_score));
  }

  std::cout << describe_model(priors, da, db) << '\n';
  std::cout << "s0 = " << format_sig12(s0) << ' ' << s0_note << '\n';

  if (!obs.labels.empty()) {
    bool has_a = false;
    bool has_b = false;
    for (EventTag t : obs.labels) (t == EventTag::A ? has_a : has_b) = true;
    if (has_a && has_b) {
      std::vector<LabeledSample> samples;
      samples.reserve(obs.xs.size());
      for (std::size_t i = 0; i < obs.xs.size(); ++i)
        samples.push_back({obs.xs[i], obs.labels[i]});
      const EvalReport bayes = error_rates_monte_carlo(
          make_decider(model, Rule::Bayes), samples, priors);
      const EvalReport mim =
          error_rates_monte_carlo(make_decider(model, Rule::Mim), samples, priors);
      lines.push_back("# detector,alpha,beta,pe,misses,false_alarms,n_b,n_a");
      const auto summary_line = [](const char* name, const EvalReport& rep) {
        return std::string("# ") + name + ',' +
               csv::format_g17(rep.rates.alpha) + ',' +
               csv::format_g17(rep.rates.beta) + ',' +
               csv::format_g17(rep.rates.pe) + ',' +
               std::to_string(rep.counts.misses) + ',' +
               std::to_string(rep.counts.false_alarms) + ',' +
               std::to_string(rep.counts.n_b) + ',' +
               std::to_string(rep.counts.n_a);
      };
      lines.push_back(summary_line("bayes", bayes));
      lines.push_back(summary_line("mim", mim));
      std::cout << rates_line("bayes", bayes.rates) << '\n';
      std::cout << rates_line("mim", mim.rates) << '\n';
    } else {
      std::cout << "summary skipped: labels lack class " << (has_a ? 'B' : 'A')
                << '\n';
    }
  }

  csv::write_lines(a.out, lines);
  std::cout << "decided " << obs.xs.size() << " observations -> " << a.out
            << '\n';
  return 0;
}

struct CalibrateArgs {
  ModelOpts model;
  std::string data;
  std::string out = "calibration.csv";
  std::uint64_t seed = 1;
  std::uint64_t n = 10000;
  CLI::Option* n_opt = nullptr;
  CLI::Option* data_opt = nullptr;
};

int run_calibrate(CalibrateArgs& a) {
  a.model.apply_preset();
  const PriorPair priors = a.model.priors();
  const GaussianDensity da = a.model.density_a();
  const GaussianDensity db = a.model.density_b();

  if (a.data_opt->count() > 0 && a.n_opt->count() > 0)
    throw ValidationError("pass either --data or --n, not both");

  std::vector<double> training;
  if (a.data_opt->count() > 0) {
    training = csv::read_observations(a.data).xs;
  } else {
    if (a.n == 0) throw ValidationError("--n must be positive");
    training = sample_density(da, a.n, a.seed);
  }

  const DetectorModel model{&da, &db, priors, 1.0};
  const CalibrationStats stats = calibration_means(model, training);
  const double s0 = s0_from_means(stats.mean_a, stats.mean_b);

  std::cout << "s0 = " << format_sig12(s0) << '\n';
  std::cout << "mean_a = " << csv::format_sig(stats.mean_a, 6)
            << ", mean_b = " << csv::format_sig(stats.mean_b, 6)
            << ", n = " << stats.n << ", seed = " << a.seed << '\n';
  csv::write_calibration_csv(a.out, s0, stats.mean_a, stats.mean_b, stats.n,
                             a.seed);
  std::cout << "wrote " << a.out << '\n';
  return 0;
}

struct SweepArgs {
  ModelOpts model;
  std::string out = "sweep.csv";
  std::uint64_t seed = 1;
  std::uint64_t n = 1'000'000;
  std::uint64_t calibration_size = 10000;
  double tol = 1e-10;
  OptVal grid_from, grid_to, grid_step;
  bool plot = false;
  int threads = 0;
};

std::vector<double> build_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw ValidationError("--grid-step must be positive");
  if (!(to >= from)) throw ValidationError("--grid-to must be >= --grid-from");
  std::vector<double> grid;
  const double span = (to - from) / step;
  const int count = static_cast<int>(std::floor(span + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) grid.push_back(from + step * i);
  return grid;
}

int run_sweep(SweepArgs& a) {
  if (a.model.preset.empty() || a.model.preset == "fig1")
    throw ValidationError("sweep needs --preset fig3 (prior ratio) or fig4 (mean separation)");
  a.model.apply_preset();
  if (a.threads > 0) set_threads(a.threads);

  SweepSpec spec = a.model.preset == "fig3" ? default_prior_sweep()
                                            : default_mean_sweep();
  spec.n_samples = a.n;
  spec.calibration_size = a.calibration_size;
  spec.seed = a.seed;
  spec.quad_tol = a.tol;
  spec.mean_a = a.model.mean_a.require("--meanA");
  spec.std_a = a.model.std_a.require("--stdA");
  spec.std_b = a.model.std_b.require("--stdB");
  if (spec.kind == SweepKind::PriorRatio) {
    spec.mean_b = a.model.mean_b.require("--meanB");
  } else {
    const PriorPair priors = a.model.priors();
    spec.w_a = priors.w_a;
    spec.w_b = priors.w_b;
  }
  if (a.model.s0.has()) {
    if (!(a.model.s0.value > 0.0)) throw ValidationError("--s0 must be positive");
    spec.frozen_s0 = a.model.s0.value;
  }
  const bool any_grid_flag =
      a.grid_from.has() || a.grid_to.has() || a.grid_step.has();
  if (any_grid_flag) {
    spec.grid = build_grid(a.grid_from.require("--grid-from"),
                           a.grid_to.require("--grid-to"),
                           a.grid_step.require("--grid-step"));
  }

  const std::vector<SweepRow> rows = spec.kind == SweepKind::PriorRatio
                                         ? run_prior_sweep(spec)
                                         : run_mean_sweep(spec);

  std::size_t ok_rows = 0;
  for (const SweepRow& row : rows)
    if (row.status == "ok") ++ok_rows;

  csv::write_sweep_csv(a.out, rows);
  std::cout << sweep_kind_name(spec.kind) << " sweep: " << spec.grid.size()
            << " grid points, n=" << spec.n_samples << ", seed=" << spec.seed
            << (spec.frozen_s0 ? ", s0 frozen at " + csv::format_sig(*spec.frozen_s0, 6)
                               : std::string())
            << " -> " << a.out << '\n';
  std::cout << "value      source       s0         alpha_b    beta_b     "
               "alpha_m    beta_m     status\n";
  for (const SweepRow& row : rows) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%-10.6g %-12s %-10.6g %-10.6g %-10.6g %-10.6g %-10.6g %s",
                  row.sweep_value, rate_source_name(row.source), row.s0,
                  row.bayes.alpha, row.bayes.beta, row.mim.alpha, row.mim.beta,
                  row.status.c_str());
    std::cout << line << '\n';
  }

  if (a.plot) {
    const std::string path = svg_path_for(a.out);
    const std::string image = svg::render_sweep(rows, spec.kind);
    std::vector<std::string> one{image};
    csv::write_lines(path, one);
    std::cout << "wrote " << path << '\n';
  }

  if (ok_rows == 0) throw ComputationError("every grid point failed");
  if (ok_rows < rows.size())
    std::cout << "warning: " << rows.size() - ok_rows << " of " << rows.size()
              << " rows flagged\n";
  return 0;
}

struct ChernoffArgs {
  ModelOpts model;
  std::string out;
  CLI::Option* out_opt = nullptr;
  double tol = 1e-8;
};

int run_chernoff(ChernoffArgs& a) {
  a.model.apply_preset();
  const GaussianDensity da = a.model.density_a();
  const GaussianDensity db = a.model.density_b();
  const PriorPair priors = a.model.priors(/*default_equal=*/true);

  const ChernoffResult res = chernoff_exponent(da, db, a.tol);
  if (res.degenerate) {
    std::cout << "degenerate: densities indistinguishable; lambda* = 0.5, D* = 0\n";
    return 0;
  }
  std::cout << "lambda*       = " << csv::format_sig(res.lambda_star, 6) << '\n';
  std::cout << "D*            = " << csv::format_sig(res.d_star, 6) << '\n';
  std::cout << "D(p*||A)      = " << csv::format_sig(res.kl_to_a, 6) << '\n';
  std::cout << "D(p*||B)      = " << csv::format_sig(res.kl_to_b, 6) << '\n';

  const DetectorModel model{&da, &db, priors, 1.0};
  const ErrorRates bayes = error_rates_quadrature(
      make_decider(model, Rule::Bayes), priors, da, db, a.tol / 100.0);
  const double neg_log_pe =
      bayes.pe > 0.0 ? -std::log(bayes.pe)
                     : std::numeric_limits<double>::infinity();
  std::cout << "-ln(pe_bayes) = " << csv::format_sig(neg_log_pe, 6) << "  (wA="
            << csv::format_sig(priors.w_a, 6)
            << ", wB=" << csv::format_sig(priors.w_b, 6) << ")\n";

  if (a.out_opt->count() > 0) {
    std::vector<std::string> lines;
    lines.push_back("lambda_star,d_star,kl_to_a,kl_to_b,neg_log_pe_bayes");
    lines.push_back(csv::format_g17(res.lambda_star) + ',' +
                    csv::format_g17(res.d_star) + ',' +
                    csv::format_g17(res.kl_to_a) + ',' +
                    csv::format_g17(res.kl_to_b) + ',' +
                    csv::format_g17(neg_log_pe));
    csv::write_lines(a.out, lines);
    std::cout << "wrote " << a.out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bayes and importance-magnified detection of minor-probability events"};
  app.require_subcommand(1);
  // One INI file can configure every command: keys live in a section named
  // after the command ([detect], [sweep], ...). Command-line flags win over
  // config values. Subcommands fall through so --config may follow the
  // command name.
  app.set_config("--config", "",
                 "INI config file (one section per command, keys = flag names)");

  DetectArgs detect_args;
  CLI::App* detect = app.add_subcommand(
      "detect", "decide events for a CSV of observations (column x, optional label)");
  detect->fallthrough();
  detect_args.model.add_to(detect);
  detect->add_option("--data", detect_args.data, "input observations CSV")
      ->required();
  detect->add_option("--out", detect_args.out, "output decisions CSV");
  detect->add_option("--seed", detect_args.seed, "seed for auto-calibration draws");
  detect->add_option("--calibration-size", detect_args.calibration_size,
                     "training draws when --s0 is not given");

  CalibrateArgs cal_args;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "fit the magnifier scale s0 from A-density training data");
  calibrate->fallthrough();
  cal_args.model.add_to(calibrate, /*with_s0=*/false);
  cal_args.data_opt =
      calibrate->add_option("--data", cal_args.data, "training CSV (column x)");
  cal_args.n_opt = calibrate->add_option(
      "--n", cal_args.n, "generate this many training draws from the A density");
  calibrate->add_option("--seed", cal_args.seed, "seed for generated draws");
  calibrate->add_option("--out", cal_args.out, "calibration record CSV");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "score both detectors across a parameter grid (fig3 or fig4)");
  sweep->fallthrough();
  sweep_args.model.add_to(sweep);
  sweep->add_option("--out", sweep_args.out, "sweep table CSV");
  sweep->add_option("--seed", sweep_args.seed, "base seed for all grid points");
  sweep->add_option("--n", sweep_args.n, "Monte Carlo mixture draws per point");
  sweep->add_option("--calibration-size", sweep_args.calibration_size,
                    "training draws per point");
  sweep->add_option("--tol", sweep_args.tol, "quadrature tolerance");
  sweep_args.grid_from.opt =
      sweep->add_option("--grid-from", sweep_args.grid_from.value, "grid start");
  sweep_args.grid_to.opt =
      sweep->add_option("--grid-to", sweep_args.grid_to.value, "grid end");
  sweep_args.grid_step.opt =
      sweep->add_option("--grid-step", sweep_args.grid_step.value, "grid step");
  sweep->add_flag("--plot", sweep_args.plot, "also write an SVG plot");
  sweep->add_option("--threads", sweep_args.threads,
                    "worker threads (0 = all available)");

  ChernoffArgs chern_args;
  CLI::App* chernoff = app.add_subcommand(
      "chernoff", "error exponent diagnostics for the two densities");
  chernoff->fallthrough();
  chern_args.model.add_to(chernoff, /*with_s0=*/false);
  chern_args.out_opt =
      chernoff->add_option("--out", chern_args.out, "record CSV (optional)");
  chernoff->add_option("--tol", chern_args.tol, "divergence-balance tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (detect->parsed()) return run_detect(detect_args);
    if (calibrate->parsed()) return run_calibrate(cal_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (chernoff->parsed()) return run_chernoff(chern_args);
  } catch (const mimd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
