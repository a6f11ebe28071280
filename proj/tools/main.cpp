// Command-line front end: optimal level construction, entropy curves, Gibbs
// solves, semicontinuity bounds, and the randomized self-checks.
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "optham/optham.hpp"

namespace {

using optham::io::json;

struct CommonArgs {
  std::string spectrum;
  double budget = 1.0;
  std::string units = "nats";

  double unit_scale() const {
    if (units == "nats") return 1.0;
    if (units == "bits") return std::numbers::ln2;
    throw optham::BadConfig("units must be nats or bits");
  }
};

void add_units_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--units", args.units, "entropy units: nats or bits")
      ->default_val("nats");
}

int run_optimal(const CommonArgs& args, double energy, std::size_t levels) {
  double scale = args.unit_scale();
  optham::Spectrum spec = optham::io::parse_spectrum_arg(args.spectrum);
  optham::OptimalHamiltonian opt =
      optham::optimal_hamiltonian(spec, args.budget, energy);
  double entropy = optham::optimal_entropy(spec, args.budget, energy);

  json out;
  out["regime"] = std::string(1, optham::regime_label(opt.regime()));
  out["kernel_dim"] = opt.kernel_dim();
  out["theta"] = opt.theta();
  out["beta"] = opt.beta();
  out["gibbs_beta"] = opt.regime() == optham::Regime::A
                          ? 0.0
                          : opt.beta() / args.budget;
  if (opt.regime() == optham::Regime::B) {
    out["level_scale"] = opt.level_scale();
    out["level_shift"] = opt.level_shift();
  }
  out["entropy"] = entropy / scale;
  std::size_t count = levels;
  if (spec.finite_rank()) count = std::min(count, spec.rank());
  json lv = json::array();
  for (std::size_t i = 1; i <= count; ++i) lv.push_back(opt.level(i));
  out["levels"] = lv;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_curve(const CommonArgs& args, double e_min, double e_max,
              std::size_t points, bool reference, const std::string& output) {
  double scale = args.unit_scale();
  optham::Spectrum spec = optham::io::parse_spectrum_arg(args.spectrum);
  std::vector<optham::CurveRow> rows =
      optham::entropy_curve(spec, args.budget, e_min, e_max, points);
  if (output.empty()) {
    optham::io::write_curve_csv(std::cout, rows, reference, scale);
  } else {
    std::ofstream os(output);
    if (!os) throw optham::BadConfig("cannot open output file: " + output);
    optham::io::write_curve_csv(os, rows, reference, scale);
  }
  return 0;
}

int run_gibbs(const std::string& levels_path, double energy, double scale,
              std::size_t max_weights) {
  optham::Hamiltonian H = optham::io::load_hamiltonian(levels_path);
  optham::GibbsState st = optham::solve_gibbs(H, energy);
  json out;
  out["beta"] = st.beta;
  out["mean_energy"] = st.mean_energy;
  out["entropy"] = st.entropy / scale;
  out["finite_dim_uniform"] = st.finite_dim_uniform;
  out["weight_tail"] = st.weight_tail;
  json w = json::array();
  for (std::size_t i = 0; i < st.weights.size() && i < max_weights; ++i) {
    w.push_back(st.weights[i]);
  }
  out["weights"] = w;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_lsb(const CommonArgs& args, double eps, const std::string& preset_name,
            bool list_presets) {
  if (list_presets) {
    std::cout << optham::io::presets_to_json().dump(2) << "\n";
    return 0;
  }
  double scale = args.unit_scale();
  optham::Spectrum spec = optham::io::parse_spectrum_arg(args.spectrum);
  const optham::CharacteristicPreset& preset = optham::find_preset(preset_name);
  double main = optham::semicontinuity_main_term(spec, eps);
  double envelope = optham::binary_entropy_envelope(eps);
  json out;
  out["preset"] = preset.name;
  out["C"] = preset.C;
  out["D"] = preset.D;
  out["metric_note"] = preset.metric_note;
  out["eps"] = eps;
  out["main_term"] = main / scale;
  out["envelope"] = envelope / scale;
  out["bound"] = optham::semicontinuity_bound(spec, eps, preset) / scale;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_verify(const CommonArgs& args, double energy, std::size_t trials,
               std::uint64_t seed, double b, double cap) {
  optham::Spectrum spec = optham::io::parse_spectrum_arg(args.spectrum);
  std::vector<double> a = optham::oracle::materialize(spec);
  std::vector<optham::oracle::CheckReport> reports;

  auto append = [&reports](std::vector<optham::oracle::CheckReport> r) {
    for (auto& item : r) reports.push_back(std::move(item));
  };
  append(optham::oracle::verify_piecewise_minimum(a, b, cap, trials, seed));
  append(optham::oracle::verify_dual_minimum(a, energy / args.budget, 10000,
                                             spec.finite_rank()));
  append(optham::oracle::verify_comparison(a, b, trials, seed + 1));
  bool has_block = false;
  for (std::size_t i = 1; i < a.size(); ++i) has_block |= a[i] == a[i - 1];
  if (has_block) append(optham::oracle::verify_averaging(a, b, trials, seed + 2));
  append(optham::oracle::verify_optimality(spec, args.budget, energy,
                                           std::min<std::size_t>(trials, 1000),
                                           seed + 3));

  std::cout << optham::io::reports_to_json(reports).dump(2) << "\n";
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"entropy-optimal level sequences for mixed-state spectra"};
  app.require_subcommand(1);

  CommonArgs args;
  double energy = 0.5;
  double e_min = 0.1, e_max = 2.0;
  std::size_t points = 50, levels = 16, max_weights = 16, trials = 10000;
  std::uint64_t seed = 20260816;
  double eps = 0.1, b = 1.0, cap = 0.25;
  bool reference = false, list_presets = false;
  std::string output, levels_path, preset_name = "von Neumann entropy";

  auto* c_opt = app.add_subcommand(
      "optimal", "construct the entropy-minimizing level sequence");
  c_opt->add_option("--spectrum", args.spectrum,
                    "uniform:N | linear:N | geometric:E0 | descriptor.json")
      ->required();
  c_opt->add_option("--budget", args.budget, "energy budget E0 on the state")
      ->required();
  c_opt->add_option("--energy", energy, "mean energy E of the Gibbs side")
      ->required();
  c_opt->add_option("--levels", levels, "how many levels to print");
  add_units_option(c_opt, args);

  auto* c_curve = app.add_subcommand(
      "curve", "minimal-entropy curve over a mean-energy grid (CSV)");
  c_curve->add_option("--spectrum", args.spectrum,
                      "uniform:N | linear:N | geometric:E0 | descriptor.json")
      ->required();
  c_curve->add_option("--budget", args.budget, "energy budget E0")->required();
  c_curve->add_option("--min", e_min, "grid start")->required();
  c_curve->add_option("--max", e_max, "grid end")->required();
  c_curve->add_option("--points", points, "grid size");
  c_curve->add_flag("--reference", reference,
                    "append the unconstrained-envelope entropy column");
  c_curve->add_option("--output", output, "write CSV here instead of stdout");
  add_units_option(c_curve, args);

  auto* c_gibbs =
      app.add_subcommand("gibbs", "thermal state at a given mean energy");
  c_gibbs->add_option("--levels", levels_path, "level descriptor JSON file")
      ->required();
  c_gibbs->add_option("--energy", energy, "target mean energy")->required();
  c_gibbs->add_option("--max-weights", max_weights,
                      "how many weights to print");
  add_units_option(c_gibbs, args);

  auto* c_lsb = app.add_subcommand(
      "lsb", "local-semicontinuity bound for an entropy-type characteristic");
  c_lsb->add_option("--spectrum", args.spectrum,
                    "uniform:N | linear:N | geometric:E0 | descriptor.json");
  c_lsb->add_option("--eps", eps, "perturbation size in (0, 1]");
  c_lsb->add_option("--preset", preset_name, "characteristic preset name");
  c_lsb->add_flag("--list-presets", list_presets, "print the preset table");
  add_units_option(c_lsb, args);

  auto* c_verify = app.add_subcommand(
      "verify", "randomized self-checks of the closed forms (JSON report)");
  c_verify->add_option("--spectrum", args.spectrum,
                       "uniform:N | linear:N | geometric:E0 | descriptor.json")
      ->required();
  c_verify->add_option("--budget", args.budget, "energy budget E0")->required();
  c_verify->add_option("--energy", energy, "mean energy E")->required();
  c_verify->add_option("--trials", trials, "random trials per claim");
  c_verify->add_option("--seed", seed, "RNG seed");
  c_verify->add_option("--b", b, "objective parameter for the piecewise check");
  c_verify->add_option("--cap", cap, "first-coordinate cap for the piecewise check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (c_opt->parsed()) return run_optimal(args, energy, levels);
  if (c_curve->parsed()) {
    return run_curve(args, e_min, e_max, points, reference, output);
  }
  if (c_gibbs->parsed()) {
    return run_gibbs(levels_path, energy, args.unit_scale(), max_weights);
  }
  if (c_lsb->parsed()) {
    if (!list_presets && args.spectrum.empty()) {
      throw optham::BadConfig("lsb needs --spectrum (or --list-presets)");
    }
    return run_lsb(args, eps, preset_name, list_presets);
  }
  if (c_verify->parsed()) {
    return run_verify(args, energy, trials, seed, b, cap);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const optham::BadConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const optham::NonNormalized& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const optham::NotMixed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const optham::InfiniteEntropy& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const optham::IndexBeyondRank& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const optham::DegenerateBeta& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 7;
  } catch (const optham::NoGibbsState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 8;
  } catch (const optham::NoConvergenceCertificate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 9;
  } catch (const optham::OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 10;
  } catch (const optham::SamplingExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 11;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
