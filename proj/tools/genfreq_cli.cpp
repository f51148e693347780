// Command-line front end: synthesize benchmark waveforms, run the frequency
// estimators over recorded CSV data, and compare the resulting traces.
//
// Exit codes: 0 on success, 1 for usage problems, 2 for data problems
// (unreadable or inconsistent files, degenerate records).

#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <genfreq/genfreq.hpp>

namespace {

struct GenerateArgs {
  std::string scenario;
  std::string out;
  double v = 12e3;
  double f = 60.0;
  double fs = 10e3;
  double dur = 1.0;
  double tstart = 0.0;
  double phi = 0.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  // fault scenario
  double sag = 0.4;
  double tfault = 0.2;
  double tclear = 0.3;
  double jump = 0.3;
  double h3 = 0.05;
  // dc scenario
  double rate = 1.0;
  // example3 scenario
  double vd0 = 10e3;
  double amp = 1e3;
  double decay = 1.0;
  double fmod = 1.0;
};

genfreq::AnalyticSignal build_scenario(const GenerateArgs& args) {
  const double omega0 = 2.0 * std::numbers::pi * args.f;
  if (args.scenario == "example1") {
    return genfreq::single_phase(args.v, omega0, args.phi);
  }
  if (args.scenario == "example2") {
    return genfreq::three_phase_balanced(args.v, omega0);
  }
  if (args.scenario == "example3") {
    const double vd0 = args.vd0;
    const double a = args.amp;
    const double d = args.decay;
    const double wm = 2.0 * std::numbers::pi * args.fmod;
    auto vd = [=](double t) { return vd0 + a * std::exp(-d * t) * std::cos(wm * t); };
    auto vq = [=](double t) { return a * std::exp(-d * t) * std::sin(wm * t); };
    auto vd_dot = [=](double t) {
      return a * std::exp(-d * t) * (-d * std::cos(wm * t) - wm * std::sin(wm * t));
    };
    auto vq_dot = [=](double t) {
      return a * std::exp(-d * t) * (-d * std::sin(wm * t) + wm * std::cos(wm * t));
    };
    return genfreq::rotate_to_stationary(
        genfreq::dq_signal(vd, vq, vd_dot, vq_dot, omega0), omega0);
  }
  if (args.scenario == "dc") {
    const double v0 = args.v;
    const double r = args.rate;
    return genfreq::dc_signal([=](double t) { return v0 * std::exp(-r * t); },
                              [=](double t) { return -r * v0 * std::exp(-r * t); });
  }
  if (args.scenario == "fault") {
    return genfreq::fault_scenario(args.v, omega0, args.tfault, args.tclear, args.sag,
                                   args.jump, args.h3);
  }
  throw genfreq::InvalidParameter("unknown scenario '" + args.scenario + "'");
}

int run_generate(const GenerateArgs& args) {
  const genfreq::AnalyticSignal sig = build_scenario(args);
  const auto rows = std::llround(args.dur * args.fs);
  if (rows < 2) {
    throw genfreq::InvalidParameter("generate: duration holds fewer than 2 samples");
  }
  // Half-open interval [tstart, tstart + dur): exactly dur * fs rows. The
  // half-sample slack keeps the count stable against rounding.
  const double t_end = args.tstart + (static_cast<double>(rows) - 0.5) / args.fs;
  const genfreq::SampledSignal rec =
      genfreq::sample(sig, args.fs, args.tstart, t_end, args.noise, args.seed);
  genfreq::write_waveform(args.out, rec);
  std::cout << "wrote " << args.out << ": " << rec.n_samples() << " samples, "
            << rec.dim() << " channel(s) at " << rec.sample_rate() << " Hz ("
            << sig.description << ")\n";
  return 0;
}

struct EstimateArgs {
  std::string input;
  std::string out;
  std::string method = "geo";
  std::string scheme = "central";
  double tau = 0.0;
  std::optional<double> mask;
  bool prefilter = false;
  bool hz = false;
  std::string emit_curve;
  // PLL loop settings
  double kp = 92.0;
  double ki = 4230.0;
  double omega_init = 2.0 * std::numbers::pi * 60.0;
  std::optional<double> v_base;
};

// Phase amplitude guess for the PLL when none is given: for a balanced set
// the rotating magnitude is sqrt(3/2) times the phase amplitude.
double guess_v_base(const genfreq::SampledSignal& rec) {
  double peak = 0.0;
  for (std::size_t k = 0; k < rec.n_samples(); ++k) {
    peak = std::max(peak, genfreq::magnitude(rec.row(k)));
  }
  const double guess = peak * std::sqrt(2.0 / 3.0);
  if (!(guess > 0.0)) {
    throw genfreq::DegenerateCurve("estimate: record is identically zero");
  }
  return guess;
}

// Plot-ready trajectory file: the signal coordinates plus the per-sample
// curve quantities (arc speed = |v|, curvature of the traced path).
void emit_curve_csv(const std::string& path, const genfreq::SampledSignal& rec,
                    const genfreq::FrequencyTrace& trace) {
  const genfreq::SampledSignal deriv = genfreq::differentiate(rec);
  std::string out = "t";
  for (const auto& name : rec.channels()) {
    out += ',';
    out += name;
  }
  out += ",arc_speed,curvature,valid\n";
  for (std::size_t k = 0; k < rec.n_samples(); ++k) {
    const genfreq::VecN v = rec.row(k);
    double kappa = 0.0;
    if (trace.valid[k]) {
      kappa = genfreq::curvature(genfreq::CurveState{v, deriv.row(k)});
    }
    out += genfreq::format_double(rec.time(k));
    for (std::size_t c = 0; c < rec.dim(); ++c) {
      out += ',';
      out += genfreq::format_double(rec.at(k, c));
    }
    out += ',';
    out += genfreq::format_double(genfreq::magnitude(v));
    out += ',';
    out += genfreq::format_double(kappa);
    out += ',';
    out += trace.valid[k] ? '1' : '0';
    out += '\n';
  }
  genfreq::detail::write_file_atomic(path, out);
}

int run_estimate(const EstimateArgs& args) {
  const genfreq::SampledSignal rec = genfreq::read_waveform(args.input);

  genfreq::FrequencyTrace trace;
  if (args.method == "pll") {
    genfreq::PllConfig cfg;
    cfg.kp = args.kp;
    cfg.ki = args.ki;
    cfg.omega_init = args.omega_init;
    cfg.v_base = args.v_base ? *args.v_base : guess_v_base(rec);
    trace = genfreq::srf_pll(rec, cfg);
  } else {
    genfreq::EstimatorConfig cfg;
    cfg.diff_scheme = args.scheme == "onesided" ? genfreq::DiffScheme::OneSidedStartEnd
                                                : genfreq::DiffScheme::Central;
    cfg.filter_tau = args.tau;
    cfg.mask_threshold = args.mask;
    cfg.report_hz = args.hz;
    cfg.prefilter_derivative = args.prefilter;
    trace = genfreq::estimate_geometric(rec, cfg);
  }

  genfreq::write_trace(args.out, trace);
  if (!args.emit_curve.empty()) emit_curve_csv(args.emit_curve, rec, trace);

  double rho_sum = 0.0;
  double omega_sum = 0.0;
  std::size_t n_valid = 0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (!trace.valid[k]) continue;
    rho_sum += trace.rho[k];
    omega_sum += trace.omega_mag[k];
    ++n_valid;
  }
  std::cout << "wrote " << args.out << ": " << trace.size() << " samples, " << n_valid
            << " valid\n";
  if (n_valid > 0) {
    const double omega_mean = omega_sum / static_cast<double>(n_valid);
    std::cout << "mean rho " << rho_sum / static_cast<double>(n_valid) << " 1/s, ";
    if (args.hz) {
      std::cout << "mean frequency " << omega_mean / (2.0 * std::numbers::pi) << " Hz\n";
    } else {
      std::cout << "mean omega " << omega_mean << " rad/s\n";
    }
  }
  return 0;
}

struct CompareArgs {
  std::string trace_a;
  std::string trace_b;
  std::vector<double> window;
  std::string out;
};

int run_compare(const CompareArgs& args) {
  const genfreq::FrequencyTrace a = genfreq::read_trace(args.trace_a);
  const genfreq::FrequencyTrace b = genfreq::read_trace(args.trace_b);

  std::pair<double, double> window;
  if (args.window.size() == 2) {
    window = {args.window[0], args.window[1]};
  } else {
    window = {std::max(a.t.front(), b.t.front()), std::min(a.t.back(), b.t.back())};
  }

  const genfreq::ComparisonReport rep = genfreq::compare_traces(a, b, window);
  std::cout << "compared " << rep.n_compared << " samples in [" << window.first << ", "
            << window.second << "] s\n"
            << "rmse " << rep.rmse_omega << " rad/s, max deviation " << rep.max_abs_dev
            << " rad/s\n"
            << "settle time a " << rep.settle_time_a << " s, settle time b "
            << rep.settle_time_b << " s\n";
  if (!args.out.empty()) {
    genfreq::write_report(args.out, rep);
    std::cout << "wrote " << args.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized frequency toolkit: waveform synthesis, geometric and "
               "PLL frequency estimation, trace comparison"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read defaults from a key = value file (sections name the "
                 "subcommand)");

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Synthesize a benchmark waveform and write it as CSV");
  generate->fallthrough();
  generate
      ->add_option("scenario", gen.scenario,
                   "example1: constant-amplitude plane rotation; example2: balanced "
                   "three-phase; example3: decaying modulation on a rotating frame; "
                   "dc: decaying single channel; fault: three-phase sag with "
                   "harmonics")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3", "dc", "fault"}));
  generate->add_option("-o,--out", gen.out, "Output waveform CSV")->required();
  generate->add_option("--v", gen.v, "Signal amplitude in volts");
  generate->add_option("--f", gen.f, "Fundamental frequency in Hz");
  generate->add_option("--fs", gen.fs, "Sample rate in Hz");
  generate->add_option("--dur", gen.dur,
                       "Record length in seconds (rows = dur * fs)");
  generate->add_option("--tstart", gen.tstart, "Time of the first sample");
  generate->add_option("--phi", gen.phi, "Initial phase in radians (example1)");
  generate->add_option("--noise", gen.noise, "Additive Gaussian noise std in volts");
  generate->add_option("--seed", gen.seed, "Noise seed")->envname("GENFREQ_SEED");
  generate->add_option("--sag", gen.sag, "Sag depth in [0,1) (fault)");
  generate->add_option("--tfault", gen.tfault, "Fault onset time (fault)");
  generate->add_option("--tclear", gen.tclear, "Fault clearing time (fault)");
  generate->add_option("--jump", gen.jump, "Phase jump on phase b in radians (fault)");
  generate->add_option("--h3", gen.h3, "Relative 3rd harmonic amplitude (fault)");
  generate->add_option("--rate", gen.rate, "Exponential decay rate (dc)");
  generate->add_option("--vd0", gen.vd0, "Constant d-axis voltage (example3)");
  generate->add_option("--amp", gen.amp, "Modulation amplitude (example3)");
  generate->add_option("--decay", gen.decay, "Modulation decay rate (example3)");
  generate->add_option("--fmod", gen.fmod, "Modulation frequency in Hz (example3)");

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate the generalized frequency of a recorded waveform");
  estimate->fallthrough();
  estimate->add_option("-i,--input", est.input, "Input waveform CSV")->required();
  estimate->add_option("-o,--out", est.out, "Output trace CSV")->required();
  estimate->add_option("--method", est.method, "Estimator to run")
      ->check(CLI::IsMember({"geo", "pll"}));
  estimate->add_option("--scheme", est.scheme, "Endpoint handling for the derivative")
      ->check(CLI::IsMember({"central", "onesided"}));
  estimate->add_option("--tau", est.tau, "Smoothing time constant in seconds");
  estimate->add_option("--mask", est.mask,
                       "Magnitude below which samples are skipped");
  estimate->add_flag("--prefilter", est.prefilter,
                     "Smooth the derivative instead of the frequency trace");
  estimate->add_flag("--hz", est.hz, "Report frequency in Hz");
  estimate->add_option("--emit-curve", est.emit_curve,
                       "Also write the trajectory coordinates with arc speed and "
                       "curvature to this CSV");
  estimate->add_option("--kp", est.kp, "PLL proportional gain");
  estimate->add_option("--ki", est.ki, "PLL integral gain");
  estimate->add_option("--omega-init", est.omega_init, "PLL initial rate in rad/s");
  estimate->add_option("--v-base", est.v_base,
                       "PLL amplitude normalization (default: from data)");

  CompareArgs cmp;
  CLI::App* compare =
      app.add_subcommand("compare", "Compare two frequency traces over a window");
  compare->fallthrough();
  compare->add_option("trace_a", cmp.trace_a, "First trace CSV")->required();
  compare->add_option("trace_b", cmp.trace_b, "Second trace CSV")->required();
  compare
      ->add_option("--window", cmp.window,
                   "Comparison window start and end in seconds")
      ->expected(2);
  compare->add_option("-o,--out", cmp.out, "Write the report as CSV");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return run_generate(gen);
    if (estimate->parsed()) return run_estimate(est);
    if (compare->parsed()) return run_compare(cmp);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const genfreq::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const genfreq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
