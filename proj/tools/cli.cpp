#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "ctreg/error.hpp"
#include "ctreg/fourier_recon.hpp"
#include "ctreg/io.hpp"
#include "ctreg/metrics.hpp"
#include "ctreg/noise.hpp"
#include "ctreg/parallel.hpp"
#include "ctreg/param_choice.hpp"
#include "ctreg/spectral_reg.hpp"

namespace ctreg::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

/// Every knob of every subcommand. The whole struct is written into each
/// run report.
struct RunConfig {
  std::string subcommand;
  // geometry
  int M = 128;
  double tau = 1.0;
  int p = 180;
  int q = 128;
  double rho = 1.0;
  // phantom
  std::string kind = "gaussian";
  double width = 0.15;
  // reconstruction
  double s = 1.2;
  double alpha = 1e-10;
  std::string alpha_grid = "1e-12:10:27";
  int d = 2;
  double N = 0.0;  // 0 selects pi M / tau
  double cutoff = 0.0;  // 0 selects pi q / rho
  // noise
  double delta = 0.0;
  std::uint64_t seed = 0;
  // rates
  double a = 0.5;
  double p_exp = 1.0;
  double beta = 1.0;
  int J = 2000;
  int trials = 10;
  std::string delta_grid = "1e-4:1e-1:7";
  std::string family = "tikhonov";
  double tsvd_power = 3.0;
  // runtime and io
  unsigned threads = 1;
  std::string in;
  std::string out;
  std::string reference;
  std::string csv;
  std::string report;
  std::string config;
};

ordered_json to_json(const RunConfig& c) {
  return ordered_json{
      {"subcommand", c.subcommand}, {"M", c.M},
      {"tau", c.tau},               {"p", c.p},
      {"q", c.q},                   {"rho", c.rho},
      {"kind", c.kind},             {"width", c.width},
      {"s", c.s},                   {"alpha", c.alpha},
      {"alpha_grid", c.alpha_grid}, {"d", c.d},
      {"N", c.N},                   {"cutoff", c.cutoff},
      {"delta", c.delta},           {"seed", c.seed},
      {"a", c.a},                   {"p_exp", c.p_exp},
      {"beta", c.beta},             {"J", c.J},
      {"trials", c.trials},         {"delta_grid", c.delta_grid},
      {"family", c.family},         {"tsvd_power", c.tsvd_power},
      {"threads", c.threads},       {"in", c.in},
      {"out", c.out},               {"reference", c.reference},
      {"csv", c.csv},               {"report", c.report},
      {"config", c.config}};
}

ordered_json to_json(const MetricsRow& m) {
  const auto num = [](double v) -> ordered_json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  return ordered_json{{"method", m.method}, {"alpha", m.alpha},
                      {"delta", m.delta},   {"seed", m.seed},
                      {"mse", m.mse},       {"psnr", num(m.psnr)},
                      {"ssim", m.ssim},     {"relative_error", m.relative_error}};
}

/// lo:hi:n, log-spaced, for the rates delta grid.
std::vector<double> parse_log_grid(const std::string& text) {
  return AlphaGrid::parse(text).values();
}

void validate(const RunConfig& c) {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(what);
  };
  require(c.M >= 1, "--M must be >= 1");
  require(c.tau > 0 && std::isfinite(c.tau), "--tau must be > 0");
  require(c.p >= 2, "--p must be >= 2");
  require(c.q >= 1, "--q must be >= 1");
  require(c.rho > 0 && std::isfinite(c.rho), "--rho must be > 0");
  require(c.width > 0, "--width must be > 0");
  require(c.s >= 0 && std::isfinite(c.s), "--s must be >= 0");
  require(c.alpha >= 0 && std::isfinite(c.alpha), "--alpha must be >= 0");
  require(c.d >= 1, "--d must be >= 1");
  require(c.N >= 0 && std::isfinite(c.N), "--N must be >= 0 (0 selects pi M / tau)");
  require(c.cutoff >= 0, "--cutoff must be >= 0 (0 selects pi q / rho)");
  require(c.delta >= 0 && std::isfinite(c.delta), "--delta must be >= 0");
  require(c.a > 0 && c.p_exp > 0 && c.beta > 0, "--a, --p-exp and --beta must be > 0");
  require(c.J >= 1, "--J must be >= 1");
  require(c.trials >= 1, "--trials must be >= 1");
  require(c.tsvd_power > 0, "--tsvd-power must be > 0");
  require(c.family == "tikhonov" || c.family == "tsvd", "--family must be tikhonov or tsvd");
  AlphaGrid::parse(c.alpha_grid);
  AlphaGrid::parse(c.delta_grid);
}

PhantomSpec phantom_for(const RunConfig& c) {
  if (c.kind == "gaussian") return gaussian_phantom(c.width);
  if (c.kind == "disk") return disk_phantom();
  if (c.kind == "shepp-logan") return shepp_logan_phantom();
  if (c.kind == "cheese") return cheese_phantom();
  throw ValidationError("unknown phantom kind '" + c.kind + "'");
}

ReconConfig recon_config(const RunConfig& c) {
  ReconConfig cfg;
  cfg.s = SobolevOrder(c.s);
  cfg.alpha = c.alpha;
  cfg.oversampling = c.d;
  cfg.bandwidth = c.N;
  cfg.validate();
  return cfg;
}

Sinogram load_sinogram(const RunConfig& c) {
  if (c.in.empty()) throw UsageError("--in is required");
  return io::read_sinogram(c.in);
}

/// Metrics against --reference, when given.
void attach_metrics(ordered_json& report, const RunConfig& c, const Image2D& image,
                    const std::string& method, double alpha) {
  if (c.reference.empty()) return;
  const Image2D ref = io::read_image(c.reference);
  MetricsRow row = evaluate(image, ref, method);
  row.alpha = alpha;
  row.delta = c.delta;
  row.seed = c.seed;
  report["metrics"].push_back(to_json(row));
}

void write_image_artifact(ordered_json& report, const RunConfig& c, const Image2D& image) {
  if (c.out.empty()) return;
  io::write_image(c.out, image);
  report["artifacts"]["image"] = c.out;
}

ordered_json cmd_phantom(const RunConfig& c, ordered_json report) {
  if (c.out.empty()) throw UsageError("--out is required");
  const PhantomSpec spec = phantom_for(c);
  const Image2D image = render(spec, c.M, c.tau);
  io::write_image(c.out, image);
  report["artifacts"]["image"] = c.out;
  report["phantom"] = {{"kind", spec.kind()}, {"components", spec.components.size()},
                       {"mass", image.mass()}};
  return report;
}

ordered_json cmd_project(const RunConfig& c, ordered_json report) {
  if (c.in.empty()) throw UsageError("--in is required");
  if (c.out.empty()) throw UsageError("--out is required");
  const Image2D image = io::read_image(c.in);
  const Sinogram y = project(image, c.p, c.q, c.rho);
  io::write_sinogram(c.out, y);
  report["artifacts"]["sinogram"] = c.out;
  report["sinogram"] = {{"p", y.angles}, {"q", y.half_offsets}, {"rho", y.radius},
                        {"l2_norm", y.l2_norm()}};
  return report;
}

ordered_json cmd_noise(const RunConfig& c, ordered_json report) {
  if (c.out.empty()) throw UsageError("--out is required");
  const Sinogram y = load_sinogram(c);
  const Sinogram noisy = add_noise(y, NoiseSpec{c.delta, c.seed});
  io::write_sinogram(c.out, noisy);
  const NoiseNorms norms = noise_norms(y, noisy, SobolevOrder(c.s));
  report["artifacts"]["sinogram"] = c.out;
  report["noise"] = {{"delta", c.delta}, {"seed", c.seed},
                     {"prng", std::string(kNoiseGenerator)},
                     {"l2", norms.l2}, {"hminus_s", norms.hminus_s}};
  return report;
}

ordered_json cmd_reconstruct(const RunConfig& c, ordered_json report) {
  const Sinogram y = load_sinogram(c);
  const ReconConfig cfg = recon_config(c);
  const Reconstructor recon(y, cfg, c.M, c.tau);
  const SynthesisResult result = recon.run(c.alpha);
  write_image_artifact(report, c, result.image);
  report["reconstruction"] = {{"alpha", c.alpha},
                              {"bandwidth", recon.spectrum().grid.bandwidth()},
                              {"imaginary_norm", result.imaginary_norm},
                              {"l2_norm", result.image.l2_norm()}};
  attach_metrics(report, c, result.image, "fourier-tikhonov", c.alpha);
  return report;
}

ordered_json cmd_fbp(const RunConfig& c, ordered_json report) {
  const Sinogram y = load_sinogram(c);
  const double cutoff = c.cutoff > 0 ? c.cutoff : std::numbers::pi / y.offset_step();
  const Image2D image = fbp_baseline(y, c.M, c.tau, cutoff);
  write_image_artifact(report, c, image);
  report["fbp"] = {{"cutoff", cutoff}, {"l2_norm", image.l2_norm()}};
  attach_metrics(report, c, image, "fbp", 0.0);
  return report;
}

ordered_json cmd_sweep(const RunConfig& c, ordered_json report) {
  if (c.reference.empty()) throw UsageError("--reference is required");
  const Sinogram y = load_sinogram(c);
  const Image2D ref = io::read_image(c.reference);
  const Reconstructor recon(y, recon_config(c), c.M, c.tau);
  std::vector<std::vector<double>> table;
  std::size_t best = 0;
  double best_error = std::numeric_limits<double>::infinity();
  std::optional<Image2D> best_image;
  for (double alpha : AlphaGrid::parse(c.alpha_grid).values()) {
    Image2D image = recon.run(alpha).image;
    MetricsRow row = evaluate(image, ref, "fourier-tikhonov");
    row.alpha = alpha;
    row.delta = c.delta;
    row.seed = c.seed;
    if (row.relative_error < best_error) {
      best_error = row.relative_error;
      best = table.size();
      best_image = std::move(image);
    }
    table.push_back({alpha, row.mse, row.psnr, row.ssim, row.relative_error});
    report["metrics"].push_back(to_json(row));
  }
  if (!c.csv.empty()) {
    io::write_csv(c.csv, {"alpha", "mse", "psnr", "ssim", "relative_error"}, table);
    report["artifacts"]["csv"] = c.csv;
  }
  write_image_artifact(report, c, *best_image);
  report["sweep"] = {{"best_alpha", table[best][0]}, {"best_relative_error", best_error}};
  return report;
}

ordered_json cmd_lcurve(const RunConfig& c, ordered_json report) {
  const Sinogram y = load_sinogram(c);
  const Reconstructor recon(y, recon_config(c), c.M, c.tau);
  const LCurveResult result =
      modified_lcurve(recon, y, AlphaGrid::parse(c.alpha_grid).values());
  std::vector<std::vector<double>> table;
  ordered_json rows = ordered_json::array();
  for (const auto& r : result.rows) {
    table.push_back({r.alpha, r.residual2, r.norm2, r.objective});
    rows.push_back({{"alpha", r.alpha}, {"residual2", r.residual2},
                    {"norm2", r.norm2}, {"J_F", r.objective}});
  }
  if (!c.csv.empty()) {
    io::write_csv(c.csv, {"alpha", "residual2", "norm2", "J_F"}, table);
    report["artifacts"]["csv"] = c.csv;
  }
  const Image2D image = recon.run(result.best_alpha).image;
  write_image_artifact(report, c, image);
  report["lcurve"] = {{"best_alpha", result.best_alpha}, {"rows", rows}};
  attach_metrics(report, c, image, "fourier-tikhonov-lcurve", result.best_alpha);
  return report;
}

ordered_json cmd_metrics(const RunConfig& c, ordered_json report) {
  if (c.in.empty()) throw UsageError("--in is required");
  if (c.reference.empty()) throw UsageError("--reference is required");
  attach_metrics(report, c, io::read_image(c.in), "input", c.alpha);
  return report;
}

ordered_json cmd_rates(const RunConfig& c, ordered_json report) {
  DiagonalModel model(c.J, c.a, c.p_exp, c.beta);
  const RegularizerSpec spec =
      c.family == "tsvd" ? RegularizerSpec::tsvd(c.tsvd_power) : RegularizerSpec::tikhonov();
  const auto deltas = parse_log_grid(c.delta_grid);
  const RateResult result = rate_experiment(model, spec, deltas, c.trials, c.seed);
  std::vector<std::vector<double>> table;
  ordered_json rows = ordered_json::array();
  for (const auto& r : result.rows) {
    table.push_back({r.delta, r.alpha, r.mean_error, r.std_error});
    rows.push_back({{"delta", r.delta}, {"alpha", r.alpha},
                    {"mean_error", r.mean_error}, {"std", r.std_error}});
  }
  if (!c.csv.empty()) {
    io::write_csv(c.csv, {"delta", "alpha", "mean_error", "std"}, table);
    report["artifacts"]["csv"] = c.csv;
  }
  report["rates"] = {{"slope", result.slope},
                     {"expected", result.expected},
                     {"solution_decay", model.effective_decay()},
                     {"truncation_ratio", result.truncation_ratio},
                     {"prng", std::string(kNoiseGenerator)},
                     {"rows", rows}};
  return report;
}

/// Reads `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config file '" + path + "' line " + std::to_string(lineno) +
                            ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    entries[key] = trim(line.substr(eq + 1));
  }
  return entries;
}

/// Splices config-file entries in front of the command line; flags given
/// explicitly win.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    std::string name = a.substr(2);
    if (const auto eq = name.find('='); eq != std::string::npos) {
      if (name.substr(0, eq) == "config") path = name.substr(eq + 1);
      name.erase(eq);
    } else if (name == "config" && i + 1 < args.size()) {
      path = args[i + 1];
    }
    given.insert(name);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> merged(args.begin(), args.begin() + 1);
  for (const auto& [key, value] : read_config_file(path)) {
    if (given.count(key)) continue;
    merged.push_back("--" + key);
    merged.push_back(value);
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
  sub->add_option("--report", c.report, "JSON report path (default: stdout)");
  sub->add_option("--config", c.config, "key = value file; explicit flags win");
}

void add_geometry(CLI::App* sub, RunConfig& c) {
  sub->add_option("--M", c.M, "image half pixel count")->capture_default_str();
  sub->add_option("--tau", c.tau, "image half width")->capture_default_str();
}

void add_recon(CLI::App* sub, RunConfig& c) {
  add_geometry(sub, c);
  sub->add_option("--s", c.s, "Sobolev embedding order")->capture_default_str();
  sub->add_option("--d", c.d, "frequency oversampling")->capture_default_str();
  sub->add_option("--N", c.N, "frequency bandwidth, 0 = pi M / tau")->capture_default_str();
  sub->add_option("--delta", c.delta, "noise level, recorded in metrics")->capture_default_str();
  sub->add_option("--seed", c.seed, "noise seed, recorded in metrics")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Sobolev-embedding Tikhonov tomography toolkit", "ctreg"};
  app.require_subcommand(1);

  auto* phantom = app.add_subcommand("phantom", "render a synthetic phantom to IMG1");
  add_geometry(phantom, c);
  phantom->add_option("--kind", c.kind, "gaussian | disk | shepp-logan | cheese")->capture_default_str();
  phantom->add_option("--width", c.width, "gaussian width")->capture_default_str();
  phantom->add_option("--out", c.out, "output IMG1");

  auto* proj = app.add_subcommand("project", "Radon-project an IMG1 image to SIN1");
  proj->add_option("--in", c.in, "input IMG1");
  proj->add_option("--p", c.p, "angle count")->capture_default_str();
  proj->add_option("--q", c.q, "radial half count")->capture_default_str();
  proj->add_option("--rho", c.rho, "support radius")->capture_default_str();
  proj->add_option("--out", c.out, "output SIN1");

  auto* noise = app.add_subcommand("noise", "add relative gaussian noise to a SIN1");
  noise->add_option("--in", c.in, "input SIN1");
  noise->add_option("--delta", c.delta, "relative noise level")->capture_default_str();
  noise->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
  noise->add_option("--s", c.s, "order for the reported H^-s noise norm")->capture_default_str();
  noise->add_option("--out", c.out, "output SIN1");

  auto* recon = app.add_subcommand("reconstruct", "Fourier-based Tikhonov reconstruction");
  recon->add_option("--in", c.in, "input SIN1");
  add_recon(recon, c);
  recon->add_option("--alpha", c.alpha, "regularization parameter")->capture_default_str();
  recon->add_option("--out", c.out, "output IMG1");
  recon->add_option("--reference", c.reference, "reference IMG1 for metrics");

  auto* fbp = app.add_subcommand("fbp", "filtered backprojection baseline");
  fbp->add_option("--in", c.in, "input SIN1");
  add_geometry(fbp, c);
  fbp->add_option("--cutoff", c.cutoff, "ramp cutoff, 0 = pi q / rho")->capture_default_str();
  fbp->add_option("--delta", c.delta, "noise level, recorded in metrics")->capture_default_str();
  fbp->add_option("--seed", c.seed, "noise seed, recorded in metrics")->capture_default_str();
  fbp->add_option("--out", c.out, "output IMG1");
  fbp->add_option("--reference", c.reference, "reference IMG1 for metrics");

  auto* sweep = app.add_subcommand("sweep", "reconstruct over an alpha grid against a reference");
  sweep->add_option("--in", c.in, "input SIN1");
  add_recon(sweep, c);
  sweep->add_option("--alpha-grid", c.alpha_grid, "lo:hi:n, log-spaced")->capture_default_str();
  sweep->add_option("--reference", c.reference, "reference IMG1");
  sweep->add_option("--csv", c.csv, "output CSV table");
  sweep->add_option("--out", c.out, "best reconstruction IMG1");

  auto* lcurve = app.add_subcommand("lcurve", "modified L-curve parameter choice");
  lcurve->add_option("--in", c.in, "input SIN1");
  add_recon(lcurve, c);
  lcurve->add_option("--alpha-grid", c.alpha_grid, "lo:hi:n, log-spaced")->capture_default_str();
  lcurve->add_option("--csv", c.csv, "output CSV table");
  lcurve->add_option("--out", c.out, "reconstruction at the chosen alpha");
  lcurve->add_option("--reference", c.reference, "reference IMG1 for metrics");

  auto* metrics = app.add_subcommand("metrics", "MSE, PSNR and SSIM of an image");
  metrics->add_option("--in", c.in, "IMG1 to score");
  metrics->add_option("--reference", c.reference, "reference IMG1");

  auto* rates = app.add_subcommand("rates", "convergence-rate experiment on the diagonal model");
  rates->add_option("--a", c.a, "embedding exponent a")->capture_default_str();
  rates->add_option("--p-exp", c.p_exp, "forward exponent p")->capture_default_str();
  rates->add_option("--beta", c.beta, "smoothness beta")->capture_default_str();
  rates->add_option("--J", c.J, "truncation length")->capture_default_str();
  rates->add_option("--trials", c.trials, "random noise directions per delta")->capture_default_str();
  rates->add_option("--delta-grid", c.delta_grid, "lo:hi:n, log-spaced")->capture_default_str();
  rates->add_option("--family", c.family, "tikhonov | tsvd")->capture_default_str();
  rates->add_option("--tsvd-power", c.tsvd_power, "TSVD qualification exponent")->capture_default_str();
  rates->add_option("--seed", c.seed, "first PRNG seed")->capture_default_str();
  rates->add_option("--csv", c.csv, "output CSV table");

  for (auto* sub : {phantom, proj, noise, recon, fbp, sweep, lcurve, metrics, rates}) {
    add_common(sub, c);
  }

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error kind=usage message=\"" << e.what() << "\"\n";
    return 2;
  } catch (const Error& e) {
    err << "error kind=config message=\"" << e.what() << "\"\n";
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->get_help_ptr()->count() > 0) return 0;
  c.subcommand = sub->get_name();

  try {
    validate(c);
    set_thread_count(c.threads);
    ordered_json report{{"tool", "ctreg"},
                        {"config", to_json(c)},
                        {"prng", std::string(kNoiseGenerator)},
                        {"ssim", {{"window", kSsimWindow}, {"stride", 1},
                                  {"k1", kSsimK1}, {"k2", kSsimK2},
                                  {"dynamic_range", "max(ref) - min(ref)"}}},
                        {"artifacts", ordered_json::object()},
                        {"metrics", ordered_json::array()}};
    const std::map<std::string, ordered_json (*)(const RunConfig&, ordered_json)> commands{
        {"phantom", cmd_phantom}, {"project", cmd_project}, {"noise", cmd_noise},
        {"reconstruct", cmd_reconstruct}, {"fbp", cmd_fbp}, {"sweep", cmd_sweep},
        {"lcurve", cmd_lcurve}, {"metrics", cmd_metrics}, {"rates", cmd_rates}};
    report = commands.at(c.subcommand)(c, std::move(report));
    const std::string text = report.dump(2) + "\n";
    if (c.report.empty()) {
      out << text;
    } else {
      std::ofstream file(c.report);
      if (!file || !(file << text)) throw Error("cannot write report '" + c.report + "'");
    }
  } catch (const UsageError& e) {
    err << "error kind=usage message=\"" << e.what() << "\"\n";
    return 2;
  } catch (const FormatError& e) {
    err << "error kind=format message=\"" << e.what() << "\"\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error kind=validation message=\"" << e.what() << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error kind=io message=\"" << e.what() << "\"\n";
    return 1;
  }
  return 0;
}

}  // namespace ctreg::cli
