// ridgelab command line: entropy, run, certify, rates, tractability.
// Exit codes: 0 pass, 2 acceptance failure, 1 usage error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ridgelab/adversary.hpp"
#include "ridgelab/algorithms.hpp"
#include "ridgelab/classes.hpp"
#include "ridgelab/geometry.hpp"
#include "ridgelab/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ridgelab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

// String-valued options; values come from the command line first, then from --config.
struct Options {
  std::map<std::string, std::string> cli;
  json config = json::object();

  std::optional<std::string> raw(const std::string& key) const {
    if (auto it = cli.find(key); it != cli.end() && !it->second.empty()) return it->second;
    if (config.contains(key)) {
      const json& v = config[key];
      if (v.is_string()) return v.get<std::string>();
      return v.dump();
    }
    return std::nullopt;
  }
  bool has(const std::string& key) const { return raw(key).has_value(); }
  std::string text(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
  }
  std::string required(const std::string& key) const {
    if (auto v = raw(key)) return *v;
    throw InvalidArgument("missing --" + key);
  }
  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    auto v = raw(key);
    if (!v) {
      if (fallback) return *fallback;
      throw InvalidArgument("missing --" + key);
    }
    try {
      return parse_real(*v);
    } catch (const InvalidArgument&) {
      throw InvalidArgument("--" + key + " is not a number: " + *v);
    }
  }
  long long integer(const std::string& key, std::optional<long long> fallback = std::nullopt) const {
    const double v = real(key, fallback ? std::optional<double>(static_cast<double>(*fallback)) : std::nullopt);
    if (v != std::floor(v) || !std::isfinite(v)) throw InvalidArgument("--" + key + " must be an integer");
    return static_cast<long long>(v);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

// Prints to stdout, or writes <out>/<name> when --out is set.
void emit(const std::string& out_dir, const std::string& name, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / name, text);
}

Target parse_target(const Options& o, int d, double p) {
  const std::string kind = o.text("target", "ball");
  if (kind == "ball") return Target::ball(d, p);
  if (kind == "sphere") return Target::sphere(d, p);
  if (kind.rfind("sparse:", 0) == 0) return Target::sparse_sphere(d, std::stoi(kind.substr(7)));
  throw InvalidArgument("unknown target '" + kind + "' (ball, sphere, sparse:m)");
}

int cmd_entropy(const Options& o, std::uint64_t seed, const std::string& out) {
  const int d = static_cast<int>(o.integer("d"));
  const double p = o.real("p", 2.0);
  const double q = o.real("q", 2.0);
  const int k = static_cast<int>(o.integer("k", 1));
  const int kmin = static_cast<int>(o.integer("kmin", k));
  const int kmax = static_cast<int>(o.integer("kmax", o.has("k") ? k : kmin));
  if (kmax < kmin) throw InvalidArgument("--kmax below --kmin");
  const Target target = parse_target(o, d, p);
  EntropyOptions opts;
  opts.seed = seed;
  json j{{"target", target.describe()}, {"q", number_json(q)}, {"seed", seed}};
  j["estimates"] = json::array();
  for (const auto& e : entropy_profile(target, kmin, kmax, q, opts)) j["estimates"].push_back(entropy_json(e));
  emit(out, "entropy.json", j);
  return kExitPass;
}

ClassSpec spec_from(const Options& o) {
  return ClassSpec::make(o.real("alpha"), o.real("p", 2.0), o.real("kappa", 0.0),
                         static_cast<int>(o.integer("d")));
}

int cmd_run(const Options& o, std::uint64_t seed, const std::string& out, bool have_config) {
  if (have_config && (o.config.contains("schedule") || o.config.contains("eps_schedule"))) {
    json cfg = o.config;
    if (!o.cli.at("seed").empty()) cfg["seed"] = seed;
    const ExperimentReport rep = run_experiment(cfg);
    if (out.empty()) {
      std::cout << rep.summary.dump(2) << "\n";
    } else {
      fs::create_directories(out);
      write_file(fs::path(out) / "results.csv", rep.csv);
      write_file(fs::path(out) / "summary.json", rep.summary.dump(2) + "\n");
    }
    return rep.pass ? kExitPass : kExitFail;
  }

  const ClassSpec spec = spec_from(o);
  const std::string name = o.required("sampler");
  std::optional<std::size_t> n;
  std::optional<double> eps;
  if (o.raw("n")) n = static_cast<std::size_t>(o.integer("n"));
  if (o.raw("eps")) eps = o.real("eps");
  const auto sampler = make_sampler(name, spec, n, eps, o.real("fd-step", kDefaultFdStep));
  const std::string profile_id = o.text("profile", "sine");
  Rng rng(seed, 0xD000);
  const RidgeFunction f(random_direction(spec.d, spec.p, rng), catalog_profile(profile_id, spec));
  const Approximant s = sampler->run([&](ConstPoint x) { return ridge_eval(f, x); });
  AuditOptions audit;
  audit.seed = seed;
  const ErrorEstimate err = ridge_error(f, s, audit);

  json j{{"sampler", sampler->name()},
         {"profile", profile_id},
         {"class", {{"alpha", number_json(spec.alpha)}, {"p", spec.p}, {"kappa", spec.kappa}, {"d", spec.d}}},
         {"seed", seed},
         {"direction", f.direction()},
         {"budget", sampler->budget()},
         {"queries_used", s.provenance().points.size()},
         {"approximant", s.kind()},
         {"sup_error_estimate",
          {{"value", err.value}, {"method", err.method}, {"tolerance", err.tolerance}, {"audited", err.audited}}}};
  json info = json::object();
  for (const auto& [k, v] : sampler->info()) info[k] = number_json(v);
  j["info"] = info;
  if (out.empty()) {
    j["provenance_file"] = nullptr;
    std::cout << j.dump(2) << "\n";
  } else {
    fs::create_directories(out);
    std::ostringstream csv;
    for (int i = 0; i < spec.d; ++i) csv << "x" << (i + 1) << ",";
    csv << "value\r\n";
    const auto& pts = s.provenance().points;
    const auto& vals = s.provenance().values;
    for (std::size_t r = 0; r < pts.size(); ++r) {
      for (double x : pts[r]) csv << format_double(x) << ",";
      csv << format_double(vals[r]) << "\r\n";
    }
    write_file(fs::path(out) / "provenance.csv", csv.str());
    j["provenance_file"] = "provenance.csv";
    write_file(fs::path(out) / "run.json", j.dump(2) + "\n");
  }
  return kExitPass;
}

DirectionSet parse_dirs(const Options& o, const ClassSpec& spec, std::uint64_t seed) {
  const std::string kind = o.text("dirs", "canonical");
  if (kind == "canonical") return DirectionSet::canonical(spec.d);
  if (kind.rfind("sparse:", 0) == 0) return DirectionSet::sparse(spec.d, std::stoi(kind.substr(7)), spec.p, 2000, seed);
  if (kind.rfind("explicit:", 0) == 0) {
    const json pts = json::parse(read_file(kind.substr(9)));
    return DirectionSet::explicit_set(pts.get<std::vector<Point>>());
  }
  throw InvalidArgument("unknown --dirs '" + kind + "' (canonical, sparse:m, explicit:file)");
}

int cmd_certify(const Options& o, std::uint64_t seed, const std::string& out) {
  const ClassSpec spec = spec_from(o);
  std::optional<double> eps;
  if (o.raw("eps")) eps = o.real("eps");
  const auto sampler = make_sampler(o.required("sampler"), spec,
                                    static_cast<std::size_t>(o.integer("n")), std::nullopt,
                                    o.real("fd-step", kDefaultFdStep));
  const DirectionSet dirs = parse_dirs(o, spec, seed);
  const Certificate cert = certify_lower_bound(*sampler, dirs, spec, eps);
  json j = certificate_json(cert);
  j["dirs"] = dirs.describe();
  emit(out, "certificate.json", j);
  return cert.pass() ? kExitPass : kExitFail;
}

int cmd_rates(const Options& o, const std::string& out) {
  const auto rows = parse_rows_csv(read_file(o.required("csv")));
  const std::string fit_x = o.text("fit-x", "n");
  if (fit_x != "n" && fit_x != "n-d") throw InvalidArgument("--fit-x must be n or n-d");
  std::map<std::size_t, std::pair<double, int>> worst;
  for (const auto& r : rows) {
    auto& w = worst[r.n];
    w.first = std::max(w.first, r.error);
    w.second = r.d;
  }
  std::vector<std::pair<double, double>> pairs;
  for (const auto& [n, w] : worst) {
    pairs.emplace_back(fit_x == "n-d" ? static_cast<double>(n) - w.second : static_cast<double>(n), w.first);
  }
  const RateFit fit = rate_fit(pairs);
  json j{{"x", fit_x}, {"slope", fit.slope}, {"intercept", fit.intercept},
         {"residual", fit.residual}, {"points", fit.pairs.size()}};
  bool pass = true;
  if (o.raw("slope-min")) pass = pass && fit.slope >= o.real("slope-min");
  if (o.raw("slope-max")) pass = pass && fit.slope <= o.real("slope-max");
  j["pass"] = pass;
  emit(out, "rates.json", j);
  return pass ? kExitPass : kExitFail;
}

int cmd_tractability(const Options& o, const std::string& out) {
  const TractabilityVerdict v = tractability_classify(o.real("alpha"), o.real("p", 2.0), o.real("kappa", 0.0));
  emit(out, "tractability.json", verdict_json(v));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ridgelab: sampling, entropy and lower-bound experiments for ridge functions"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string seed_text, out, config_path;
  app.add_option("--seed", seed_text, "Random seed (default 0)");
  app.add_option("--out", out, "Output directory (default: stdout)");
  app.add_option("--config", config_path, "JSON config file");

  Options opts;
  auto opt = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, opts.cli[name], help);
  };
  auto class_opts = [&](CLI::App* sub) {
    opt(sub, "alpha", "Smoothness (number or inf)");
    opt(sub, "p", "Direction norm exponent in (0, 2]");
    opt(sub, "kappa", "Derivative floor at the origin");
    opt(sub, "d", "Dimension");
  };

  CLI::App* entropy = app.add_subcommand("entropy", "Entropy number brackets");
  opt(entropy, "target", "ball | sphere | sparse:m");
  opt(entropy, "d", "Dimension");
  opt(entropy, "p", "Target exponent");
  opt(entropy, "q", "Covering norm exponent (number or inf)");
  opt(entropy, "k", "Single k (shorthand for --kmin k --kmax k)");
  opt(entropy, "kmin", "First k");
  opt(entropy, "kmax", "Last k");

  CLI::App* run = app.add_subcommand("run", "Run a sampler (or an experiment config)");
  class_opts(run);
  opt(run, "sampler", "cover | taylor | two-step | taylor-zero");
  opt(run, "n", "Query budget");
  opt(run, "eps", "Accuracy target (cover, taylor, taylor-zero)");
  opt(run, "profile", "Catalog profile id");
  opt(run, "fd-step", "Finite-difference step");

  CLI::App* certify = app.add_subcommand("certify", "Fooling certificate against a sampler");
  class_opts(certify);
  opt(certify, "sampler", "cover | taylor | two-step");
  opt(certify, "n", "Query budget");
  opt(certify, "dirs", "canonical | sparse:m | explicit:file");
  opt(certify, "eps", "Certificate radius (default: packing bracket)");
  opt(certify, "fd-step", "Finite-difference step");

  CLI::App* rates = app.add_subcommand("rates", "Fit a log-log rate to an experiment CSV");
  opt(rates, "csv", "Experiment CSV");
  opt(rates, "fit-x", "n | n-d");
  opt(rates, "slope-min", "Fail below this slope");
  opt(rates, "slope-max", "Fail above this slope");

  CLI::App* tract = app.add_subcommand("tractability", "Tractability verdict");
  opt(tract, "alpha", "Smoothness (number or inf)");
  opt(tract, "p", "Direction norm exponent");
  opt(tract, "kappa", "Derivative floor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      opts.config = json::parse(read_file(config_path));
      if (!opts.config.is_object()) throw InvalidArgument("config file must hold a JSON object");
    }
    opts.cli["seed"] = seed_text;
    const std::uint64_t seed =
        seed_text.empty() ? static_cast<std::uint64_t>(opts.config.value("seed", 0))
                          : static_cast<std::uint64_t>(std::stoull(seed_text));
    if (entropy->parsed()) return cmd_entropy(opts, seed, out);
    if (run->parsed()) return cmd_run(opts, seed, out, !config_path.empty());
    if (certify->parsed()) return cmd_certify(opts, seed, out);
    if (rates->parsed()) return cmd_rates(opts, out);
    if (tract->parsed()) return cmd_tractability(opts, out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number (" << e.what() << ")\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
