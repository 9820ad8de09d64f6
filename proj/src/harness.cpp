#include "ridgelab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "ridgelab/adversary.hpp"
#include "ridgelab/geometry.hpp"

namespace ridgelab {

using nlohmann::json;

namespace {

// Golden-section refinement of |f - g| along t u on [lo, hi].
std::pair<double, double> refine_line(const std::function<double(double)>& err, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = err(c), fd = err(d);
  for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = err(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = err(d);
    }
  }
  return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw InvalidArgument("config." + path + ": " + what);
}

double config_real(const json& cfg, const std::string& key, std::optional<double> fallback) {
  if (!cfg.contains(key)) {
    if (fallback) return *fallback;
    config_error(key, "missing");
  }
  const json& v = cfg.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_real(v.get<std::string>());
    } catch (const std::exception&) {
      config_error(key, "not a number");
    }
  }
  config_error(key, "not a number");
}

long long config_int(const json& cfg, const std::string& key, std::optional<long long> fallback) {
  if (!cfg.contains(key)) {
    if (fallback) return *fallback;
    config_error(key, "missing");
  }
  const json& v = cfg.at(key);
  if (!v.is_number_integer()) config_error(key, "must be an integer");
  return v.get<long long>();
}

std::string alpha_text(double alpha) { return std::isinf(alpha) ? "inf" : format_double(alpha); }

}  // namespace

json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double parse_real(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "inf" || t == "infinity" || t == "+inf") return kInf;
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw InvalidArgument("not a number: '" + text + "'");
  return v;
}

ErrorEstimate sup_error_estimate(const Evaluable& f, const Evaluable& g, int d,
                                 const std::vector<Point>& lines, const AuditOptions& opts) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  if (opts.line_grid < 3) throw InvalidArgument("line grid needs at least 3 points");
  ErrorEstimate est;
  auto visit = [&](const Point& x) {
    const double e = std::abs(f(x) - g(x));
    ++est.audited;
    if (e > est.value || est.witness.empty()) {
      est.value = std::max(est.value, e);
      est.witness = x;
    }
  };
  for (std::size_t i = 0; i < opts.halton; ++i) visit(halton_ball_point(i, d));
  Rng rng(opts.seed, 0xA0D1);
  for (std::size_t i = 0; i < opts.random; ++i) visit(random_ball_point(d, rng));

  std::size_t used_lines = 0;
  for (const Point& dir : lines) {
    if (static_cast<int>(dir.size()) != d) throw InvalidArgument("line direction has the wrong dimension");
    const double r = norm2(dir);
    if (r == 0.0) continue;
    ++used_lines;
    const Point u = scaled(dir, 1.0 / r);
    auto err = [&](double t) {
      const Point x = scaled(u, t);
      ++est.audited;
      return std::abs(f(x) - g(x));
    };
    const int m = opts.line_grid;
    int best = 0;
    double best_e = -1.0;
    for (int j = 0; j < m; ++j) {
      const double e = err(-1.0 + 2.0 * j / (m - 1));
      if (e > best_e) {
        best_e = e;
        best = j;
      }
    }
    double t_best = -1.0 + 2.0 * best / (m - 1);
    const double lo = -1.0 + 2.0 * std::max(best - 1, 0) / (m - 1);
    const double hi = -1.0 + 2.0 * std::min(best + 1, m - 1) / (m - 1);
    const auto [t_ref, e_ref] = refine_line(err, lo, hi);
    if (e_ref > best_e) {
      best_e = e_ref;
      t_best = t_ref;
    }
    if (best_e > est.value) {
      est.value = best_e;
      est.witness = scaled(u, t_best);
    }
  }
  std::ostringstream m;
  m << "halton=" << opts.halton << ",random=" << opts.random << ",lines=" << used_lines
    << "x" << opts.line_grid << "+golden";
  est.method = m.str();
  est.tolerance = used_lines ? 2.0 / (opts.line_grid - 1) : 0.0;
  return est;
}

ErrorEstimate ridge_error(const RidgeFunction& f, const Approximant& s, const AuditOptions& opts) {
  std::vector<Point> lines{f.direction()};
  if (auto dir = s.ridge_direction()) lines.push_back(*dir);
  return sup_error_estimate([&](ConstPoint x) { return f(x); }, [&](ConstPoint x) { return s(x); },
                            f.dim(), lines, opts);
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& pairs) {
  RateFit fit;
  for (const auto& [n, e] : pairs)
    if (n > 0.0 && e > 0.0 && std::isfinite(n) && std::isfinite(e)) fit.pairs.emplace_back(n, e);
  const std::size_t m = fit.pairs.size();
  if (m < 3) throw InvalidArgument("rate fit needs at least 3 positive pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, e] : fit.pairs) {
    const double x = std::log(n), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double md = static_cast<double>(m);
  const double den = md * sxx - sx * sx;
  if (den == 0.0) throw InvalidArgument("rate fit needs at least two distinct n");
  fit.slope = (md * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / md;
  double ss = 0.0;
  for (const auto& [n, e] : fit.pairs) {
    const double r = std::log(e) - (fit.intercept + fit.slope * std::log(n));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / md);
  return fit;
}

namespace {

void check_complexity_args(double eps, int d, double alpha, double p) {
  if (!(p > 0.0 && p < 2.0)) throw InvalidArgument("complexity bounds need 0 < p < 2");
  if (!(alpha > 0.0) || std::isinf(alpha)) throw InvalidArgument("complexity bounds need finite alpha > 0");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("eps must lie in (0, 1]");
  if (d < 2) throw InvalidArgument("complexity bounds need d >= 2");
}

double log_ratio(int d) {
  const double ld = std::log2(static_cast<double>(d));
  return std::log2(1.0 + d / ld) / ld;
}

}  // namespace

ComplexityUpper complexity_upper(double eps, int d, double alpha, double p,
                                 const ComplexityConstants& k) {
  check_complexity_args(eps, d, alpha, p);
  ComplexityUpper out;
  out.eta = alpha * (1.0 / std::max(1.0, p) - 0.5);
  out.eps1 = k.C * std::pow(log_ratio(d), out.eta);
  out.eps2 = k.C * std::pow(static_cast<double>(d), -out.eta);
  const double ld = std::log2(static_cast<double>(d));
  const double inv_eta = 1.0 / out.eta;
  const double b1 = k.C0 + k.C1 * ld;
  auto b2 = [&](double e) { return k.C0 + k.C1 * ld * std::pow(1.0 / e, inv_eta); };
  auto b3 = [&](double e) { return k.C0 + k.C1 * std::log2(1.0 / e) * std::pow(1.0 / e, inv_eta); };
  if (eps >= out.eps1) {
    out.branch = 1;
    out.raw = b1;
    out.value = b1;
  } else if (eps >= out.eps2) {
    out.branch = 2;
    out.raw = b2(eps);
    out.value = std::max(out.raw, b1);
  } else {
    out.branch = 3;
    out.raw = b3(eps);
    // Branch values at larger eps bound the monotone envelope from below.
    out.value = std::max(out.raw, b1);
    if (out.eps2 < out.eps1) out.value = std::max(out.value, b2(out.eps2));
  }
  return out;
}

ComplexityLower complexity_lower(double eps, int d, double alpha, double p,
                                 const ComplexityConstants& k) {
  check_complexity_args(eps, d, alpha, p);
  ComplexityLower out;
  const double gamma = alpha * (1.0 / p - 0.5);
  out.exponent = 1.0 / gamma;
  out.eps1 = k.c * std::pow(log_ratio(d), gamma);
  out.eps2 = k.c * std::pow(static_cast<double>(d), -gamma);
  out.eps3 = std::pow(4.0, -alpha) * out.eps2;
  out.value = k.c0 + k.c1 * std::pow(1.0 / eps, out.exponent);
  out.in_window = eps >= out.eps3 && eps < out.eps1;
  return out;
}

std::string tractability_name(Tractability t) {
  switch (t) {
    case Tractability::Curse: return "curse";
    case Tractability::Intractable: return "intractable";
    case Tractability::WeaklyTractable: return "weakly tractable";
    case Tractability::QuasiPolynomial: return "quasi-polynomially tractable";
    case Tractability::Polynomial: return "polynomially tractable";
    default: return "unknown-gap";
  }
}

std::string TractabilityVerdict::label_name() const { return tractability_name(label); }

TractabilityVerdict tractability_classify(double alpha, double p, double kappa) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(p > 0.0 && p <= 2.0)) throw InvalidArgument("p must lie in (0, 2]");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw InvalidArgument("kappa must lie in [0, 1]");
  if (kappa > 0.0 && !(alpha > 1.0)) throw InvalidArgument("kappa > 0 needs alpha > 1");
  TractabilityVerdict v;
  v.alpha = alpha;
  v.p = p;
  v.kappa = kappa;
  v.curse_free = p < 2.0;
  if (kappa > 0.0) {
    v.label = Tractability::Polynomial;
    v.clause = 6;
  } else if (std::isinf(alpha)) {
    v.label = Tractability::QuasiPolynomial;
    v.clause = 5;
  } else if (p == 2.0) {
    v.label = Tractability::Curse;
    v.clause = 1;
  } else if (alpha <= 1.0 / (1.0 / p - 0.5)) {
    v.label = Tractability::Intractable;
    v.clause = 3;
  } else if (alpha > 1.0 / (1.0 / std::max(1.0, p) - 0.5)) {
    v.label = Tractability::WeaklyTractable;
    v.clause = 4;
  } else {
    v.label = Tractability::UnknownGap;
    v.clause = 0;
  }
  return v;
}

json verdict_json(const TractabilityVerdict& v) {
  return json{{"alpha", number_json(v.alpha)}, {"p", v.p},           {"kappa", v.kappa},
              {"label", v.label_name()},      {"clause", v.clause}, {"curse_free", v.curse_free}};
}

json entropy_json(const EntropyEstimate& e) {
  json j{{"k", e.k}, {"lower", number_json(e.lower)}, {"upper", number_json(e.upper)}};
  j["formula"] = e.formula_value ? number_json(*e.formula_value) : json(nullptr);
  return j;
}

json certificate_json(const Certificate& c) {
  json j{{"status", c.status_name()},
         {"sampler", c.sampler},
         {"eps", c.eps},
         {"alpha", number_json(c.alpha)},
         {"queries", c.points.size()},
         {"zero_answers", c.zero_answers},
         {"identical_outputs", c.identical_outputs},
         {"achieved", c.achieved},
         {"floor", c.floor},
         {"tolerance", c.tolerance},
         {"reason", c.reason}};
  if (c.adversary) {
    j["direction"] = c.adversary->f.direction();
    j["direction_index"] = c.adversary->index;
    j["margin"] = number_json(c.adversary->margin);
    j["profile"] = c.adversary->f.profile().id();
  } else {
    j["direction"] = nullptr;
  }
  return j;
}

std::unique_ptr<AdaptiveSampler> make_sampler(const std::string& name, const ClassSpec& spec,
                                              std::optional<std::size_t> n,
                                              std::optional<double> eps, double fd_step) {
  if (name == "cover") {
    if (eps) return std::make_unique<CoverSampler>(spec, *eps);
    if (n) return std::make_unique<CoverSampler>(CoverSampler::for_budget(spec, *n));
  } else if (name == "taylor") {
    if (eps) return std::make_unique<TaylorCoverSampler>(spec, *eps, fd_step);
    if (n) return std::make_unique<TaylorCoverSampler>(TaylorCoverSampler::for_budget(spec, *n, fd_step));
  } else if (name == "two-step") {
    if (n) return std::make_unique<TwoStepSampler>(spec, *n);
    throw InvalidArgument("two-step sampler needs a budget n");
  } else if (name == "taylor-zero") {
    if (eps) return std::make_unique<TaylorAtZeroSampler>(spec, *eps, TaylorZeroVariant::Ridge, fd_step);
    throw InvalidArgument("taylor-zero sampler needs eps");
  } else {
    throw InvalidArgument("unknown sampler '" + name + "'");
  }
  throw InvalidArgument("sampler '" + name + "' needs n or eps");
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << "n,d,alpha,p,kappa,profile_id,queries,error,seed\r\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.d << ',' << alpha_text(r.alpha) << ',' << format_double(r.p) << ','
       << format_double(r.kappa) << ',' << csv_escape(r.profile_id) << ',' << r.queries << ','
       << format_double(r.error) << ',' << r.seed << "\r\n";
  }
  return os.str();
}

std::vector<ExperimentRow> parse_rows_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
      }
      rec.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw InvalidArgument("csv: unterminated quoted field");
  if (any || !field.empty()) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw InvalidArgument("csv: empty input");
  const std::vector<std::string> header{"n", "d", "alpha", "p", "kappa", "profile_id", "queries", "error", "seed"};
  if (records.front() != header) throw InvalidArgument("csv: unexpected header");
  std::vector<ExperimentRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.size() != header.size()) throw InvalidArgument("csv: row " + std::to_string(i) + " has the wrong field count");
    ExperimentRow row;
    try {
      row.n = std::stoull(r[0]);
      row.d = std::stoi(r[1]);
      row.alpha = parse_real(r[2]);
      row.p = parse_real(r[3]);
      row.kappa = parse_real(r[4]);
      row.profile_id = r[5];
      row.queries = std::stoull(r[6]);
      row.error = parse_real(r[7]);
      row.seed = std::stoull(r[8]);
    } catch (const std::logic_error&) {
      throw InvalidArgument("csv: row " + std::to_string(i) + " is malformed");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ExperimentReport run_experiment(const json& config) {
  if (!config.is_object()) throw InvalidArgument("config: must be a JSON object");
  if (!config.contains("sampler") || !config["sampler"].is_string()) config_error("sampler", "missing or not a string");
  const std::string sampler_name = config["sampler"].get<std::string>();
  const double alpha = config_real(config, "alpha", std::nullopt);
  const double p = config_real(config, "p", 2.0);
  const double kappa = config_real(config, "kappa", 0.0);
  const long long d = config_int(config, "d", std::nullopt);
  if (d < 1) config_error("d", "must be positive");
  const long long seed_raw = config_int(config, "seed", 0);
  if (seed_raw < 0) config_error("seed", "must be non-negative");
  const auto seed = static_cast<std::uint64_t>(seed_raw);
  const double fd_step = config_real(config, "fd_step", kDefaultFdStep);

  ClassSpec spec;
  try {
    spec = ClassSpec::make(alpha, p, kappa, static_cast<int>(d));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }

  std::vector<std::size_t> schedule;
  std::vector<double> eps_schedule;
  if (config.contains("schedule")) {
    if (!config["schedule"].is_array() || config["schedule"].empty()) config_error("schedule", "must be a non-empty array");
    for (std::size_t i = 0; i < config["schedule"].size(); ++i) {
      const json& v = config["schedule"][i];
      if (!v.is_number_integer() || v.get<long long>() < 1) {
        config_error("schedule[" + std::to_string(i) + "]", "must be a positive integer");
      }
      schedule.push_back(v.get<std::size_t>());
    }
  } else if (config.contains("eps_schedule")) {
    if (!config["eps_schedule"].is_array() || config["eps_schedule"].empty()) config_error("eps_schedule", "must be a non-empty array");
    for (std::size_t i = 0; i < config["eps_schedule"].size(); ++i) {
      const json& v = config["eps_schedule"][i];
      if (!v.is_number() || !(v.get<double>() > 0.0)) {
        config_error("eps_schedule[" + std::to_string(i) + "]", "must be a positive number");
      }
      eps_schedule.push_back(v.get<double>());
    }
  } else {
    config_error("schedule", "missing (or give eps_schedule)");
  }

  if (!config.contains("profiles") || !config["profiles"].is_array() || config["profiles"].empty()) {
    config_error("profiles", "must be a non-empty array of profile ids");
  }
  std::vector<std::string> profiles;
  for (std::size_t i = 0; i < config["profiles"].size(); ++i) {
    const json& v = config["profiles"][i];
    if (!v.is_string()) config_error("profiles[" + std::to_string(i) + "]", "must be a string");
    try {
      catalog_profile(v.get<std::string>(), spec);
    } catch (const InvalidArgument& e) {
      config_error("profiles[" + std::to_string(i) + "]", e.what());
    }
    profiles.push_back(v.get<std::string>());
  }

  AuditOptions audit;
  audit.seed = seed;
  if (config.contains("audit")) {
    const json& a = config["audit"];
    if (!a.is_object()) config_error("audit", "must be an object");
    audit.halton = static_cast<std::size_t>(config_int(a, "halton", 4096));
    audit.random = static_cast<std::size_t>(config_int(a, "random", 4096));
    audit.line_grid = static_cast<int>(config_int(a, "line_grid", 2001));
  }
  std::string fit_x = "n";
  if (config.contains("fit_x")) {
    if (!config["fit_x"].is_string()) config_error("fit_x", "must be \"n\" or \"n-d\"");
    fit_x = config["fit_x"].get<std::string>();
    if (fit_x != "n" && fit_x != "n-d") config_error("fit_x", "must be \"n\" or \"n-d\"");
  }
  ComplexityConstants consts;
  if (config.contains("constants")) {
    const json& c = config["constants"];
    if (!c.is_object()) config_error("constants", "must be an object");
    consts.C0 = config_real(c, "C0", 1.0);
    consts.C1 = config_real(c, "C1", 1.0);
    consts.C = config_real(c, "C", 1.0);
    consts.c0 = config_real(c, "c0", 1.0);
    consts.c1 = config_real(c, "c1", 1.0);
    consts.c = config_real(c, "c", 1.0);
  }
  const bool want_cert = config.value("certify", false);

  // One seeded direction per profile, shared across the schedule.
  std::vector<RidgeFunction> targets;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    Rng rng(seed, 0xD000 + i);
    targets.emplace_back(random_direction(spec.d, spec.p, rng), catalog_profile(profiles[i], spec));
  }

  ExperimentReport rep;
  json certificates = json::array();
  const std::size_t steps = schedule.empty() ? eps_schedule.size() : schedule.size();
  for (std::size_t step = 0; step < steps; ++step) {
    std::unique_ptr<AdaptiveSampler> sampler;
    try {
      if (schedule.empty()) {
        sampler = make_sampler(sampler_name, spec, std::nullopt, eps_schedule[step], fd_step);
      } else {
        sampler = make_sampler(sampler_name, spec, schedule[step], std::nullopt, fd_step);
      }
    } catch (const Error& e) {
      config_error(schedule.empty() ? "eps_schedule[" + std::to_string(step) + "]"
                                    : "schedule[" + std::to_string(step) + "]",
                   e.what());
    }
    const std::size_t n = schedule.empty() ? sampler->budget() : schedule[step];
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const RidgeFunction& f = targets[i];
      const Approximant s = sampler->run([&](ConstPoint x) { return ridge_eval(f, x); });
      ExperimentRow row;
      row.n = n;
      row.d = spec.d;
      row.alpha = spec.alpha;
      row.p = spec.p;
      row.kappa = spec.kappa;
      row.profile_id = profiles[i];
      row.queries = s.provenance().points.size();
      row.error = ridge_error(f, s, audit).value;
      row.seed = seed;
      rep.rows.push_back(std::move(row));
    }
    if (want_cert && spec.kappa == 0.0 && !spec.smooth()) {
      json c = certificate_json(certify_lower_bound(*sampler, DirectionSet::canonical(spec.d), spec));
      c["n"] = n;
      certificates.push_back(std::move(c));
    }
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return a.n != b.n ? a.n < b.n : a.profile_id < b.profile_id;
  });
  rep.csv = rows_to_csv(rep.rows);

  std::map<std::size_t, std::pair<double, std::size_t>> worst;
  for (const auto& r : rep.rows) {
    auto& w = worst[r.n];
    w.first = std::max(w.first, r.error);
    w.second = std::max(w.second, r.queries);
  }
  std::vector<std::pair<double, double>> pairs;
  json worst_json = json::array();
  json upper_ref = json::array(), lower_ref = json::array(), entropy_ref = json::array();
  for (const auto& [n, w] : worst) {
    worst_json.push_back({{"n", n}, {"queries", w.second}, {"error", w.first}});
    const double x = fit_x == "n-d" ? static_cast<double>(n) - spec.d : static_cast<double>(n);
    pairs.emplace_back(x, w.first);
    if (spec.p < 2.0 && !spec.smooth() && spec.d >= 2 && w.first > 0.0 && w.first <= 1.0) {
      const auto up = complexity_upper(w.first, spec.d, spec.alpha, spec.p, consts);
      const auto lo = complexity_lower(w.first, spec.d, spec.alpha, spec.p, consts);
      upper_ref.push_back({{"n", n}, {"eps", w.first}, {"log2_n_upper", up.value}, {"branch", up.branch}});
      lower_ref.push_back({{"n", n}, {"eps", w.first}, {"log2_n_lower", lo.value}, {"in_window", lo.in_window}});
    }
    const int k = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
    entropy_ref.push_back({{"n", n}, {"k", k}, {"schuett", number_json(schuett_bound(spec.p, spec.p_prime, k, spec.d))}});
  }
  try {
    rep.fit = rate_fit(pairs);
  } catch (const InvalidArgument&) {
    rep.fit.reset();
  }

  json expect = config.value("expect", json::object());
  if (!expect.is_object()) config_error("expect", "must be an object");
  if (expect.contains("slope_min") || expect.contains("slope_max")) {
    const double lo = config_real(expect, "slope_min", -kInf);
    const double hi = config_real(expect, "slope_max", kInf);
    rep.pass = rep.fit && rep.fit->slope >= lo && rep.fit->slope <= hi;
  }
  if (expect.contains("max_error")) {
    const double cap = config_real(expect, "max_error", std::nullopt);
    for (const auto& r : rep.rows) rep.pass = rep.pass && r.error <= cap;
  }
  for (const auto& c : certificates) rep.pass = rep.pass && c["status"] == "pass";

  json& s = rep.summary;
  s["sampler"] = sampler_name;
  s["class"] = {{"alpha", number_json(spec.alpha)}, {"p", spec.p}, {"kappa", spec.kappa},
                {"d", spec.d}, {"s", spec.s}, {"beta", spec.beta}};
  s["seed"] = seed;
  s["profiles"] = profiles;
  if (schedule.empty()) s["eps_schedule"] = eps_schedule;
  else s["schedule"] = schedule;
  s["aggregate"] = "catalog worst-case";
  s["error_estimate"] = "lower estimate of the sup error; audit " +
                        (rep.rows.empty() ? std::string() : std::string("halton=") + std::to_string(audit.halton) +
                                                                ",random=" + std::to_string(audit.random) +
                                                                ",line_grid=" + std::to_string(audit.line_grid));
  s["worst"] = worst_json;
  if (rep.fit) {
    s["fit"] = {{"x", fit_x}, {"slope", rep.fit->slope}, {"intercept", rep.fit->intercept},
                {"residual", rep.fit->residual}, {"points", rep.fit->pairs.size()}};
  } else {
    s["fit"] = nullptr;
  }
  s["verdict"] = verdict_json(tractability_classify(spec.alpha, spec.p, spec.kappa));
  s["constants"] = {{"C0", consts.C0}, {"C1", consts.C1}, {"C", consts.C},
                    {"c0", consts.c0}, {"c1", consts.c1}, {"c", consts.c}};
  s["reference"] = {{"complexity_upper", upper_ref}, {"complexity_lower", lower_ref}, {"entropy", entropy_ref}};
  if (want_cert) s["certificates"] = certificates;
  s["pass"] = rep.pass;
  return rep;
}

}  // namespace ridgelab
