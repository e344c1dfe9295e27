#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "ghostlab/errors.hpp"
#include "ghostlab/numerics.hpp"

namespace ghostlab::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Core parameter checks surface as configuration errors at parse time.
template <class F>
auto as_config_error(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const ParameterError& e) {
    throw ConfigError(what + ": " + e.what());
  } catch (const SizeError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

int to_dimension(double v, const std::string& where) {
  if (v != std::floor(v) || v < 0 || v > 1e6) throw ConfigError(where + ": n must be an integer");
  return static_cast<int>(v);
}

GrowthParams checked_params(double p, double q, double alpha, int n, const std::string& where) {
  GrowthParams g{p, q, alpha, n, std::nullopt, std::nullopt};
  as_config_error(where, [&] {
    g.validate();
    return 0;
  });
  return g;
}

std::vector<LatticeOffset> parse_offsets(const std::string& text, const std::string& where) {
  std::vector<LatticeOffset> out;
  std::istringstream words(text);
  for (std::string w; words >> w;) {
    const auto parts = split(w, ',');
    if (parts.size() != 2) throw ConfigError(where + ": offset '" + w + "' is not di,dj");
    const auto di = parse_number(parts[0]);
    const auto dj = parse_number(parts[1]);
    if (!di || !dj || *di != std::floor(*di) || *dj != std::floor(*dj) || std::abs(*di) > 1e6 ||
        std::abs(*dj) > 1e6) {
      throw ConfigError(where + ": offset '" + w + "' needs integer components");
    }
    out.push_back({static_cast<int>(*di), static_cast<int>(*dj)});
  }
  return out;
}

MetricsSettings parse_metric_settings(const IniFile& ini, const std::string& section) {
  MetricsSettings s;
  if (auto c = ini.numbers(section, "holder_center")) {
    if (c->size() != 2) throw ConfigError("[" + section + "] holder_center needs two coordinates");
    s.holder_center = {(*c)[0], (*c)[1]};
  }
  if (auto r = ini.numbers(section, "holder_radii")) s.holder_radii = *r;
  if (auto o = ini.text(section, "caccioppoli_offsets")) {
    s.caccioppoli_offsets = parse_offsets(*o, "[" + section + "] caccioppoli_offsets");
  }
  return s;
}

// Dry run of both estimators on a zero field: rejects radii and offsets that
// the grid cannot support before any expensive work starts.
void check_metric_settings(const MetricsSettings& s, const Grid& grid, const std::string& where) {
  const CellGradientField zero(grid, std::vector<GradientVector>(grid.cell_count()));
  as_config_error(where, [&] {
    if (s.holder_center.x1 < 0 || s.holder_center.x1 > 1 || s.holder_center.x2 < 0 || s.holder_center.x2 > 1) {
      throw ParameterError("holder_center must lie in the unit square");
    }
    holder_exponent(zero, s.holder_center, s.holder_radii);
    fit_caccioppoli(zero, 2.0, 2.0, s.caccioppoli_offsets);
    return 0;
  });
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::filesystem::path resolve(const IniFile& ini, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : ini.base_dir() / p;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// classify

ClassifyConfig parse_classify(const IniFile& ini, std::uint64_t seed) {
  const std::string sec = "classify";
  const bool has_tuples = ini.has(sec, "tuples");
  const bool has_grid = ini.has(sec, "p") || ini.has(sec, "q") || ini.has(sec, "alpha") || ini.has(sec, "n");
  const bool has_random = ini.has(sec, "random_samples");
  if (has_tuples + has_grid + has_random != 1) {
    throw ConfigError("[classify] needs exactly one of: tuples, a p/q/alpha/n grid, random_samples");
  }

  ClassifyConfig cfg;
  if (has_tuples) {
    const std::string text = ini.required_text(sec, "tuples");
    for (const auto& chunk : split(text, '|')) {
      std::istringstream words(chunk);
      std::vector<double> v;
      for (std::string w; words >> w;) {
        const auto d = parse_number(w);
        if (!d || !std::isfinite(*d)) throw ConfigError("[classify] tuples: '" + w + "' is not a finite number");
        v.push_back(*d);
      }
      if (v.size() != 4) throw ConfigError("[classify] tuples: '" + trim(chunk) + "' is not 'p q alpha n'");
      cfg.rows.push_back(checked_params(v[0], v[1], v[2], to_dimension(v[3], "[classify] tuples"), "[classify]"));
    }
  } else if (has_grid) {
    const auto ps = ini.required_numbers(sec, "p");
    const auto qs = ini.required_numbers(sec, "q");
    const auto as = ini.required_numbers(sec, "alpha");
    const auto ns = ini.required_numbers(sec, "n");
    for (double p : ps) {
      for (double q : qs) {
        for (double a : as) {
          for (double n : ns) cfg.rows.push_back(checked_params(p, q, a, to_dimension(n, "[classify] n"), "[classify]"));
        }
      }
    }
  } else {
    const int count = ini.required_integer(sec, "random_samples");
    if (count < 1) throw ConfigError("[classify] random_samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pd(1.1, 4.0), unit(0.0, 1.0);
    std::uniform_int_distribution<int> nd(2, 5);
    for (int k = 0; k < count; ++k) {
      const double p = pd(rng);
      const double q = p * (1.0 + unit(rng));
      const double a = 1.0 - unit(rng);  // (0, 1]
      cfg.rows.push_back(checked_params(p, q, a, nd(rng), "[classify]"));
    }
  }
  if (cfg.rows.empty()) throw ConfigError("[classify] parameter grid is empty");
  return cfg;
}

std::vector<VerdictRow> cmd_classify(const ClassifyConfig& config) {
  std::vector<VerdictRow> out;
  out.reserve(config.rows.size());
  for (const auto& g : config.rows) out.push_back({g, classify(g)});
  return out;
}

void write_verdicts_csv(std::ostream& out, const std::vector<VerdictRow>& rows) {
  out << "p,q,alpha,n,regime,margin\n";
  for (const auto& r : rows) {
    out << format_number(r.params.p) << ',' << format_number(r.params.q) << ',' << format_number(r.params.alpha) << ','
        << r.params.n << ',' << to_string(r.verdict.regime) << ',' << format_number(r.verdict.margin) << '\n';
  }
}

// ---------------------------------------------------------------------------
// sweep

std::string_view to_string(BoundaryFixture b) {
  switch (b) {
    case BoundaryFixture::Affine:
      return "affine";
    case BoundaryFixture::TiltedWave:
      return "tilted_wave";
    case BoundaryFixture::Saddle:
      return "saddle";
  }
  return "?";
}

double boundary_value(BoundaryFixture b, Point x) {
  switch (b) {
    case BoundaryFixture::Affine:
      return x.x2;
    case BoundaryFixture::TiltedWave:
      return 3.0 * x.x1 + std::cos(std::numbers::pi * x.x2);
    case BoundaryFixture::Saddle: {
      const double a = x.x1 - 0.5, b2 = x.x2 - 0.5;
      return 3.0 * (a * a - b2 * b2);
    }
  }
  return 0.0;
}

SweepConfig parse_sweep(const IniFile& ini) {
  SweepConfig cfg;
  const std::string sec = "sweep";
  cfg.p = ini.required_number(sec, "p");
  cfg.alpha = ini.required_number(sec, "alpha");
  cfg.n = to_dimension(ini.required_number(sec, "n"), "[sweep] n");
  cfg.q_values = ini.required_numbers(sec, "q");
  cfg.m = ini.integer(sec, "m").value_or(cfg.m);
  if (auto b = ini.text(sec, "boundary")) {
    if (*b == "affine") {
      cfg.boundary = BoundaryFixture::Affine;
    } else if (*b == "tilted_wave") {
      cfg.boundary = BoundaryFixture::TiltedWave;
    } else if (*b == "saddle") {
      cfg.boundary = BoundaryFixture::Saddle;
    } else {
      throw ConfigError("[sweep] boundary: unknown fixture '" + *b + "' (affine, tilted_wave, saddle)");
    }
  }
  cfg.coefficient_amplitude = ini.number(sec, "coefficient_amplitude").value_or(cfg.coefficient_amplitude);
  cfg.coefficient_offset = ini.number(sec, "coefficient_offset").value_or(cfg.coefficient_offset);
  cfg.write_svg = ini.boolean(sec, "svg").value_or(cfg.write_svg);
  cfg.write_fields = ini.boolean(sec, "write_fields").value_or(cfg.write_fields);

  const std::string sol = "solver";
  cfg.solver.tol_grad = ini.number(sol, "tol_grad").value_or(cfg.solver.tol_grad);
  cfg.solver.max_iters = ini.integer(sol, "max_iters").value_or(cfg.solver.max_iters);
  cfg.solver.armijo_c = ini.number(sol, "armijo_c").value_or(cfg.solver.armijo_c);
  cfg.solver.backtrack_factor = ini.number(sol, "backtrack_factor").value_or(cfg.solver.backtrack_factor);
  cfg.solver.max_backtracks = ini.integer(sol, "max_backtracks").value_or(cfg.solver.max_backtracks);
  if (auto g = ini.text(sol, "initial_guess")) {
    if (*g == "harmonic") {
      cfg.solver.initial_guess = InitialGuess::HarmonicExtension;
    } else if (*g == "zero") {
      cfg.solver.initial_guess = InitialGuess::ZeroInterior;
    } else {
      throw ConfigError("[solver] initial_guess: expected harmonic or zero");
    }
  }
  const auto eps = ini.numbers(sol, "eps_schedule").value_or(std::vector<double>{0.0});
  const auto mu = ini.numbers(sol, "mu_schedule").value_or(std::vector<double>(eps.size(), 0.0));
  if (eps.empty() || eps.size() != mu.size()) {
    throw ConfigError("[solver] eps_schedule and mu_schedule need the same, nonzero length");
  }
  cfg.solver.continuation.clear();
  for (std::size_t k = 0; k < eps.size(); ++k) cfg.solver.continuation.push_back({eps[k], mu[k]});
  as_config_error("[solver]", [&] {
    cfg.solver.validate();
    return 0;
  });

  cfg.metrics = parse_metric_settings(ini, "metrics");

  // Re-validate everything the solves will rely on.
  const double q_star = cfg.p * (1.0 + cfg.alpha / cfg.n);
  for (double q : cfg.q_values) {
    checked_params(cfg.p, q, cfg.alpha, cfg.n, "[sweep] q = " + format_number(q));
    as_config_error("[sweep] q = " + format_number(q), [&] {
      IntegrandSpec{DoublePhase{cfg.p, q}}.validate();
      return 0;
    });
  }
  const auto [qmin, qmax] = std::minmax_element(cfg.q_values.begin(), cfg.q_values.end());
  if (!(*qmin < q_star && *qmax > q_star)) {
    throw ConfigError("[sweep] q grid must straddle q* = " + format_number(q_star));
  }
  as_config_error("[sweep] coefficient", [&] {
    return CoefficientField::distance_power(cfg.alpha, cfg.coefficient_offset, cfg.coefficient_amplitude);
  });
  const Grid grid = as_config_error("[sweep] m", [&] { return make_grid(cfg.m); });
  check_metric_settings(cfg.metrics, grid, "[metrics]");
  return cfg;
}

namespace {

SweepRow sweep_point(const SweepConfig& cfg, double q, DiscreteField& field_out) {
  const Grid grid = make_grid(cfg.m);
  const auto boundary =
      DiscreteField::from_function(grid, [&](Point x) { return boundary_value(cfg.boundary, x); });
  const auto a = CoefficientField::distance_power(cfg.alpha, cfg.coefficient_offset, cfg.coefficient_amplitude);
  const IntegrandSpec spec{DoublePhase{cfg.p, q}};

  SweepRow row;
  row.q = q;
  const SolveResult result = ghost_continuation(spec, a, a, grid, boundary, cfg.solver);
  row.converged = result.converged;
  row.iterations = result.iterations;
  row.energy = result.per_stage.empty() ? kNaN : result.per_stage.back().energy;
  row.note = result.diagnostic;
  if (!result.converged && row.note.empty() && !result.per_stage.empty()) {
    row.note = "final stage " + std::string(to_string(result.per_stage.back().outcome)) + ", gradient max-norm " +
               format_number(result.grad_norm);
  }
  field_out = result.field;

  const CellGradientField grads = discrete_gradient(result.field);
  try {
    const HolderEstimate h = holder_exponent(grads, cfg.metrics.holder_center, cfg.metrics.holder_radii);
    row.holder_exponent = h.exponent;
    row.holder_fit = h.fit_quality;
  } catch (const std::exception& e) {
    row.holder_exponent = row.holder_fit = kNaN;
    row.note += std::string(row.note.empty() ? "" : "; ") + "holder: " + e.what();
  }
  try {
    const CaccioppoliFit c = fit_caccioppoli(grads, cfg.p, q, cfg.metrics.caccioppoli_offsets);
    row.s_order = c.s_order;
    row.C = c.C;
    row.residual = c.residual;
  } catch (const std::exception& e) {
    row.s_order = row.C = row.residual = kNaN;
    row.note += std::string(row.note.empty() ? "" : "; ") + "caccioppoli: " + e.what();
  }
  return row;
}

}  // namespace

SweepOutcome cmd_sweep(const SweepConfig& config, int threads) {
  const std::size_t count = config.q_values.size();
  SweepOutcome out;
  out.rows.resize(count);
  out.fields.assign(count, DiscreteField(make_grid(config.m)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) out.rows[k] = sweep_point(config, config.q_values[k], out.fields[k]);
  };
  const int workers = std::clamp(threads, 1, static_cast<int>(count));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "q,converged,iterations,energy,holder_exponent,holder_fit,s_order,C,residual\n";
  for (const auto& r : rows) {
    out << format_number(r.q) << ',' << (r.converged ? "true" : "false") << ',' << r.iterations << ','
        << format_number(r.energy) << ',' << format_number(r.holder_exponent) << ',' << format_number(r.holder_fit)
        << ',' << format_number(r.s_order) << ',' << format_number(r.C) << ',' << format_number(r.residual) << '\n';
  }
}

void write_sweep_svg(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows) {
  const double W = 640, H = 400, L = 60, R = 20, T = 30, B = 50;
  double qmin = rows.front().q, qmax = rows.front().q;
  for (const auto& r : rows) {
    qmin = std::min(qmin, r.q);
    qmax = std::max(qmax, r.q);
  }
  if (qmax == qmin) qmax = qmin + 1.0;
  const double ymin = 0.0, ymax = HolderEstimate::kSmoothSentinel;
  auto sx = [&](double q) { return L + (q - qmin) / (qmax - qmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  auto num = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (double y : {0.0, 0.5, 1.0, 1.5}) {
    out << "<text x=\"" << L - 8 << "\" y=\"" << num(sy(y) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
        << format_number(y) << "</text>\n";
  }
  for (const auto& r : rows) {
    out << "<text x=\"" << num(sx(r.q)) << "\" y=\"" << H - B + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << format_number(r.q) << "</text>\n";
  }
  const double q_star = config.p * (1.0 + config.alpha / config.n);
  out << "<line x1=\"" << num(sx(q_star)) << "\" y1=\"" << T << "\" x2=\"" << num(sx(q_star)) << "\" y2=\"" << H - B
      << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"" << num(sx(q_star) + 4) << "\" y=\"" << T + 12 << "\" font-size=\"11\">q* = "
      << format_number(q_star) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (const auto& r : rows) {
    if (!std::isfinite(r.holder_exponent)) continue;
    out << (first ? "" : " ") << num(sx(r.q)) << ',' << num(sy(r.holder_exponent));
    first = false;
  }
  out << "\"/>\n";
  for (const auto& r : rows) {
    if (!std::isfinite(r.holder_exponent)) continue;
    out << "<circle cx=\"" << num(sx(r.q)) << "\" cy=\"" << num(sy(r.holder_exponent)) << "\" r=\"3\" fill=\""
        << (r.converged ? "steelblue" : "firebrick") << "\"/>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" font-size=\"12\" text-anchor=\"middle\">q</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << (T + H - B) / 2
      << ")\" text-anchor=\"middle\">Hölder exponent of Du</text>\n";
  out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// moser

MoserConfig parse_moser(const IniFile& ini) {
  const std::string sec = "moser";
  MoserConfig cfg;
  cfg.t0 = ini.required_number(sec, "t0");
  cfg.sigma = ini.required_number(sec, "sigma");
  cfg.p = ini.required_number(sec, "p");
  cfg.gamma = ini.required_number(sec, "gamma");
  cfg.q = ini.required_number(sec, "q");
  cfg.max_iters = ini.required_integer(sec, "max_iters");
  cfg.target = ini.number(sec, "target");
  as_config_error("[moser]", [&] { return moser_sequence(cfg.t0, cfg.sigma, cfg.p, cfg.gamma, cfg.q, 1, cfg.target); });
  if (cfg.max_iters < 1) throw ConfigError("[moser] max_iters must be >= 1");
  return cfg;
}

MoserSequence cmd_moser(const MoserConfig& c) {
  return moser_sequence(c.t0, c.sigma, c.p, c.gamma, c.q, c.max_iters, c.target);
}

void write_moser_csv(std::ostream& out, const MoserSequence& seq) {
  out << "i,t_i\n";
  for (std::size_t i = 0; i < seq.t.size(); ++i) out << i << ',' << format_number(seq.t[i]) << '\n';
}

// ---------------------------------------------------------------------------
// metrics

MetricsConfig parse_metrics(const IniFile& ini) {
  const std::string sec = "metrics";
  MetricsConfig cfg;
  cfg.field = resolve(ini, ini.required_text(sec, "field"));
  const double p = ini.required_number(sec, "p");
  const double q = ini.required_number(sec, "q");
  const double alpha = ini.required_number(sec, "alpha");
  const int n = to_dimension(ini.required_number(sec, "n"), "[metrics] n");
  cfg.params = checked_params(p, q, alpha, n, "[metrics]");
  cfg.metrics = parse_metric_settings(ini, sec);
  return cfg;
}

MetricsRow cmd_metrics(const MetricsConfig& config) {
  std::ifstream in(config.field);
  if (!in) throw IoError("cannot open field file '" + config.field.string() + "'");
  DiscreteField field = [&] {
    try {
      return read_field_csv(in);
    } catch (const ParseError& e) {
      throw IoError(config.field.string() + ": " + e.what());
    }
  }();
  check_metric_settings(config.metrics, field.grid(), "[metrics]");

  MetricsRow row;
  row.params = config.params;
  row.regime = classify(config.params).regime;
  const CellGradientField grads = discrete_gradient(field);
  try {
    row.caccioppoli = fit_caccioppoli(grads, config.params.p, config.params.q, config.metrics.caccioppoli_offsets);
  } catch (const DegenerateError&) {
    row.caccioppoli.s_order = row.caccioppoli.C = row.caccioppoli.residual = kNaN;
  } catch (const SingularityError&) {
    row.caccioppoli.s_order = row.caccioppoli.C = row.caccioppoli.residual = kNaN;
  }
  row.holder = holder_exponent(grads, config.metrics.holder_center, config.metrics.holder_radii);
  return row;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << "p,q,alpha,regime,s_order,C,holder_exponent,fit_quality\n";
  for (const auto& r : rows) {
    out << format_number(r.params.p) << ',' << format_number(r.params.q) << ',' << format_number(r.params.alpha) << ','
        << to_string(r.regime) << ',' << format_number(r.caccioppoli.s_order) << ',' << format_number(r.caccioppoli.C)
        << ',' << format_number(r.holder.exponent) << ',' << format_number(r.holder.fit_quality) << '\n';
  }
}

// ---------------------------------------------------------------------------
// colimit

ColimitConfig parse_colimit(const IniFile& ini) {
  return {resolve(ini, ini.required_text("colimit", "dag"))};
}

ColimitResult cmd_colimit(const ColimitConfig& config) {
  std::ifstream in(config.dag);
  if (!in) throw IoError("cannot open DAG file '" + config.dag.string() + "'");
  DagDocument doc = read_dag(in);
  const auto& rejected = doc.rejected;
  doc.dag.validate([&](const ClaimNode& n) { return std::find(rejected.begin(), rejected.end(), n.id) == rejected.end(); });
  return colimit(doc.dag);
}

// ---------------------------------------------------------------------------

int run_command(const std::string& command, const RunOptions& options, std::ostream& out, std::ostream& err) {
  const std::string started = utc_timestamp();
  std::ostringstream log;
  try {
    if (options.threads < 1) throw ConfigError("--threads must be >= 1");
    const IniFile ini = IniFile::load(options.config);

    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + options.out_dir.string() + "': " + ec.message());
    const auto path = [&](const char* name) { return options.out_dir / name; };
    auto write_file = [&](const char* name, auto&& writer) {
      const auto p = path(name);
      std::ofstream f = open_output(p);
      writer(f);
      finish_output(f, p);
      out << "wrote " << p.string() << '\n';
    };

    if (command == "classify") {
      const auto cfg = parse_classify(ini, options.seed);
      ini.reject_unknown();
      const auto rows = cmd_classify(cfg);
      write_file("verdicts.csv", [&](std::ostream& f) { write_verdicts_csv(f, rows); });
      log << "rows: " << rows.size() << '\n';
    } else if (command == "sweep") {
      const auto cfg = parse_sweep(ini);
      ini.reject_unknown();
      const auto result = cmd_sweep(cfg, options.threads);
      write_file("sweep.csv", [&](std::ostream& f) { write_sweep_csv(f, result.rows); });
      write_file("holder.dat", [&](std::ostream& f) {
        f << "# q holder_exponent\n";
        for (const auto& r : result.rows) f << format_number(r.q) << ' ' << format_number(r.holder_exponent) << '\n';
      });
      write_file("s_order.dat", [&](std::ostream& f) {
        f << "# q s_order\n";
        for (const auto& r : result.rows) f << format_number(r.q) << ' ' << format_number(r.s_order) << '\n';
      });
      if (cfg.write_svg) write_file("sweep.svg", [&](std::ostream& f) { write_sweep_svg(f, cfg, result.rows); });
      if (cfg.write_fields) {
        for (std::size_t k = 0; k < result.rows.size(); ++k) {
          const std::string name = "field_q" + format_number(result.rows[k].q) + ".csv";
          write_file(name.c_str(), [&](std::ostream& f) { write_field_csv(f, result.fields[k]); });
        }
      }
      log << "boundary: " << to_string(cfg.boundary) << "\nm: " << cfg.m << '\n';
      for (const auto& r : result.rows) {
        log << "q=" << format_number(r.q) << " converged=" << (r.converged ? "true" : "false")
            << " iterations=" << r.iterations;
        if (!r.note.empty()) log << " note: " << r.note;
        log << '\n';
      }
    } else if (command == "moser") {
      const auto cfg = parse_moser(ini);
      ini.reject_unknown();
      const auto seq = cmd_moser(cfg);
      write_file("moser.csv", [&](std::ostream& f) { write_moser_csv(f, seq); });
      log << "increment: " << format_number(seq.increment) << "\ndiverges: " << (seq.diverges ? "true" : "false")
          << '\n';
      if (seq.steps_to_target) log << "steps_to_target: " << *seq.steps_to_target << '\n';
    } else if (command == "metrics") {
      const auto cfg = parse_metrics(ini);
      ini.reject_unknown();
      const auto row = cmd_metrics(cfg);
      write_file("metrics.csv", [&](std::ostream& f) { write_metrics_csv(f, {row}); });
      if (row.caccioppoli.exact_regularity) log << "caccioppoli: exact regularity (all differences vanish)\n";
      if (row.holder.zero_oscillation) log << "holder: zero oscillation (smooth sentinel)\n";
    } else if (command == "colimit") {
      const auto cfg = parse_colimit(ini);
      ini.reject_unknown();
      const auto result = cmd_colimit(cfg);
      write_colimit(out, result);
      write_file("colimit.txt", [&](std::ostream& f) { write_colimit(f, result); });
      log << "classes: " << result.classes.size() << '\n';
    } else {
      throw ConfigError("unknown command '" + command + "' (classify, sweep, moser, metrics, colimit)");
    }

    write_file("run.log", [&](std::ostream& f) {
      f << "started: " << started << "\nfinished: " << utc_timestamp() << "\ncommand: " << command
        << "\nconfig: " << options.config.string() << "\nseed: " << options.seed << "\nthreads: " << options.threads
        << '\n'
        << log.str();
    });
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DagError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace ghostlab::cli
