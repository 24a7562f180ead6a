#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "levymet/errors.hpp"
#include "levymet/mc_oracle.hpp"
#include "levymet/solver1d.hpp"
#include "levymet/solver2d_hv.hpp"
#include "levymet/solver2d_iso.hpp"

namespace levymet::cli {
namespace {

using json = nlohmann::ordered_json;

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InvalidParams(std::string("malformed ") + what + " list '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidParams(std::string(what) + " list is empty");
  return out;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InvalidParams("malformed point '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty() || out.size() > 2) throw InvalidParams("point needs one or two coordinates");
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// Flags shared by every subcommand; kept as text where the echo must be exact.
struct ModelFlags {
  double alpha = 0.5;
  double lambda = 0.01;
  double intensity = 1.0;
  double diffusion = 0.0;
  std::string drift = "zero";
  double half_width = 1.0;

  void add_to(CLI::App* app) {
    app->add_option("--alpha", alpha, "stable index in (0,1) or (1,2)")->capture_default_str();
    app->add_option("--lambda", lambda, "tempering rate, 0 for pure stable")->capture_default_str();
    app->add_option("--intensity", intensity, "jump intensity")->capture_default_str();
    app->add_option("--diffusion", diffusion, "Brownian coefficient d")->capture_default_str();
    app->add_option("--drift", drift, "zero, linear:k or cubic:a,b")->capture_default_str();
    app->add_option("--half-width", half_width, "domain half-width L (disc radius)")
        ->capture_default_str();
  }

  ModelParams resolve() const {
    ModelParams p;
    p.alpha = alpha;
    p.lambda = lambda;
    p.intensity = intensity;
    p.diffusion = diffusion;
    p.drift = DriftSpec::parse(drift);
    p.half_width = half_width;
    p.validate();
    return p;
  }
};

// Ordered flag/value pairs of the resolved configuration; rendered both as the
// `#` echo line (a runnable command) and as the JSON "config" object.
class Echo {
 public:
  explicit Echo(std::string command) : command_(std::move(command)) {}

  void add(const std::string& flag, const std::string& text, json value) {
    items_.emplace_back(flag, text);
    config_[flag] = std::move(value);
  }
  void add(const std::string& flag, double v) { add(flag, shortest(v), v); }
  void add_int(const std::string& flag, long long v) { add(flag, std::to_string(v), v); }
  void add_str(const std::string& flag, const std::string& v) { add(flag, v, v); }

  void model(const ModelParams& p) {
    add("alpha", p.alpha);
    add("lambda", p.lambda);
    add("intensity", p.intensity);
    add("diffusion", p.diffusion);
    add_str("drift", p.drift.to_string());
    add("half-width", p.half_width);
  }

  std::string line() const {
    std::string s = "# levymet " + command_;
    for (const auto& [flag, text] : items_) s += " --" + flag + " " + text;
    return s + "\n";
  }
  json object() const {
    json j;
    j["command"] = command_;
    j["config"] = config_;
    return j;
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> items_;
  json config_ = json::object();
};

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") {
    throw InvalidParams("format must be csv or json, got '" + format + "'");
  }
}

LinearSolver parse_solver(const std::string& s) {
  if (s == "dense") return LinearSolver::dense;
  if (s == "iterative") return LinearSolver::iterative;
  throw InvalidParams("solver must be dense or iterative, got '" + s + "'");
}

Scheme parse_scheme(const std::string& s) {
  if (s == "corrected") return Scheme::corrected;
  if (s == "literal") return Scheme::literal;
  throw InvalidParams("scheme must be corrected or literal, got '" + s + "'");
}

struct Solve1dCmd {
  ModelFlags model;
  int J = 160;
  std::string solver = "dense";
  std::string scheme = "corrected";

  std::string run(const std::string& format) const {
    const ModelParams p = model.resolve();
    const LinearSolver ls = parse_solver(solver);
    const Scheme sc = parse_scheme(scheme);
    Echo echo("solve1d");
    echo.model(p);
    echo.add_int("J", J);
    echo.add_str("solver", solver);
    echo.add_str("scheme", scheme);
    echo.add_str("format", format);
    const Solution1D sol = solve_met(p, J, ls, sc);
    const std::vector<double> x = sol.nodes();
    if (format == "json") {
      json j = echo.object();
      j["x"] = x;
      j["u"] = sol.values;
      return j.dump(2) + "\n";
    }
    std::string s = echo.line() + "x,u\n";
    for (std::size_t i = 0; i < x.size(); ++i) s += sci(x[i]) + "," + sci(sol.values[i]) + "\n";
    return s;
  }
};

struct ConvergenceCmd {
  ModelFlags model;
  std::string mode = "manufactured-1d";
  std::string resolutions;  // empty: mode default
  bool resolutions_given = false;
  int reference = 640;
  std::string solver = "dense";
  std::string scheme = "corrected";

  std::string run(const std::string& format) const {
    const ModelParams p = model.resolve();
    std::vector<int> js;
    if (resolutions_given) {
      js = parse_int_list(resolutions, "resolution");
    } else if (mode == "self-iso") {
      js = {10, 20, 40, 80, 160, 320};
    } else {
      js = {20, 40, 80, 160, 320};
    }
    Echo echo("convergence");
    echo.add_str("mode", mode);
    echo.model(p);
    echo.add_str("resolutions", join(js));
    ConvergenceReport rep;
    if (mode == "manufactured-1d") {
      const LinearSolver ls = parse_solver(solver);
      const Scheme sc = parse_scheme(scheme);
      echo.add_str("solver", solver);
      echo.add_str("scheme", scheme);
      echo.add_str("format", format);
      rep = verify_convergence(p, js, ls, sc);
    } else if (mode == "self-iso") {
      echo.add_int("reference", reference);
      echo.add_str("format", format);
      rep = iso_self_convergence(p, js, reference);
    } else {
      throw InvalidParams("mode must be manufactured-1d or self-iso, got '" + mode + "'");
    }
    if (format == "json") {
      json j = echo.object();
      j["resolutions"] = rep.resolutions;
      j["mesh_sizes"] = rep.mesh_sizes;
      j["errors"] = rep.errors;
      j["fitted_order"] = rep.fitted_order;
      return j.dump(2) + "\n";
    }
    std::string s = echo.line() + "# fitted_order " + sci(rep.fitted_order) + "\nJ,h,error\n";
    for (std::size_t i = 0; i < rep.errors.size(); ++i) {
      s += std::to_string(rep.resolutions[i]) + "," + sci(rep.mesh_sizes[i]) + "," +
           sci(rep.errors[i]) + "\n";
    }
    return s;
  }
};

struct Solve2dCmd {
  ModelFlags model;
  std::string case_name = "hv";
  int J = 0;  // 0: 40 for hv, 160 for iso
  std::string disc_out;
  int disc_points = 101;

  // returns main output; fills `disc` with the revolved field when requested
  std::string run(const std::string& format, std::string& disc) const {
    const ModelParams p = model.resolve();
    const int j_used = J > 0 ? J : (case_name == "iso" ? 160 : 40);
    Echo echo("solve2d");
    echo.add_str("case", case_name);
    echo.model(p);
    echo.add_int("J", j_used);
    if (case_name == "hv") {
      echo.add_str("format", format);
      const Solution2DHV sol = solve_hv(p, j_used);
      const Grid2D& g = sol.grid;
      const double h = g.h();
      if (format == "json") {
        json j = echo.object();
        std::vector<double> nodes;
        for (int i = -j_used + 1; i < j_used; ++i) nodes.push_back(i * h);
        j["x"] = nodes;
        j["u"] = sol.values;
        j["gmres_iterations"] = sol.stats.iterations;
        return j.dump(2) + "\n";
      }
      std::string s = echo.line() + "x1,x2,u\n";
      for (int i = -j_used + 1; i < j_used; ++i) {
        for (int k = -j_used + 1; k < j_used; ++k) {
          s += sci(i * h) + "," + sci(k * h) + "," + sci(sol.at(i, k)) + "\n";
        }
      }
      return s;
    }
    if (case_name != "iso") throw InvalidParams("case must be hv or iso, got '" + case_name + "'");
    if (disc_points < 2) throw InvalidParams("disc-points must be at least 2");
    echo.add_int("disc-points", disc_points);
    echo.add_str("format", format);
    const RadialSolution sol = solve_iso(p, j_used);
    std::vector<double> r(sol.values.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sol.grid.node(static_cast<int>(i));
    if (!disc_out.empty()) {
      const double R = p.half_width;
      disc = echo.line() + "x1,x2,u\n";
      for (int a = 0; a < disc_points; ++a) {
        const double x1 = -R + 2.0 * R * a / (disc_points - 1);
        for (int b = 0; b < disc_points; ++b) {
          const double x2 = -R + 2.0 * R * b / (disc_points - 1);
          disc += sci(x1) + "," + sci(x2) + "," + sci(sol.revolved(x1, x2)) + "\n";
        }
      }
    }
    if (format == "json") {
      json j = echo.object();
      j["r"] = r;
      j["u"] = sol.values;
      return j.dump(2) + "\n";
    }
    std::string s = echo.line() + "r,u\n";
    for (std::size_t i = 0; i < r.size(); ++i) s += sci(r[i]) + "," + sci(sol.values[i]) + "\n";
    return s;
  }
};

struct McCmd {
  ModelFlags model;
  std::string case_name = "interval";
  std::string x0 = "0";
  int paths = 10000;
  double dt = 1e-3;
  double t_max = 200.0;
  std::uint64_t seed = 1;
  int shards = 64;
  int threads = 0;

  std::string run(const std::string& format) const {
    const ModelParams p = model.resolve();
    Geometry geom;
    if (case_name == "interval") {
      geom = Geometry::interval;
    } else if (case_name == "hv") {
      geom = Geometry::square;
    } else if (case_name == "iso") {
      geom = Geometry::disc;
    } else {
      throw InvalidParams("case must be interval, hv or iso, got '" + case_name + "'");
    }
    const std::vector<double> pt = parse_point(x0);
    std::array<double, 2> start{pt[0], pt.size() > 1 ? pt[1] : 0.0};
    McConfig cfg;
    cfg.n_paths = paths;
    cfg.dt = dt;
    cfg.t_max = t_max;
    cfg.seed = seed;
    cfg.shards = shards;
    cfg.threads = threads;
    cfg.validate();

    Echo echo("mc");
    echo.add_str("case", case_name);
    echo.model(p);
    echo.add_str("x0", geom == Geometry::interval ? shortest(start[0])
                                                  : shortest(start[0]) + "," + shortest(start[1]));
    echo.add_int("paths", paths);
    echo.add("dt", dt);
    echo.add("t-max", t_max);
    echo.add("seed", std::to_string(seed), seed);
    echo.add_int("shards", shards);
    echo.add_str("format", format);
    const McEstimate est = estimate_met(start, geom, p, cfg);
    if (format == "json") {
      json j = echo.object();
      j["mean"] = est.mean;
      j["std_error"] = est.std_error;
      j["n_paths"] = est.n_paths;
      j["censored_fraction"] = est.censored_fraction;
      return j.dump(2) + "\n";
    }
    return echo.line() + "mean,std_error,n_paths,censored_fraction\n" + sci(est.mean) + "," +
           sci(est.std_error) + "," + std::to_string(est.n_paths) + "," +
           sci(est.censored_fraction) + "\n";
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParams("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean exit times under tempered Levy noise", "levymet"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format;
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "output file (default: standard output)");
    sub->add_option("--format", format, "csv or json");
  };

  Solve1dCmd s1;
  auto* c_s1 = app.add_subcommand("solve1d", "mean exit time on (-L, L)");
  s1.model.add_to(c_s1);
  c_s1->add_option("--J", s1.J, "resolution, h = L / J")->capture_default_str();
  c_s1->add_option("--solver", s1.solver, "dense or iterative")->capture_default_str();
  c_s1->add_option("--scheme", s1.scheme, "corrected or literal boundary rows")
      ->capture_default_str();
  add_io(c_s1);

  ConvergenceCmd cv;
  auto* c_cv = app.add_subcommand("convergence", "convergence studies");
  cv.model.add_to(c_cv);
  c_cv->add_option("--mode", cv.mode, "manufactured-1d or self-iso")->capture_default_str();
  auto* res_opt = c_cv->add_option("--resolutions", cv.resolutions, "comma-separated J values");
  c_cv->add_option("--reference", cv.reference, "reference J for self-iso")->capture_default_str();
  c_cv->add_option("--solver", cv.solver, "dense or iterative")->capture_default_str();
  c_cv->add_option("--scheme", cv.scheme, "corrected or literal")->capture_default_str();
  add_io(c_cv);

  Solve2dCmd s2;
  auto* c_s2 = app.add_subcommand("solve2d", "square (hv) or disc (iso)");
  s2.model.add_to(c_s2);
  c_s2->add_option("--case", s2.case_name, "hv or iso")->capture_default_str();
  c_s2->add_option("--J", s2.J, "resolution (default 40 for hv, 160 for iso)");
  c_s2->add_option("--disc-out", s2.disc_out, "iso: also write the revolved x1,x2,u field here");
  c_s2->add_option("--disc-points", s2.disc_points, "iso: samples per axis of the revolved field")
      ->capture_default_str();
  add_io(c_s2);

  McCmd mc;
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo estimate of the mean exit time");
  mc.model.add_to(c_mc);
  c_mc->add_option("--case", mc.case_name, "interval, hv or iso")->capture_default_str();
  c_mc->add_option("--x0", mc.x0, "starting point x1[,x2]")->capture_default_str();
  c_mc->add_option("--paths", mc.paths, "number of paths")->capture_default_str();
  c_mc->add_option("--dt", mc.dt, "time step")->capture_default_str();
  c_mc->add_option("--t-max", mc.t_max, "censoring horizon")->capture_default_str();
  c_mc->add_option("--seed", mc.seed, "master seed")->capture_default_str();
  c_mc->add_option("--shards", mc.shards, "independently seeded path groups")
      ->capture_default_str();
  c_mc->add_option("--threads", mc.threads, "worker threads, 0 = all cores (no effect on output)")
      ->capture_default_str();
  add_io(c_mc);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      if (!app.get_subcommands().empty()) out << app.get_subcommands().front()->help();
      return kExitOk;
    }
    err << "levymet: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string text;
  std::string disc;
  try {
    if (c_s1->parsed()) {
      if (format.empty()) format = "csv";
      check_format(format);
      text = s1.run(format);
    } else if (c_cv->parsed()) {
      if (format.empty()) format = "json";
      check_format(format);
      cv.resolutions_given = res_opt->count() > 0;
      text = cv.run(format);
    } else if (c_s2->parsed()) {
      if (format.empty()) format = "csv";
      check_format(format);
      text = s2.run(format, disc);
    } else {
      if (format.empty()) format = "json";
      check_format(format);
      text = mc.run(format);
    }
    if (out_path.empty()) {
      out << text;
    } else {
      write_file(out_path, text);
    }
    if (!s2.disc_out.empty() && !disc.empty()) write_file(s2.disc_out, disc);
  } catch (const InvalidParams& e) {
    err << "levymet: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "levymet: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "levymet: solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace levymet::cli
