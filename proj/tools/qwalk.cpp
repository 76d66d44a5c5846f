// qwalk: command-line front end for the one-defect quantum walk library.
#include <CLI11.hpp>
#include <json.hpp>
#include <qwalk/qwalk.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qwalk;
using json = nlohmann::ordered_json;

constexpr int schema_version = 1;
constexpr long max_steps = 1'000'000;

// Bad user input; the message names the flag.
struct FlagError : std::runtime_error {
  FlagError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

struct RunConfig {
  std::string command;
  std::string lattice = "line";
  std::string coin = "hadamard";
  std::string defect = "hadamard";
  std::optional<long> steps;
  long site = 0;
  std::string qubit = "1,0,0,0";
  std::string a, b, omega;
  int grid = 64;
  int theta_grid = 256;
  int samples = 512;
  std::string axis;
  std::string mode = "cesaro";
  std::string suite = "kmcg";
  std::string format;
  std::string output;
  std::string config;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

std::vector<double> parse_reals(const std::string& flag, const std::string& text, std::size_t count) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw FlagError(flag, "not a number: '" + item + "'");
    }
  }
  if (out.size() != count) throw FlagError(flag, "expected " + std::to_string(count) + " comma-separated reals");
  return out;
}

cplx parse_complex(const std::string& flag, const std::string& text) {
  const auto v = parse_reals(flag, text, 2);
  return {v[0], v[1]};
}

Mat2 parse_coin(const std::string& flag, const std::string& text) {
  Mat2 m;
  if (text == "hadamard") {
    m = coins::hadamard();
  } else if (text == "identity") {
    m = coins::identity();
  } else if (text.rfind("konno:", 0) == 0) {
    m = coins::konno(parse_reals(flag, text.substr(6), 1)[0]);
  } else {
    const auto v = parse_reals(flag, text, 8);
    m << cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5]), cplx(v[6], v[7]);
  }
  try {
    validate_coin(m);
  } catch (const Error& e) {
    throw FlagError(flag, e.what());
  }
  return m;
}

Qubit parse_qubit(const std::string& text) {
  const auto v = parse_reals("--qubit", text, 4);
  const Qubit q{cplx(v[0], v[1]), cplx(v[2], v[3])};
  if (q.norm2() == 0.0) throw FlagError("--qubit", "zero vector");
  return q.normalized();
}

Lattice parse_lattice(const std::string& text) {
  if (text == "line") return Lattice::Line;
  if (text == "halfline") return Lattice::HalfLine;
  throw FlagError("--lattice", "expected line or halfline");
}

cplx parse_disk_point(const std::string& flag, const std::string& text) {
  const cplx z = parse_complex(flag, text);
  if (!(std::abs(z) < 1.0)) throw FlagError(flag, "must lie in the open unit disk");
  return z;
}

json coin_json(const Mat2& m) {
  json j;
  const char* names[] = {"c11", "c12", "c21", "c22"};
  for (int k = 0; k < 4; ++k) {
    j[std::string(names[k]) + "_re"] = m(k / 2, k % 2).real();
    j[std::string(names[k]) + "_im"] = m(k / 2, k % 2).imag();
  }
  return j;
}

std::string coin_flag_from_json(const std::string& flag, const json& j) {
  std::string out;
  for (const char* n : {"c11", "c12", "c21", "c22"})
    for (const char* part : {"_re", "_im"}) {
      const std::string key = std::string(n) + part;
      if (!j.contains(key) || !j[key].is_number()) throw FlagError(flag, "missing numeric field " + key);
      out += (out.empty() ? "" : ",") + num(j[key].get<double>());
    }
  return out;
}

json qubit_json(const Qubit& q) {
  return {{"alpha_re", q.alpha.real()}, {"alpha_im", q.alpha.imag()}, {"beta_re", q.beta.real()}, {"beta_im", q.beta.imag()}};
}

// Fields of a JSON config (or an earlier classify report) fill flags not given on the command line.
void apply_config(RunConfig& cfg, const CLI::App& sub) {
  std::ifstream in(cfg.config);
  if (!in) throw FlagError("--config", "cannot open " + cfg.config);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FlagError("--config", e.what());
  }
  if (j.contains("schema_version") && j["schema_version"] != schema_version)
    throw FlagError("--config", "unsupported schema_version");
  auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
  try {
    if (j.contains("lattice") && unset("--lattice")) cfg.lattice = j["lattice"].get<std::string>();
    if (j.contains("coin") && unset("--coin")) cfg.coin = coin_flag_from_json("--config coin", j["coin"]);
    if (j.contains("defect") && unset("--defect")) cfg.defect = coin_flag_from_json("--config defect", j["defect"]);
    if (j.contains("steps") && unset("--steps")) cfg.steps = j["steps"].get<long>();
    if (j.contains("site") && unset("--site")) cfg.site = j["site"].get<long>();
    if (j.contains("qubit") && unset("--qubit")) {
      const json& q = j["qubit"];
      cfg.qubit = num(q.at("alpha_re").get<double>()) + "," + num(q.at("alpha_im").get<double>()) + "," +
                  num(q.at("beta_re").get<double>()) + "," + num(q.at("beta_im").get<double>());
    }
  } catch (const json::exception& e) {
    throw FlagError("--config", e.what());
  }
}

// The walk parameters after validation: either a full spec or reduced parameters.
struct Setup {
  Lattice lattice;
  std::optional<WalkSpec> spec;
  DefectParams params;
  Qubit qubit;      // as given
  Qubit hat_qubit;  // rotated frame at the starting site
};

Setup make_setup(const RunConfig& cfg, bool allow_reduced) {
  Setup s;
  s.lattice = parse_lattice(cfg.lattice);
  s.qubit = parse_qubit(cfg.qubit);
  if (s.lattice == Lattice::HalfLine && cfg.site < 0) throw FlagError("--site", "must be >= 0 on the half-line");
  if (allow_reduced && !cfg.a.empty()) {
    s.params.a = parse_disk_point("--a", cfg.a);
    s.params.b = cfg.b.empty() ? s.params.a : parse_disk_point("--b", cfg.b);
    if (!cfg.omega.empty()) {
      s.params.omega = parse_complex("--omega", cfg.omega);
      if (std::abs(std::abs(s.params.omega) - 1.0) > 1e-12) throw FlagError("--omega", "must be unimodular");
    }
    s.hat_qubit = s.qubit;
    return s;
  }
  s.spec = make_spec(s.lattice, parse_coin("--coin", cfg.coin), parse_coin("--defect", cfg.defect));
  s.params = defect_params(*s.spec);
  s.hat_qubit = hat_qubit(s.qubit, cfg.site, *s.spec);
  return s;
}

const WalkSpec& require_spec(const Setup& s) {
  if (!s.spec) throw FlagError("--a", "this command needs --coin/--defect");
  return *s.spec;
}

json params_json(const DefectParams& p) {
  return {{"a_re", p.a.real()}, {"a_im", p.a.imag()}, {"b_re", p.b.real()}, {"b_im", p.b.imag()},
          {"omega_re", p.omega.real()}, {"omega_im", p.omega.imag()}};
}

Qubit to_walk_frame(const Setup& s, const Qubit& hq) { return s.spec ? unhat_qubit(hq, 0, *s.spec) : hq; }

std::string cmd_simulate(const RunConfig& cfg) {
  const Setup s = make_setup(cfg, false);
  const long steps = cfg.steps.value_or(100);
  if (steps < 0 || steps > max_steps) throw FlagError("--steps", "must be in [0, " + std::to_string(max_steps) + "]");
  const auto p = return_probability_series(require_spec(s), cfg.site, s.qubit, steps);
  std::string out = "n,p\n";
  for (std::size_t n = 0; n < p.size(); ++n) out += std::to_string(n) + "," + num(p[n]) + "\n";
  return out;
}

std::string cmd_classify(const RunConfig& cfg) {
  const Setup s = make_setup(cfg, true);
  if (cfg.site != 0) throw FlagError("--site", "classification is for the origin");
  const DefectParams& p = s.params;
  json j;
  j["schema_version"] = schema_version;
  j["lattice"] = to_string(s.lattice);
  if (s.spec) {
    j["coin"] = coin_json(s.spec->coin.matrix());
    j["defect"] = coin_json(s.spec->defect.matrix());
  }
  j["qubit"] = qubit_json(s.qubit);
  j["params"] = params_json(p);
  if (s.lattice == Lattice::Line) {
    const ClassZ c = classify_line(p.a, p.b, p.omega);
    j["label"] = to_string(c.label);
    j["mass_points"] = json::array();
    for (const MassPointZ& m : c.points)
      j["mass_points"].push_back({{"z_re", m.z0.real()}, {"z_im", m.z0.imag()}, {"m", m.m},
                                  {"eta_re", m.eta.real()}, {"eta_im", m.eta.imag()}});
    const Mat2c form = arp_form_line(p.a, p.b, p.omega);
    const bool independent = (form - form(0, 0).real() * Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-12;
    const double value = arp_origin_line(p.a, p.b, p.omega, s.hat_qubit);
    if (independent)
      j["state_independent_value"] = value;
    else
      j["p_limit"] = {{"qubit", qubit_json(s.qubit)}, {"value", value}};
    const auto nl = nonlocalized_qubit_line(p.a, p.b, p.omega);
    j["nonlocalized_qubit"] = nl ? qubit_json(to_walk_frame(s, *nl)) : json(nullptr);
  } else {
    if (p.a == 0.0) throw Error(ErrorCode::ZeroA, "diagonal coin has no region class");
    const RegionClassZplus r = classify_region_halfline(p.a);
    j["l_label"] = to_string(r.label);
    j["tangent_profile"] = to_string(r.profile);
    j["mass_points"] = json::array();
    for (const MassPointZplus& m : halfline_roots(p.a, p.b))
      j["mass_points"].push_back(
          {{"z_re", m.z0.real()}, {"z_im", m.z0.imag()}, {"side", to_string(m.side)}, {"mu", m.mu}});
    j["p_cesaro"] = arp_origin_halfline(p.a, p.b, s.hat_qubit);
    const auto nl = nonlocalized_qubit_halfline(p.a, p.b);
    j["nonlocalized_qubit"] = nl ? qubit_json(to_walk_frame(s, *nl)) : json(nullptr);
  }
  return j.dump(2) + "\n";
}

std::string cmd_masses(const RunConfig& cfg) {
  const Setup s = make_setup(cfg, true);
  const DefectParams& p = s.params;
  std::string out;
  if (s.lattice == Lattice::Line) {
    out = "z_re,z_im,zeta_re,zeta_im,m,eta_re,eta_im\n";
    for (const MassPointZ& m : classify_line(p.a, p.b, p.omega).points)
      out += num(m.z0.real()) + "," + num(m.z0.imag()) + "," + num(m.zeta0.real()) + "," + num(m.zeta0.imag()) + "," +
             num(m.m) + "," + num(m.eta.real()) + "," + num(m.eta.imag()) + "\n";
  } else {
    out = "z_re,z_im,zeta_re,zeta_im,side,mu\n";
    for (const MassPointZplus& m : halfline_roots(p.a, p.b))
      out += num(m.z0.real()) + "," + num(m.z0.imag()) + "," + num(m.zeta0.real()) + "," + num(m.zeta0.imag()) + "," +
             to_string(m.side) + "," + num(m.mu) + "\n";
  }
  return out;
}

std::string cmd_return_prob(const RunConfig& cfg) {
  const Setup s = make_setup(cfg, true);
  if (cfg.site != 0) throw FlagError("--site", "closed forms exist only at the origin");
  const DefectParams& p = s.params;
  double value;
  if (s.lattice == Lattice::Line) {
    value = arp_origin_line(p.a, p.b, p.omega, s.hat_qubit);
  } else if (cfg.mode == "cesaro") {
    value = arp_origin_halfline(p.a, p.b, s.hat_qubit);
  } else if (cfg.mode == "sequence") {
    if (!cfg.steps) throw FlagError("--steps", "required with --mode sequence");
    // The asymptotic amplitude carries the rotation e^{i n vartheta}, which drops out of |.|^2.
    value = arp_origin_halfline(p.a, p.b, s.hat_qubit, ArpMode::Sequence, *cfg.steps);
  } else {
    throw FlagError("--mode", "expected cesaro or sequence");
  }
  if (cfg.format == "json") {
    json j{{"schema_version", schema_version}, {"lattice", to_string(s.lattice)}, {"value", value}};
    return j.dump(2) + "\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g\n", value);
  return buf;
}

std::string cmd_region(const RunConfig& cfg) {
  const Lattice lattice = parse_lattice(cfg.lattice);
  if (cfg.grid < 8) throw FlagError("--grid", "must be >= 8");
  std::string axis = cfg.axis;
  if (axis.empty()) axis = !cfg.b.empty() && cfg.a.empty() ? "a" : "b";
  if (axis != "a" && axis != "b") throw FlagError("--axis", "expected a (scan a given b) or b (scan b given a)");
  const std::string& fixed_flag = axis == "a" ? "--b" : "--a";
  const std::string& fixed_text = axis == "a" ? cfg.b : cfg.a;
  if (fixed_text.empty()) throw FlagError(fixed_flag, "required for this scan");
  const cplx fixed = parse_disk_point(fixed_flag, fixed_text);
  cplx omega = 1.0;
  if (!cfg.omega.empty()) omega = parse_complex("--omega", cfg.omega);

  const long n = cfg.grid;
  auto coord = [n](long i) { return -1.0 + (2.0 * i + 1.0) / static_cast<double>(n); };
  const auto rows = parallel_map(static_cast<std::size_t>(n), [&](std::size_t row) {
    std::string text;
    const double im = coord(static_cast<long>(row));
    for (long col = 0; col < n; ++col) {
      const cplx z(coord(col), im);
      long count = -1;
      if (std::abs(z) < 1.0) {
        const cplx a = axis == "a" ? z : fixed;
        const cplx b = axis == "a" ? fixed : z;
        count = lattice == Lattice::Line ? static_cast<long>(classify_line(a, b, omega).points.size())
                                         : static_cast<long>(halfline_roots(a, b).size());
      }
      text += num(z.real()) + "," + num(z.imag()) + "," + std::to_string(count) + "\n";
    }
    return text;
  });
  std::string out = axis == "a" ? "a_re,a_im,n_mass_points\n" : "b_re,b_im,n_mass_points\n";
  for (const std::string& r : rows) out += r;
  return out;
}

std::string cmd_curves(const RunConfig& cfg) {
  if (cfg.samples < 8) throw FlagError("--samples", "must be >= 8");
  std::string out = "curve,t,re,im\n";
  auto emit = [&](const std::string& name, double t, cplx z) {
    out += name + "," + num(t) + "," + num(z.real()) + "," + num(z.imag()) + "\n";
  };
  const int m = cfg.samples;
  for (const auto& [name, curve] : {std::pair{"epicycloid", epicycloid()}, std::pair{"epitrochoid", epitrochoid()}})
    for (int k = 0; k < m; ++k) emit(name, 2 * pi * k / m, curve.at(2 * pi * k / m));
  if (cfg.a.empty()) return out;
  const cplx a = parse_disk_point("--a", cfg.a);
  if (a == 0.0) throw FlagError("--a", "must be nonzero");
  const SigmaArc arc = sigma_arc(a);
  for (int k = 0; k <= m; ++k) {
    const double t = arc.t_lo + (arc.t_hi - arc.t_lo) * k / m;
    emit("sigma_arc", t, arc.at(t));
  }
  // Envelope samples stay strictly inside the arc; cusp parameters are skipped.
  for (int sign : {+1, -1})
    for (int k = 1; k < m; ++k) {
      const double t = arc.t_lo + (arc.t_hi - arc.t_lo) * k / m;
      try {
        emit(sign > 0 ? "envelope_plus" : "envelope_minus", t, envelope_point(a, t, sign));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CuspParameter) throw;
      }
    }
  const auto lines = limit_lines(a);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string name = "limit_line_" + std::to_string(k + 1);
    emit(name, 0.0, lines[k].from);
    emit(name, 1.0, lines[k].to);
  }
  return out;
}

std::string cmd_weight(const RunConfig& cfg) {
  const Setup s = make_setup(cfg, true);
  if (cfg.theta_grid < 8) throw FlagError("--theta-grid", "must be >= 8");
  const DefectParams& p = s.params;
  if (p.a == 0.0) throw Error(ErrorCode::ZeroA, "diagonal coin has no absolutely continuous weight");
  std::string out = s.lattice == Lattice::HalfLine ? "theta,w\n"
                                                   : "theta,w11_re,w11_im,w12_re,w12_im,w21_re,w21_im,w22_re,w22_im\n";
  for (int k = 0; k < cfg.theta_grid; ++k) {
    const double th = 2 * pi * k / cfg.theta_grid;
    out += num(th);
    if (s.lattice == Lattice::HalfLine) {
      out += "," + num(halfline_weight(p.a, p.b, th));
    } else {
      const Mat2c w = line_weight(p.a, p.b, p.omega, th);
      for (int e = 0; e < 4; ++e) out += "," + num(w(e / 2, e % 2).real()) + "," + num(w(e / 2, e % 2).imag());
    }
    out += "\n";
  }
  return out;
}

struct Check {
  std::string name;
  double residual;
  double tol;
};

std::string cmd_verify(const RunConfig& cfg, bool& all_passed) {
  const Setup s = make_setup(cfg, false);
  const WalkSpec& spec = require_spec(s);
  const DefectParams& p = s.params;
  std::vector<Check> checks;
  if (cfg.suite == "wiener") {
    const long n = cfg.steps.value_or(1000);
    if (n < 1 || n > max_steps) throw FlagError("--steps", "must be in [1, " + std::to_string(max_steps) + "]");
    double atoms = 0.0;
    if (s.lattice == Lattice::HalfLine)
      for (const auto& r : halfline_roots(p.a, p.b)) atoms += r.mu * r.mu;
    else
      for (const auto& r : classify_line(p.a, p.b, p.omega).points) atoms += r.m * r.m;
    const long entries = s.lattice == Lattice::HalfLine ? 1 : 2;
    for (long e = 0; e < entries; ++e) {
      const auto m = amplitude_series(spec, e, e, n);
      checks.push_back({"wiener(" + std::to_string(e) + "," + std::to_string(e) + ")",
                        std::abs(wiener_average(m, n) - atoms), 0.02});
    }
  } else if (cfg.suite == "kmcg") {
    const long n_max = cfg.steps.value_or(20);
    if (n_max < 0 || n_max > 1000) throw FlagError("--steps", "must be in [0, 1000]");
    for (long n = 0; n <= n_max; ++n) {
      const Eigen::MatrixXcd d = moment_by_quadrature(p, n, s.lattice) - simulated_moment(spec, n);
      checks.push_back({"moment n=" + std::to_string(n), d.cwiseAbs().maxCoeff(), moment_tol});
    }
  } else if (cfg.suite == "brute") {
    const long n_max = cfg.steps.value_or(40);
    if (n_max < 1) throw FlagError("--steps", "must be >= 1");
    for (long n = 1; n <= n_max; n += std::max(1L, n_max / 8))
      checks.push_back({"return n=" + std::to_string(n),
                        std::abs(brute_force_return(spec, cfg.site, s.qubit, n) -
                                 return_probability(spec, cfg.site, s.qubit, n)),
                        1e-10});
  } else {
    throw FlagError("--suite", "expected wiener, kmcg or brute");
  }
  std::string out = "check,residual,tol,status\n";
  all_passed = true;
  for (const Check& c : checks) {
    const bool ok = c.residual <= c.tol;
    all_passed = all_passed && ok;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e,%.0e,", c.residual, c.tol);
    out += c.name + "," + buf + (ok ? "PASS" : "FAIL") + "\n";
  }
  return out;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw FlagError("--output", "cannot write " + cfg.output);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-defect quantum walks: simulation, spectral classification and return probabilities"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_walk = [&](CLI::App* sub, bool reduced) {
    sub->add_option("--lattice", cfg.lattice, "line or halfline")->capture_default_str();
    sub->add_option("--coin", cfg.coin, "bulk coin: hadamard, identity, konno:PHI or c11_re,c11_im,...,c22_im")
        ->capture_default_str();
    sub->add_option("--defect", cfg.defect, "coin at the origin, same syntax as --coin")->capture_default_str();
    sub->add_option("--qubit", cfg.qubit, "initial spin state re,im,re,im")->capture_default_str();
    sub->add_option("--config", cfg.config, "JSON file with lattice/coin/defect/qubit/steps/site fields");
    if (reduced) {
      sub->add_option("--a", cfg.a, "reduced parameter a as re,im (overrides coins; qubit is then rotated-frame)");
      sub->add_option("--b", cfg.b, "reduced parameter b as re,im (default: a)");
      sub->add_option("--omega", cfg.omega, "unimodular phase omega as re,im (line only)");
    }
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", cfg.output, "write to file instead of stdout");
  };

  auto* simulate = app.add_subcommand("simulate", "return probability series as CSV n,p");
  add_walk(simulate, false);
  simulate->add_option("--steps", cfg.steps, "number of steps (default 100)");
  simulate->add_option("--site", cfg.site, "starting and observed site")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "mass points and limit return probability as JSON");
  add_walk(classify, true);
  classify->add_option("--site", cfg.site, "must be 0");

  auto* masses = app.add_subcommand("masses", "mass points as CSV");
  add_walk(masses, true);

  auto* ret = app.add_subcommand("return-prob", "limit of the return probability at the origin");
  add_walk(ret, true);
  ret->add_option("--site", cfg.site, "must be 0");
  ret->add_option("--mode", cfg.mode, "halfline: cesaro or sequence")->capture_default_str();
  ret->add_option("--steps", cfg.steps, "time n for --mode sequence");
  ret->add_option("--format", cfg.format, "plain (default) or json");

  auto* region = app.add_subcommand("region", "mass point counts over a grid as CSV");
  region->add_option("--lattice", cfg.lattice, "line or halfline")->capture_default_str();
  region->add_option("--axis", cfg.axis, "a: scan a given --b; b: scan b given --a");
  region->add_option("--a", cfg.a, "fixed a as re,im");
  region->add_option("--b", cfg.b, "fixed b as re,im");
  region->add_option("--omega", cfg.omega, "phase omega as re,im");
  region->add_option("--grid", cfg.grid, "points per axis (>= 8)")->capture_default_str();

  auto* curves = app.add_subcommand("curves", "epicycloid, epitrochoid and, with --a, envelopes and limit lines");
  curves->add_option("--a", cfg.a, "parameter a as re,im");
  curves->add_option("--samples", cfg.samples, "samples per curve")->capture_default_str();

  auto* weight = app.add_subcommand("weight", "absolutely continuous weight on a theta grid as CSV");
  add_walk(weight, true);
  weight->add_option("--theta-grid", cfg.theta_grid, "number of angles")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "cross-check simulation against the analytic side");
  add_walk(verify, false);
  verify->add_option("--suite", cfg.suite, "wiener, kmcg or brute")->capture_default_str();
  verify->add_option("--steps", cfg.steps, "horizon (defaults: wiener 1000, kmcg 20, brute 40)");
  verify->add_option("--site", cfg.site, "site for the brute suite")->capture_default_str();

  for (CLI::App* sub : {simulate, classify, masses, ret, region, curves, weight, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  try {
    if (!cfg.config.empty()) apply_config(cfg, *sub);
    bool passed = true;
    std::string text;
    if (cfg.command == "simulate") text = cmd_simulate(cfg);
    else if (cfg.command == "classify") text = cmd_classify(cfg);
    else if (cfg.command == "masses") text = cmd_masses(cfg);
    else if (cfg.command == "return-prob") text = cmd_return_prob(cfg);
    else if (cfg.command == "region") text = cmd_region(cfg);
    else if (cfg.command == "curves") text = cmd_curves(cfg);
    else if (cfg.command == "weight") text = cmd_weight(cfg);
    else text = cmd_verify(cfg, passed);
    write_output(cfg, text);
    return passed ? 0 : 1;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_validation() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
