#include "airylab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "airylab/exponents.hpp"
#include "airylab/resonance.hpp"

namespace airylab {

namespace {

// Reads the keys of one JSON object and rejects whatever is left over.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw ConfigError(where_ + ": expected an object");
  }
  ~Reader() = default;

  bool has(const std::string& k) const { return j_.contains(k); }

  template <class T>
  void get(const std::string& k, T& out) {
    if (!j_.contains(k)) return;
    seen_.insert(k);
    try {
      out = j_.at(k).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where_ + "." + k + ": " + e.what());
    }
  }

  // Number or the strings "inf" / "-inf".
  void number(const std::string& k, double& out) {
    if (!j_.contains(k)) return;
    seen_.insert(k);
    const json& v = j_.at(k);
    if (v.is_number()) {
      out = v.get<double>();
    } else if (v == "inf") {
      out = kInf;
    } else if (v == "-inf") {
      out = -kInf;
    } else {
      throw ConfigError(where_ + "." + k + ": expected a number");
    }
  }

  const json& sub(const std::string& k) {
    seen_.insert(k);
    return j_.at(k);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json num(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

void read_spec(Reader& rd, EstimateSpec& s) {
  for (auto [k, p] : std::initializer_list<std::pair<const char*, double*>>{
           {"r", &s.r},   {"s", &s.s},   {"b", &s.b},     {"b2", &s.b2},     {"p", &s.p},   {"q", &s.q},
           {"r1", &s.r1}, {"r2", &s.r2}, {"rho", &s.rho}, {"beta", &s.beta}, {"s0", &s.s0}, {"s1", &s.s1},
           {"s2", &s.s2}, {"p0", &s.p0}, {"p1", &s.p1},   {"eps", &s.eps}})
    rd.number(k, *p);
  rd.number("region_ratio", s.region.ratio);
  rd.number("region_separation", s.region.separation);
}

json spec_json(const EstimateSpec& s) {
  return json{{"id", estimate_name(s.id)}, {"r", num(s.r)},     {"s", num(s.s)},     {"b", num(s.b)},
              {"b2", num(s.b2)},           {"p", num(s.p)},     {"q", num(s.q)},     {"r1", num(s.r1)},
              {"r2", num(s.r2)},           {"rho", num(s.rho)}, {"beta", num(s.beta)}, {"s0", num(s.s0)},
              {"s1", num(s.s1)},           {"s2", num(s.s2)},   {"p0", num(s.p0)},   {"p1", num(s.p1)},
              {"eps", num(s.eps)},         {"region_ratio", num(s.region.ratio)},
              {"region_separation", num(s.region.separation)}};
}

void read_family(Reader& rd, FamilySpec& f) {
  std::string kind = family_name(f.kind);
  rd.get("kind", kind);
  try {
    f.kind = family_from_name(kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  rd.number("center", f.center);
  rd.number("width", f.width);
  rd.number("separation", f.separation);
  rd.get("count", f.count);
  rd.get("avoid_origin", f.avoid_origin);
}

json family_json(const FamilySpec& f) {
  return json{{"kind", family_name(f.kind)}, {"center", f.center},   {"width", f.width},
              {"separation", f.separation},  {"count", f.count},     {"avoid_origin", f.avoid_origin}};
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> k{"exponents", "lifespan", "norm-suite", "probe", "resonant-integral", "solve"};
  return k;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  Reader top(j, "config");
  top.get("experiment", c.experiment);
  if (std::find(experiment_kinds().begin(), experiment_kinds().end(), c.experiment) == experiment_kinds().end())
    throw ConfigError("config.experiment: unknown experiment '" + c.experiment + "'");
  top.get("seed", c.seed);
  top.get("output", c.output);
  top.number("t_final", c.t_final);
  top.get("mirrored", c.mirrored);
  if (top.has("grid")) {
    Reader rd(top.sub("grid"), "grid");
    rd.get("n", c.grid.n);
    rd.number("length", c.grid.length);
    rd.finish();
  }
  if (top.has("data")) {
    Reader rd(top.sub("data"), "data");
    rd.get("kind", c.data.kind);
    if (c.data.kind != "gaussian" && c.data.kind != "soliton" && c.data.kind != "zero")
      throw ConfigError("data.kind: unknown kind '" + c.data.kind + "'");
    rd.number("amplitude", c.data.amplitude);
    rd.number("width", c.data.width);
    rd.number("center", c.data.center);
    rd.number("norm", c.data.norm);
    rd.number("speed", c.data.speed);
    rd.finish();
  }
  if (top.has("solver")) {
    Reader rd(top.sub("solver"), "solver");
    auto& s = c.solver;
    rd.number("r", s.params.r);
    rd.number("s", s.params.s);
    rd.number("b", s.params.b);
    rd.number("delta", s.delta);
    rd.get("max_iter", s.max_iter);
    rd.number("tol", s.tol);
    rd.get("sign", s.sign);
    rd.get("panels", s.panels);
    rd.get("max_panels", s.max_panels);
    rd.get("burn_in", s.burn_in);
    rd.number("x_window", s.x_window);
    rd.get("x_samples", s.x_samples);
    rd.finish();
  }
  c.probe.estimates.push_back({default_spec(EstimateId::lemma1), default_family(EstimateId::lemma1)});
  for (const auto& g : default_refinements()) c.probe.refinements.emplace_back(g.size(), g.length());
  if (top.has("probe")) {
    Reader rd(top.sub("probe"), "probe");
    if (rd.has("estimates")) {
      const json& list = rd.sub("estimates");
      if (!list.is_array() || list.empty()) throw ConfigError("probe.estimates: expected a non-empty array");
      c.probe.estimates.clear();
      for (const json& e : list) {
        Reader er(e, "probe.estimates[]");
        std::string id;
        er.get("id", id);
        ProbeEntry entry;
        try {
          entry.spec = default_spec(estimate_from_name(id));
        } catch (const std::invalid_argument& ex) {
          throw ConfigError(ex.what());
        }
        entry.family = default_family(entry.spec.id);
        read_spec(er, entry.spec);
        if (er.has("family")) {
          Reader fr(er.sub("family"), "probe.estimates[].family");
          read_family(fr, entry.family);
          fr.finish();
        }
        er.finish();
        c.probe.estimates.push_back(entry);
      }
    }
    if (rd.has("refinements")) {
      const json& list = rd.sub("refinements");
      if (!list.is_array() || list.empty()) throw ConfigError("probe.refinements: expected a non-empty array");
      c.probe.refinements.clear();
      for (const json& e : list) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number())
          throw ConfigError("probe.refinements: entries are [n, length]");
        c.probe.refinements.emplace_back(e[0].get<std::size_t>(), e[1].get<double>());
      }
    }
    if (rd.has("options")) {
      Reader orr(rd.sub("options"), "probe.options");
      auto& o = c.probe.options;
      orr.number("density_bin", o.density_bin);
      orr.number("envelope_tau_width", o.envelope_tau_width);
      orr.number("fs_time_per_length", o.fs_time_per_length);
      orr.number("degenerate_rhs", o.degenerate_rhs);
      orr.number("pass_growth", o.pass_growth);
      orr.finish();
    }
    rd.finish();
  }
  if (top.has("resonant")) {
    Reader rd(top.sub("resonant"), "resonant");
    auto& r = c.resonant;
    rd.get("xi", r.xi);
    rd.number("eps", r.eps);
    rd.get("scan_points", r.scan_points);
    rd.number("rel_tol", r.rel_tol);
    rd.number("slope_max", r.slope_max);
    rd.get("sigma_samples", r.sigma_samples);
    rd.finish();
  }
  if (top.has("lifespan")) {
    Reader rd(top.sub("lifespan"), "lifespan");
    rd.get("lambdas", c.lifespan.lambdas);
    rd.number("resolution", c.lifespan.resolution);
    rd.number("slope_tolerance", c.lifespan.slope_tolerance);
    rd.finish();
  }
  if (top.has("exponents")) {
    Reader rd(top.sub("exponents"), "exponents");
    rd.get("r", c.exponents.r);
    rd.finish();
  }
  if (top.has("norm_suite")) {
    Reader rd(top.sub("norm_suite"), "norm_suite");
    rd.get("samples", c.norm_suite.samples);
    rd.finish();
  }
  top.finish();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json est = json::array();
  for (const auto& e : c.probe.estimates) {
    json s = spec_json(e.spec);
    s["family"] = family_json(e.family);
    est.push_back(s);
  }
  json refs = json::array();
  for (const auto& [n, l] : c.probe.refinements) refs.push_back(json::array({n, l}));
  const auto& s = c.solver;
  const auto& o = c.probe.options;
  return json{
      {"experiment", c.experiment},
      {"seed", c.seed},
      {"output", c.output},
      {"t_final", c.t_final},
      {"mirrored", c.mirrored},
      {"grid", {{"n", c.grid.n}, {"length", c.grid.length}}},
      {"data",
       {{"kind", c.data.kind},
        {"amplitude", c.data.amplitude},
        {"width", c.data.width},
        {"center", c.data.center},
        {"norm", c.data.norm},
        {"speed", c.data.speed}}},
      {"solver",
       {{"r", s.params.r},
        {"s", s.params.s},
        {"b", s.params.b},
        {"delta", s.delta},
        {"max_iter", s.max_iter},
        {"tol", s.tol},
        {"sign", s.sign},
        {"panels", s.panels},
        {"max_panels", s.max_panels},
        {"burn_in", s.burn_in},
        {"x_window", s.x_window},
        {"x_samples", s.x_samples}}},
      {"probe",
       {{"estimates", est},
        {"refinements", refs},
        {"options",
         {{"density_bin", o.density_bin},
          {"envelope_tau_width", o.envelope_tau_width},
          {"fs_time_per_length", o.fs_time_per_length},
          {"degenerate_rhs", o.degenerate_rhs},
          {"pass_growth", o.pass_growth}}}}},
      {"resonant",
       {{"xi", c.resonant.xi},
        {"eps", c.resonant.eps},
        {"scan_points", c.resonant.scan_points},
        {"rel_tol", c.resonant.rel_tol},
        {"slope_max", c.resonant.slope_max},
        {"sigma_samples", c.resonant.sigma_samples}}},
      {"lifespan",
       {{"lambdas", c.lifespan.lambdas},
        {"resolution", c.lifespan.resolution},
        {"slope_tolerance", c.lifespan.slope_tolerance}}},
      {"exponents", {{"r", c.exponents.r}}},
      {"norm_suite", {{"samples", c.norm_suite.samples}}}};
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override: empty path component in " + key);
    if (!node->is_object()) throw ConfigError("override: " + key + " does not name an object member");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char ch : f) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string Report::csv() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

SpectralField make_data(const DataConfig& d, const Grid& g, double r, double s) {
  SpectralField f = SpectralField::zeros(g, Side::physical);
  if (d.kind == "gaussian") {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double z = (g.x(j) - d.center) / d.width;
      f.values[j] = d.amplitude * std::exp(-0.5 * z * z);
    }
  } else if (d.kind == "soliton") {
    return soliton(g, d.speed, d.center);
  } else if (d.kind != "zero") {
    throw ConfigError("unknown data kind: " + d.kind);
  }
  f = to_frequency(f);
  if (d.norm > 0.0 && d.kind != "zero") {
    const double n = fl_norm(f, FLParams(r, s));
    for (cd& v : f.values) v *= d.norm / n;
  }
  return f;
}

namespace {

std::string fmt(double v) { return format_number(v); }

// Solver parameters outside the well-posedness range are a hypothesis
// rejection, same as an estimate spec outside its lemma.
void gate_solver(const SolverConfig& c) {
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw HypothesisError(e.what(), {e.what()});
  }
}
std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

Report run_probe(const ExperimentConfig& cfg) {
  Report rep;
  rep.header = {"estimate_id", "r", "s", "b", "grid_n", "max_ratio", "growth", "verdict"};
  std::vector<Grid> grids;
  for (const auto& [n, l] : cfg.probe.refinements) grids.emplace_back(n, l);
  json list = json::array();
  for (const auto& e : cfg.probe.estimates) {
    FamilySpec fam = e.family;
    fam.seed = cfg.seed;
    const EstimateReport er = probe(e.spec, fam, grids, cfg.probe.options);
    rep.all_pass = rep.all_pass && er.pass;
    json refs = json::array();
    for (std::size_t k = 0; k < er.refinements.size(); ++k) {
      const auto& rr = er.refinements[k];
      rep.rows.push_back({estimate_name(e.spec.id), fmt(e.spec.r), fmt(e.spec.s), fmt(e.spec.b), std::to_string(rr.n),
                          fmt(rr.max_ratio), k == 0 ? "" : fmt(er.growth[k - 1]), er.verdict});
      json samples = json::array();
      for (const auto& s : rr.samples)
        samples.push_back({{"member", s.member}, {"lhs", num(s.lhs)}, {"rhs", num(s.rhs)}, {"ratio", num(s.ratio)}});
      refs.push_back({{"grid", rr.fingerprint},
                      {"n", rr.n},
                      {"length", rr.length},
                      {"max_ratio", num(rr.max_ratio)},
                      {"kept", rr.kept},
                      {"dropped", rr.dropped},
                      {"samples", samples}});
    }
    json growth = json::array();
    for (double g : er.growth) growth.push_back(num(g));
    json spec = spec_json(e.spec);
    list.push_back({{"spec", spec},
                    {"family", family_json(fam)},
                    {"refinements", refs},
                    {"growth", growth},
                    {"total_growth", num(er.total_growth)},
                    {"verdict", er.verdict}});
  }
  rep.detail["estimates"] = list;
  return rep;
}

Report run_norm_suite(const ExperimentConfig& cfg) {
  Report rep;
  rep.header = {"check", "value", "reference", "abs_error", "tolerance", "verdict"};
  const Grid g(cfg.grid.n, cfg.grid.length);
  const SpectralField u = make_data(cfg.data, g, 2.0, 0.0);
  auto add = [&](const std::string& name, double value, double ref, double tol, bool relative = false) {
    const double err = std::abs(value - ref) / (relative && ref != 0.0 ? std::abs(ref) : 1.0);
    const bool ok = err <= tol;
    rep.all_pass = rep.all_pass && ok;
    rep.rows.push_back({name, fmt(value), fmt(ref), fmt(err), fmt(tol), verdict(ok)});
  };
  {
    const SpectralField back = to_frequency(to_physical(u));
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      worst = std::max(worst, std::abs(back.values[i] - u.values[i]));
      scale = std::max(scale, std::abs(u.values[i]));
    }
    add("round_trip_rel", scale > 0.0 ? worst / scale : 0.0, 0.0, 1e-12);
  }
  {
    const SpectralField p = to_physical(u);
    double acc = 0.0;
    for (const cd& z : p.values) acc += std::norm(z) * g.dx();
    add("plancherel_l2", fl_norm(u, FLParams(2.0, 0.0)), std::sqrt(acc), 1e-8, true);
  }
  if (cfg.data.kind == "gaussian" && cfg.data.norm == 0.0) {
    const double w = cfg.data.width, a = cfg.data.amplitude, sp = std::sqrt(kPi);
    add("sobolev_h1_closed_form", fl_norm(u, FLParams(2.0, 1.0)), a * std::sqrt(w * sp + sp / (2.0 * w)), 1e-8, true);
  }
  {
    DataConfig unit;
    const SpectralField e = make_data(unit, g, 2.0, 0.0);
    add("gaussian_closed_form", fl_norm(e, FLParams(2.0, 0.0)), std::pow(kPi, 0.25), 1e-6);
  }
  {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ur(1.05, 3.0), us(-1.0, 2.0), ut(-5.0, 5.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < cfg.norm_suite.samples; ++k) {
      const double r = ur(rng), s = us(rng), t = ut(rng);
      const double a = fl_norm(u, FLParams(r, s)), b = fl_norm(airy_propagate(u, t), FLParams(r, s));
      worst = std::max(worst, a > 0.0 ? std::abs(a - b) / a : std::abs(b));
    }
    add("unitarity_rel", worst, 0.0, 1e-12);
    const double t1 = ut(rng), t2 = ut(rng);
    const SpectralField x = airy_propagate(airy_propagate(u, t1), t2), y = airy_propagate(u, t1 + t2);
    double d = 0.0, sc = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
      d = std::max(d, std::abs(x.values[i] - y.values[i]));
      sc = std::max(sc, std::abs(u.values[i]));
    }
    add("group_law_rel", sc > 0.0 ? d / sc : 0.0, 0.0, 1e-12);
  }
  rep.detail["grid"] = g.fingerprint();
  return rep;
}

Report run_exponents(const ExperimentConfig& cfg) {
  Report rep;
  rep.header = {"quantity", "r", "value", "reference", "abs_error", "verdict"};
  auto add = [&](const std::string& q, double r, double v, double ref, double tol) {
    const double err = std::abs(v - ref);
    const bool ok = err <= tol;
    rep.all_pass = rep.all_pass && ok;
    rep.rows.push_back({q, std::isnan(r) ? "" : fmt(r), fmt(v), fmt(ref), fmt(err), verdict(ok)});
  };
  const double none = std::nan("");
  add("sr_threshold", 2.0, sr_threshold(2.0), 0.25, 1e-15);
  add("scaling_sigma_s0_r1", 1.0, scaling_sigma(0.0, 1.0), -0.5, 1e-15);
  add("lifespan_exponent", 2.0, lifespan_exponent(2.0), -4.0, 1e-15);
  add("lifespan_exponent", 1.5, lifespan_exponent(1.5), -6.0, 1e-12);
  json bundles = json::array();
  for (double r : cfg.exponents.r) {
    const T2cBundle b = t2c_exponents(r);
    add("t2c_identity", r, b.s0 + 2.0 * b.s1, 1.0 / r, 1e-12);
    const auto recheck = t2c_recheck(b);
    add("t2c_recheck_violations", r, static_cast<double>(b.direct ? 0 : recheck.size()), 0.0, 0.0);
    if (!b.direct) {
      const Lemma3Check l3 = validate_lemma3_params(b.p, b.p0, b.p1, 1e-9);
      add("lemma3_accepts_bundle", r, l3.accepted ? 1.0 : 0.0, 1.0, 0.0);
    }
    json jb{{"r", r},   {"s0", b.s0}, {"s1", b.s1}, {"theta", b.theta}, {"q0", b.q0},
            {"q1", b.q1}, {"p", b.p}, {"p0", b.p0}, {"p1", b.p1},       {"direct", b.direct},
            {"min_slack", b.min_slack}, {"violations", b.violations}};
    bundles.push_back(jb);
  }
  const T2cBundle d = t2c_direct(2.0);
  add("t2c_direct_s0", 2.0, d.s0, 1.0 / 6.0, 1e-15);
  add("t2c_direct_s1", 2.0, d.s1, 1.0 / 6.0, 1e-15);
  add("t2c_direct_identity", 2.0, d.s0 + 2.0 * d.s1, 0.5, 1e-12);
  (void)none;
  rep.detail["t2c"] = bundles;
  return rep;
}

Report run_resonant(const ExperimentConfig& cfg) {
  Report rep;
  rep.header = {"xi", "eps", "tau_at_sup", "sup_value", "flagged", "fitted_slope", "verdict"};
  const auto& rc = cfg.resonant;
  std::vector<double> xs, vs, taus;
  std::vector<bool> flags;
  for (double xi : rc.xi) {
    const ResonantSup sup = resonant_sup(xi, rc.eps, rc.scan_points);
    const ResonantIntegral at = resonant_integral(xi, sup.tau, rc.eps, rc.rel_tol);
    xs.push_back(std::abs(xi));
    vs.push_back(sup.value);
    taus.push_back(sup.tau);
    flags.push_back(at.flagged);
  }
  const double slope = xs.size() >= 2 ? fit_loglog(xs, vs).slope : std::nan("");
  const bool ok = slope <= rc.slope_max;
  rep.all_pass = ok;
  for (std::size_t k = 0; k < xs.size(); ++k)
    rep.rows.push_back({fmt(rc.xi[k]), fmt(rc.eps), fmt(taus[k]), fmt(vs[k]), flags[k] ? "1" : "0", fmt(slope), verdict(ok)});
  json sg = json::array();
  for (std::size_t mult : {1, 2}) {
    const SigmaGainSweep s = sigma_gain_sweep(rc.sigma_samples * mult, cfg.seed, rc.eps);
    sg.push_back({{"samples", rc.sigma_samples * mult},
                  {"max_factor", s.max_factor},
                  {"accepted", s.accepted},
                  {"rejected", s.rejected},
                  {"all_sigma_zero", s.all_sigma_zero}});
  }
  rep.detail["slope"] = num(slope);
  rep.detail["slope_max"] = rc.slope_max;
  rep.detail["sigma_gain"] = sg;
  return rep;
}

Report run_solve(const ExperimentConfig& cfg) {
  Report rep;
  rep.header = {"data",      "sign",       "delta",           "t_final",   "steps",    "panels",
                "iterations", "verdict",   "residual",        "max_contraction", "final_difference", "mass_drift",
                "l2_drift",  "reference_error", "grid",        "seed"};
  gate_solver(cfg.solver);
  const Grid g(cfg.grid.n, cfg.grid.length);
  const auto& p = cfg.solver.params;
  const SpectralField u0 = make_data(cfg.data, g, p.r, p.s);
  std::vector<int> signs{cfg.solver.sign};
  if (cfg.mirrored) signs.push_back(-cfg.solver.sign);
  const double t_final = cfg.t_final > 0.0 ? cfg.t_final : cfg.solver.delta;
  json runs = json::array();
  for (int sg : signs) {
    SolverConfig sc = cfg.solver;
    sc.sign = sg;
    const Evolution ev = evolve(u0, sc, t_final, {t_final});
    int iterations = 0, panels = 0;
    double residual = 0.0, max_factor = 0.0, final_diff = 0.0, mass = 0.0, l2d = 0.0;
    json hist = json::array();
    for (const auto& st : ev.steps) {
      iterations += st.iterations;
      panels = std::max(panels, st.panels);
      residual = std::max(residual, st.residual);
      for (std::size_t k = static_cast<std::size_t>(std::max(sc.burn_in, 0)); k < st.contraction_factors.size(); ++k)
        max_factor = std::max(max_factor, st.contraction_factors[k]);
      final_diff = st.differences.empty() ? 0.0 : st.differences.back();
      const auto cons = conservation_check(st);
      mass = std::max(mass, cons.mass_drift);
      l2d = std::max(l2d, cons.l2_drift);
      json f = json::array(), d = json::array();
      for (double x : st.contraction_factors) f.push_back(num(x));
      for (double x : st.differences) d.push_back(num(x));
      hist.push_back({{"verdict", verdict_name(st.verdict)},
                      {"iterations", st.iterations},
                      {"panels", st.panels},
                      {"delta", st.delta},
                      {"residual", num(st.residual)},
                      {"differences", d},
                      {"contraction_factors", f},
                      {"diagnostics", st.diagnostics}});
    }
    std::string ref_err;
    if (cfg.data.kind == "soliton" && sg == 1) {
      const SpectralField exact = soliton(g, cfg.data.speed, cfg.data.center + cfg.data.speed * t_final);
      double e = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) e += std::norm(exact.values[i] - ev.states[0].values[i]);
      ref_err = fmt(std::sqrt(e * g.dxi() / kTwoPi));
    }
    const bool ok = ev.converged;
    rep.all_pass = rep.all_pass && ok;
    rep.rows.push_back({cfg.data.kind, std::to_string(sg), fmt(sc.delta), fmt(t_final), std::to_string(ev.steps.size()),
                        std::to_string(panels), std::to_string(iterations), ok ? "converged" : "not_converged",
                        fmt(residual), fmt(max_factor), fmt(final_diff), fmt(mass), fmt(l2d), ref_err, g.fingerprint(),
                        std::to_string(cfg.seed)});
    runs.push_back({{"sign", sg}, {"steps", hist}, {"reference_error", ref_err}});
  }
  rep.detail["runs"] = runs;
  return rep;
}

Report run_lifespan(const ExperimentConfig& cfg) {
  Report rep;
  rep.header = {"lambda", "norm", "delta_star", "solves", "fitted_slope", "predicted_slope", "verdict"};
  gate_solver(cfg.solver);
  const Grid g(cfg.grid.n, cfg.grid.length);
  const auto& p = cfg.solver.params;
  const SpectralField u0 = make_data(cfg.data, g, p.r, p.s);
  const LifespanResult res = lifespan_experiment(u0, cfg.lifespan.lambdas, cfg.solver, cfg.lifespan.resolution);
  const bool ok = res.monotone && std::abs(res.slope - res.predicted) <= cfg.lifespan.slope_tolerance * std::abs(res.predicted);
  rep.all_pass = ok;
  json pts = json::array();
  for (const auto& pt : res.points) {
    rep.rows.push_back({fmt(pt.lambda), fmt(pt.norm), fmt(pt.delta_star), std::to_string(pt.solves), fmt(res.slope),
                        fmt(res.predicted), verdict(ok)});
    pts.push_back({{"lambda", pt.lambda}, {"norm", pt.norm}, {"delta_star", pt.delta_star}, {"solves", pt.solves}});
  }
  rep.detail["points"] = pts;
  rep.detail["slope"] = res.slope;
  rep.detail["predicted"] = res.predicted;
  rep.detail["monotone"] = res.monotone;
  return rep;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  Report rep;
  if (cfg.experiment == "probe") rep = run_probe(cfg);
  else if (cfg.experiment == "norm-suite") rep = run_norm_suite(cfg);
  else if (cfg.experiment == "exponents") rep = run_exponents(cfg);
  else if (cfg.experiment == "resonant-integral") rep = run_resonant(cfg);
  else if (cfg.experiment == "solve") rep = run_solve(cfg);
  else if (cfg.experiment == "lifespan") rep = run_lifespan(cfg);
  else throw ConfigError("unknown experiment: " + cfg.experiment);
  rep.experiment = cfg.experiment;
  rep.exit_code = rep.all_pass ? exit_ok : exit_numerical;
  rep.detail["experiment"] = cfg.experiment;
  rep.detail["seed"] = cfg.seed;
  rep.detail["config"] = config_to_json(cfg);
  rep.detail["all_pass"] = rep.all_pass;
  return rep;
}

int run_to_directory(const ExperimentConfig& cfg, std::string* message) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    if (message) *message = "cannot create output directory: " + ec.message();
    return exit_numerical;
  }
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    out << text;
  };
  try {
    const Report rep = run_experiment(cfg);
    write(cfg.experiment + ".csv", rep.csv());
    write(cfg.experiment + ".json", rep.detail.dump(2) + "\n");
    if (message) *message = rep.all_pass ? "all verdicts pass" : "some verdicts failed";
    return rep.exit_code;
  } catch (const HypothesisError& e) {
    if (message) *message = e.what();
    return exit_hypothesis;
  } catch (const ConfigError& e) {
    if (message) *message = e.what();
    return exit_parse;
  } catch (const std::exception& e) {
    json err{{"experiment", cfg.experiment}, {"error", e.what()}, {"config", config_to_json(cfg)}};
    write(cfg.experiment + ".json", err.dump(2) + "\n");
    if (message) *message = std::string("numerical failure: ") + e.what();
    return exit_numerical;
  }
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  auto spec_defaults = [](EstimateId id) {
    const EstimateSpec s = default_spec(id);
    std::ostringstream os;
    const json j = spec_json(s);
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "id") os << it.key() << "=" << (it->is_string() ? it->get<std::string>() : format_number(it->get<double>())) << " ";
    os << "family=" << family_name(default_family(id).kind);
    return os.str();
  };
  const std::vector<std::pair<EstimateId, std::string>> anchors{
      {EstimateId::lemma1, "bilinear Airy estimate: I^{1/p}_- product into L^{q'}_xi L^{p'}_tau"},
      {EstimateId::cor_b1, "bilinear estimate in restriction norms, b_i > 1/r_i"},
      {EstimateId::cor_b2_204, "operator form with I_+ and negative b, feeding the trilinear bound"},
      {EstimateId::fs20, "Airy Fefferman-Stein estimate into L^{3r}_{xt}, valid only for r > 4/3"},
      {EstimateId::lemma2, "trilinear operator on |xi_1|, |xi_2| >> |xi_3|"},
      {EstimateId::cor_t1c, "restriction-norm form of the |xi_1|, |xi_2| >> |xi_3| trilinear bound"},
      {EstimateId::lemma3, "trilinear operator on |xi_2 - xi_3| >= |xi_2 + xi_3|, Hardy-Littlewood-Sobolev route"},
      {EstimateId::cor_t2c, "restriction-norm form with derivative split s_0 + 2 s_1 = 1/r"},
      {EstimateId::lemma4, "trilinear operator on 1 <= |xi_2 - xi_3| <= |xi_2 + xi_3|, dyadic route"},
      {EstimateId::cor_t3c, "restriction-norm form of the dyadic trilinear bound, beta > 1/rho"},
      {EstimateId::theorem2, "trilinear estimate for d_x(u_1 u_2 u_3) with b' < 0"},
  };
  for (const auto& [id, a] : anchors) out.push_back({estimate_name(id), a, spec_defaults(id)});
  out.push_back({"exponents", "well-posedness threshold s(r), scaling index, lifespan exponent, derivative split search",
                 "r=[1.2, 1.5, 2]"});
  out.push_back({"lifespan", "lifespan lower bound delta ~ ||u0||^{-2r/(r-1)}",
                 "r=2 s=0.25 b=0.6 lambdas=[1..32] resolution=0.05"});
  out.push_back({"norm-suite", "FL^r_s and X^r_{s,b} norm definitions, Airy group unitarity",
                 "gaussian data, samples=20"});
  out.push_back({"resonant-integral", "resonant case: sup over tau of the integral over A', bound (ln|xi|)^2/|xi|",
                 "xi=[8, 16, 32, 64] eps=0.1"});
  out.push_back({"solve", "local existence: fixed point of the Duhamel map in X^r_{s,b}(delta)",
                 "r=2 s=0.25 b=0.6 delta=0.05 tol=1e-10"});
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.id < b.id; });
  return out;
}

std::string catalog_text() {
  std::ostringstream os;
  for (const auto& e : catalog()) os << e.id << "\n  anchor:   " << e.anchor << "\n  defaults: " << e.defaults << "\n";
  return os.str();
}

}  // namespace airylab
