#include "twocolor/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "twocolor/error.hpp"
#include "twocolor/field.hpp"

namespace twocolor {

namespace {

using nlohmann::json;

constexpr std::string_view kAvgPrefix = "avg:";

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_number(const std::string& s, std::string_view what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidInput("cannot parse " + std::string(what) + ": '" + s + "'");
  }
  if (pos != s.size()) throw InvalidInput("cannot parse " + std::string(what) + ": '" + s + "'");
  return v;
}

double angle_value(const json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle(j.get<std::string>());
  throw InvalidInput(key + ": expected a number or an angle string");
}

double number_value(const json& j, const std::string& key) {
  if (!j.is_number()) throw InvalidInput(key + ": expected a number");
  return j.get<double>();
}

int int_value(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw InvalidInput(key + ": expected an integer");
  return j.get<int>();
}

std::vector<double> grid_value(const json& j, const std::string& key, bool angles) {
  auto scalar = [&](const json& v) { return angles ? angle_value(v, key) : number_value(v, key); };
  if (j.is_array()) {
    std::vector<double> out;
    for (const json& v : j) out.push_back(scalar(v));
    return out;
  }
  if (j.is_object()) {
    static const std::set<std::string> known{"start", "stop", "count", "endpoint"};
    for (const auto& [k, v] : j.items()) {
      if (!known.count(k)) throw InvalidInput(key + ": unknown grid key '" + k + "'");
    }
    if (!j.contains("start") || !j.contains("stop") || !j.contains("count")) {
      throw InvalidInput(key + ": grid objects need start, stop and count");
    }
    const double a = scalar(j["start"]);
    const double b = scalar(j["stop"]);
    const int n = int_value(j["count"], key + ".count");
    const bool endpoint = j.value("endpoint", true);
    if (n < 1) throw InvalidInput(key + ": count must be positive");
    std::vector<double> out(n);
    const int div = endpoint ? std::max(n - 1, 1) : n;
    for (int i = 0; i < n; ++i) out[i] = (n == 1) ? a : a + (b - a) * i / div;
    return out;
  }
  return {scalar(j)};
}

void check_keys(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw InvalidInput(where + ": expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!known.count(k)) throw InvalidInput("unknown key '" + k + "' in " + where);
  }
}

}  // namespace

FlagsLabel parse_flags_label(const std::string& label) {
  FlagsLabel out;
  std::string body = trim(label);
  if (body.rfind(kAvgPrefix, 0) == 0) {
    out.time_averaged = true;
    body = body.substr(kAvgPrefix.size());
  }
  out.flags = parse_flags(body);
  return out;
}

std::string to_label(const FlagsLabel& label) {
  return (label.time_averaged ? std::string(kAvgPrefix) : std::string()) + to_string(label.flags);
}

double parse_angle(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw InvalidInput("empty angle");
  const std::size_t p = s.find("pi");
  if (p == std::string::npos) return parse_number(s, "angle");

  std::string coef = s.substr(0, p);
  std::string rest = s.substr(p + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-") factor = -1.0;
  else if (coef == "+" || coef.empty()) factor = 1.0;
  else factor = parse_number(coef, "angle");
  if (!rest.empty()) {
    if (rest[0] != '/') throw InvalidInput("cannot parse angle: '" + std::string(text) + "'");
    const double d = parse_number(rest.substr(1), "angle");
    if (d == 0.0) throw InvalidInput("angle divides by zero");
    factor /= d;
  }
  return factor * units::kPi;
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc,
             {"molecule", "intensity_W_cm2", "gamma", "delta1", "delta2", "T_fs", "q1", "q2",
              "flags", "t_end_ps", "sample_every_ps", "n_t0", "initial_state", "basis",
              "propagator", "ks", "output_dir", "workers"},
             "config");
  RunConfig c;
  if (doc.contains("molecule")) {
    const json& m = doc["molecule"];
    if (m.is_string()) {
      if (m.get<std::string>() != "OCS") throw InvalidInput("unknown molecule '" + m.get<std::string>() + "'");
    } else {
      check_keys(m, {"B_cm", "mu_D", "dalpha_au", "alpha_perp_au", "dbeta_au", "beta_perp_au"},
                 "molecule");
      if (m.contains("B_cm")) c.molecule.B = number_value(m["B_cm"], "molecule.B_cm");
      if (m.contains("mu_D")) c.molecule.mu = number_value(m["mu_D"], "molecule.mu_D");
      if (m.contains("dalpha_au")) c.molecule.dalpha = number_value(m["dalpha_au"], "molecule.dalpha_au");
      if (m.contains("alpha_perp_au")) c.molecule.alpha_perp = number_value(m["alpha_perp_au"], "molecule.alpha_perp_au");
      if (m.contains("dbeta_au")) c.molecule.dbeta = number_value(m["dbeta_au"], "molecule.dbeta_au");
      if (m.contains("beta_perp_au")) c.molecule.beta_perp = number_value(m["beta_perp_au"], "molecule.beta_perp_au");
    }
  }
  if (doc.contains("intensity_W_cm2")) c.intensity = number_value(doc["intensity_W_cm2"], "intensity_W_cm2");
  if (doc.contains("gamma")) c.gamma = grid_value(doc["gamma"], "gamma", false);
  if (doc.contains("delta2")) c.delta2 = grid_value(doc["delta2"], "delta2", true);
  if (doc.contains("delta1")) c.delta1 = angle_value(doc["delta1"], "delta1");
  if (doc.contains("T_fs")) c.T_fs = grid_value(doc["T_fs"], "T_fs", false);
  if (doc.contains("q1")) c.q1 = int_value(doc["q1"], "q1");
  if (doc.contains("q2")) c.q2 = int_value(doc["q2"], "q2");
  if (doc.contains("flags")) {
    const json& f = doc["flags"];
    c.flags.clear();
    if (f.is_string()) c.flags.push_back(f.get<std::string>());
    else if (f.is_array()) {
      for (const json& v : f) {
        if (!v.is_string()) throw InvalidInput("flags: expected strings");
        c.flags.push_back(v.get<std::string>());
      }
    } else throw InvalidInput("flags: expected a string or an array of strings");
  }
  if (doc.contains("t_end_ps")) c.t_end_ps = number_value(doc["t_end_ps"], "t_end_ps");
  if (doc.contains("sample_every_ps")) c.sample_every_ps = number_value(doc["sample_every_ps"], "sample_every_ps");
  if (doc.contains("n_t0")) c.n_t0 = int_value(doc["n_t0"], "n_t0");
  if (doc.contains("initial_state")) {
    const json& s = doc["initial_state"];
    check_keys(s, {"J", "M"}, "initial_state");
    if (s.contains("J")) c.J = int_value(s["J"], "initial_state.J");
    if (s.contains("M")) c.M = int_value(s["M"], "initial_state.M");
  }
  if (doc.contains("basis")) {
    const json& b = doc["basis"];
    check_keys(b, {"Jmax", "buffer"}, "basis");
    if (b.contains("Jmax")) c.Jmax = int_value(b["Jmax"], "basis.Jmax");
    if (b.contains("buffer")) c.buffer = int_value(b["buffer"], "basis.buffer");
  }
  if (doc.contains("propagator")) {
    const json& p = doc["propagator"];
    check_keys(p, {"dt_fs", "krylov_dim", "step_tolerance", "field_time_rule"}, "propagator");
    if (p.contains("dt_fs")) c.dt_fs = number_value(p["dt_fs"], "propagator.dt_fs");
    if (p.contains("krylov_dim")) c.krylov_dim = int_value(p["krylov_dim"], "propagator.krylov_dim");
    if (p.contains("step_tolerance")) c.step_tolerance = number_value(p["step_tolerance"], "propagator.step_tolerance");
    if (p.contains("field_time_rule")) {
      const std::string r = p["field_time_rule"].get<std::string>();
      if (r == "midpoint") c.field_time_rule = FieldTimeRule::midpoint;
      else if (r == "left_endpoint") c.field_time_rule = FieldTimeRule::left_endpoint;
      else throw InvalidInput("unknown field_time_rule '" + r + "'");
    }
  }
  if (doc.contains("ks")) {
    c.ks.clear();
    const json& k = doc["ks"];
    if (!k.is_array()) throw InvalidInput("ks: expected an array");
    for (const json& v : k) c.ks.push_back(int_value(v, "ks"));
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw InvalidInput("output_dir: expected a string");
    c.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("workers")) c.workers = int_value(doc["workers"], "workers");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& c) {
  validate(c.molecule);
  if (!(c.intensity >= 0.0) || !std::isfinite(c.intensity)) throw InvalidParameter("intensity must be nonnegative");
  if (c.gamma.empty() || c.delta2.empty() || c.T_fs.empty() || c.flags.empty() || c.ks.empty()) {
    throw InvalidParameter("grids must be nonempty");
  }
  for (double g : c.gamma) {
    if (!(g >= 0.0 && g <= 1.0)) throw InvalidParameter("gamma must lie in [0, 1]");
  }
  for (double d : c.delta2) {
    if (!std::isfinite(d)) throw InvalidParameter("delta2 must be finite");
  }
  if (!std::isfinite(c.delta1)) throw InvalidParameter("delta1 must be finite");
  for (double T : c.T_fs) {
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidParameter("laser periods must be positive");
  }
  if (c.q1 < 1 || c.q2 < 1) throw InvalidParameter("q1 and q2 must be positive");
  for (const std::string& f : c.flags) parse_flags_label(f);
  if (!(c.t_end_ps > 0.0)) throw InvalidParameter("t_end_ps must be positive");
  if (!(c.sample_every_ps > 0.0)) throw InvalidParameter("sample_every_ps must be positive");
  if (c.n_t0 < 2) throw InvalidParameter("n_t0 must be at least 2");
  if (c.dt_fs < 0.0 || !std::isfinite(c.dt_fs)) throw InvalidParameter("dt_fs must be nonnegative");
  for (int k : c.ks) {
    if (k < 1 || k > 3) throw InvalidParameter("ks must be in {1, 2, 3}");
  }
  if (c.workers < 0) throw InvalidParameter("workers must be nonnegative");
  BasisSpec basis{c.M, c.Jmax, c.buffer};
  validate(basis);
  if (c.J < std::abs(c.M) || c.J > c.Jmax) throw InvalidParameter("initial J outside the basis");
  PropagatorConfig pc;
  pc.dt = 1.0;
  pc.krylov_dim = c.krylov_dim;
  pc.step_tolerance = c.step_tolerance;
  validate(pc);
}

std::string canonical_json(const RunConfig& c) {
  json j;
  j["molecule"] = {{"B_cm", c.molecule.B},           {"mu_D", c.molecule.mu},
                   {"dalpha_au", c.molecule.dalpha}, {"alpha_perp_au", c.molecule.alpha_perp},
                   {"dbeta_au", c.molecule.dbeta},   {"beta_perp_au", c.molecule.beta_perp}};
  j["intensity_W_cm2"] = c.intensity;
  j["gamma"] = c.gamma;
  j["delta1"] = c.delta1;
  j["delta2"] = c.delta2;
  j["T_fs"] = c.T_fs;
  j["q1"] = c.q1;
  j["q2"] = c.q2;
  j["flags"] = c.flags;
  j["t_end_ps"] = c.t_end_ps;
  j["sample_every_ps"] = c.sample_every_ps;
  j["n_t0"] = c.n_t0;
  j["initial_state"] = {{"J", c.J}, {"M", c.M}};
  j["basis"] = {{"Jmax", c.Jmax}, {"buffer", c.buffer}};
  j["propagator"] = {{"dt_fs", c.dt_fs},
                     {"krylov_dim", c.krylov_dim},
                     {"step_tolerance", c.step_tolerance},
                     {"field_time_rule", c.field_time_rule == FieldTimeRule::midpoint
                                             ? "midpoint"
                                             : "left_endpoint"}};
  j["ks"] = c.ks;
  return j.dump();
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_json(config))));
  return buf;
}

RunDescription make_run(const RunConfig& c, double T_fs, double gamma, double delta2,
                        const std::string& flags_label) {
  const FlagsLabel label = parse_flags_label(flags_label);
  RunDescription run;
  run.molecule = to_internal(c.molecule);
  const double E0 = intensity_to_field(c.intensity).atomic;
  const auto [eps1, eps2] = gamma_split(E0, gamma);
  const double period = units::fs_to_au(T_fs);
  run.field.eps1 = eps1;
  run.field.eps2 = eps2;
  run.field.q1 = c.q1;
  run.field.q2 = c.q2;
  run.field.omega = omega_from_period(period);
  run.field.delta1 = c.delta1;
  run.field.delta2 = delta2;
  run.field.t0 = 0.0;
  run.flags = label.flags;
  run.time_averaged = label.time_averaged;
  run.basis = BasisSpec{c.M, c.Jmax, c.buffer};
  run.initial_J = c.J;
  run.t_end = units::ps_to_au(c.t_end_ps);
  run.sample_every = units::ps_to_au(c.sample_every_ps);
  run.config = default_config(period);
  if (c.dt_fs > 0.0) run.config.dt = units::fs_to_au(c.dt_fs);
  run.config.krylov_dim = c.krylov_dim;
  run.config.step_tolerance = c.step_tolerance;
  run.config.field_time_rule = c.field_time_rule;
  run.ks = c.ks;
  return run;
}

}  // namespace twocolor
