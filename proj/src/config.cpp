#include "kldg/config.hpp"

#include <fstream>
#include <set>

namespace kldg {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& known) {
  if (!j.is_object()) throw config_error(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw config_error(where + ": unknown key '" + it.key() + "'");
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error("config key '" + key + "': " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"case", "p", "elements", "gamma", "t_end", "riemann", "cfl", "dt", "kinetic",
              "limiter", "output", "seed", "check_admissibility"});
  RunConfig c;
  if (!j.contains("case")) throw config_error("config: missing 'case'");
  c.case_name = j.at("case").get<std::string>();
  if (!j.contains("p")) throw config_error("config: missing 'p'");
  c.p = j.at("p").get<int>();
  if (c.p < 0 || c.p > 12) throw config_error("config: p out of range");
  if (!j.contains("elements")) throw config_error("config: missing 'elements'");
  {
    const auto& e = j.at("elements");
    if (!e.is_array() || e.empty() || e.size() > 2)
      throw config_error("config: elements must be [Nx] or [Nx, Ny]");
    c.elements[0] = e.at(0).get<int>();
    c.elements[1] = e.size() == 2 ? e.at(1).get<int>() : 1;
    if (c.elements[0] < 1 || c.elements[1] < 1)
      throw config_error("config: element counts must be positive");
  }
  if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
  if (j.contains("t_end")) {
    c.t_end = j.at("t_end").get<double>();
    if (*c.t_end < 0.0) throw config_error("config: t_end must be >= 0");
  }
  if (j.contains("riemann")) c.riemann = j.at("riemann").get<std::string>();
  c.cfl = get_or(j, "cfl", 0.5);
  if (!(c.cfl > 0.0) || c.cfl > 1.0) throw config_error("config: cfl must lie in (0, 1]");
  if (j.contains("dt")) {
    c.dt_fixed = j.at("dt").get<double>();
    if (!(*c.dt_fixed > 0.0)) throw config_error("config: dt must be positive");
  }
  if (j.contains("kinetic")) {
    const auto& k = j.at("kinetic");
    check_keys(k, "kinetic", {"k", "n_per_axis", "r_fac", "strict"});
    c.kinetic.k_extent = get_or(k, "k", 4.0);
    c.kinetic.n_per_axis = get_or(k, "n_per_axis", 0);
    c.kinetic.r_fac = get_or(k, "r_fac", 1e-3);
    c.strict_bounds = get_or(k, "strict", false);
    c.kinetic.validate();
  }
  if (j.contains("limiter")) {
    const auto& l = j.at("limiter");
    check_keys(l, "limiter", {"coupled", "eps", "density_floor", "pressure_floor"});
    c.limiter.coupled = get_or(l, "coupled", true);
    c.limiter.eps = get_or(l, "eps", 1e-13);
    c.limiter.density_floor = get_or(l, "density_floor", 1e-12);
    c.limiter.pressure_floor = get_or(l, "pressure_floor", 1e-12);
    if (!(c.limiter.eps >= 0.0)) throw config_error("config: limiter.eps must be >= 0");
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    check_keys(o, "output", {"dir", "prefix", "times", "csv", "binary"});
    c.output.dir = get_or<std::string>(o, "dir", "out");
    c.output.prefix = get_or<std::string>(o, "prefix", "");
    if (o.contains("times")) c.output.times = o.at("times").get<std::vector<double>>();
    c.output.csv = get_or(o, "csv", true);
    c.output.binary = get_or(o, "binary", false);
  }
  c.seed = get_or<std::uint64_t>(j, "seed", 0);
  c.check_admissibility = get_or(j, "check_admissibility", false);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error("config parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const RunConfig& c) {
  json j;
  j["case"] = c.case_name;
  j["p"] = c.p;
  j["elements"] = c.elements[1] > 1 ? json::array({c.elements[0], c.elements[1]})
                                    : json::array({c.elements[0]});
  if (c.gamma) j["gamma"] = *c.gamma;
  if (c.t_end) j["t_end"] = *c.t_end;
  if (c.riemann) j["riemann"] = *c.riemann;
  j["cfl"] = c.cfl;
  if (c.dt_fixed) j["dt"] = *c.dt_fixed;
  j["kinetic"] = {{"k", c.kinetic.k_extent},
                  {"n_per_axis", c.kinetic.n_per_axis},
                  {"r_fac", c.kinetic.r_fac},
                  {"strict", c.strict_bounds}};
  j["limiter"] = {{"coupled", c.limiter.coupled},
                  {"eps", c.limiter.eps},
                  {"density_floor", c.limiter.density_floor},
                  {"pressure_floor", c.limiter.pressure_floor}};
  j["output"] = {{"dir", c.output.dir},
                 {"prefix", c.output.prefix},
                 {"times", c.output.times},
                 {"csv", c.output.csv},
                 {"binary", c.output.binary}};
  j["seed"] = c.seed;
  j["check_admissibility"] = c.check_admissibility;
  return j;
}

void apply_override(json& j, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw config_error("override must be key=value: " + kv);
  const std::string path = kv.substr(0, eq);
  const std::string val = kv.substr(eq + 1);
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw config_error("bad override path: " + path);
    if (dot == std::string::npos) {
      json parsed = json::parse(val, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? json(val) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace kldg
