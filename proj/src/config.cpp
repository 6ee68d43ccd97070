#include "gkdv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "gkdv/almost_conservation.hpp"

namespace gkdv {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"grid", {"modes", "length"}},
      {"datum", {"family", "amplitude", "width", "center", "wavenumber", "speed", "path"}},
      {"solver", {"dt", "horizon", "stride", "nonlinear", "dealias"}},
      {"analytics", {"sigmas", "s", "b", "b_prime", "band_lo", "band_hi", "floor"}},
      {"scheduler", {"c0", "r", "C", "sigma0", "horizon", "a0"}},
      {"sweep", {"delta", "sigmas"}},
      {"symbol", {"samples", "xi_max", "sigma_max", "thetas", "grid_range"}},
      {"output", {"checkpoint_times"}},
      {"run", {"seed"}},
  };
  return keys;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  std::optional<std::string> raw(const std::string& key) const {
    if (tree_ == nullptr) return std::nullopt;
    auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  double number(const std::string& key, double fallback) const {
    if (auto v = raw(key)) return parse_number(key, *v);
    return fallback;
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (auto v = raw(key)) return parse_number(key, *v);
    return std::nullopt;
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
    auto v = raw(key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || ptr != v->data() + v->size()) fail(key, *v, "a non-negative integer");
    return out;
  }

  bool flag(const std::string& key, bool fallback) const {
    auto v = raw(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "off") return false;
    fail(key, *v, "true or false");
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback) const {
    auto v = raw(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= v->size()) {
      const auto comma = v->find(',', start);
      const auto item = trim(v->substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (!item.empty()) out.push_back(parse_number(key, item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  std::string text(const std::string& key, std::string fallback) const { return raw(key).value_or(fallback); }

 private:
  double parse_number(const std::string& key, const std::string& text) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(out)) fail(key, text, "a finite number");
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& value, const char* expected) const {
    throw ConfigError(fmt::format("[{}] {} = '{}': expected {}", name_, key, value, expected));
  }

  std::string name_;
  const pt::ptree* tree_;
};

template <typename F>
void field(const char* name, F&& check) {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("{}: {}", name, e.what()));
  }
}

}  // namespace

std::vector<double> ExperimentConfig::sweep_sigma_list() const {
  if (sweep_sigmas) return *sweep_sigmas;
  std::vector<double> out;
  for (int j = 8; j >= 1; --j) out.push_back(std::ldexp(schedule.sigma0, -j));
  return out;
}

void ExperimentConfig::validate() const {
  field("[grid]", [&] { (void)grid(); });
  field("[solver]", [&] { solver.validate(); });
  field("[datum]", [&] {
    if (datum.family == DatumFamily::file && datum.path.empty()) throw std::invalid_argument("family = file needs a path");
    (void)make_datum(grid(), datum);
  });
  field("[analytics] sigmas", [&] {
    for (double s : analytics.sigmas) {
      if (!(s >= 0.0)) throw std::invalid_argument(fmt::format("sigma {} is negative", s));
      if (s * grid().k_max() > kMaxExponent) {
        throw std::invalid_argument(fmt::format("sigma {} overflows on this grid; largest admissible is {}", s,
                                                kMaxExponent / grid().k_max()));
      }
    }
  });
  field("[analytics] band", [&] {
    RadiusFitOptions probe = analytics.fit;
    probe.floor_relative = 0.0;
    // A nonzero flat spectrum exercises only the band bookkeeping.
    SpectralField flat(grid(), std::vector<Complex>(grid().half_size(), Complex{1.0, 0.0}));
    (void)estimate_radius(flat, probe);
  });
  field("[scheduler]", [&] {
    schedule.constants.validate();
    if (!(schedule.sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
    if (!(schedule.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (schedule.a0 && !(*schedule.a0 >= 0.0)) throw std::invalid_argument("a0 must be >= 0");
  });
  field("[sweep] delta", [&] {
    if (sweep_delta && !(*sweep_delta > 0.0)) throw std::invalid_argument("delta must be positive");
  });
  field("[sweep] sigmas", [&] { require_dyadic(sweep_sigma_list()); });
  field("[symbol]", [&] {
    if (symbol.samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(symbol.xi_max > 0.0) || !(symbol.sigma_max > 0.0)) throw std::invalid_argument("ranges must be positive");
    for (double t : symbol.thetas) {
      if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument(fmt::format("theta {} outside [0, 1]", t));
    }
    if (symbol_grid_range < 0) throw std::invalid_argument("grid_range must be >= 0");
  });
  field("[output] checkpoint_times", [&] {
    for (double t : checkpoint_times) {
      if (!(t >= 0.0 && t <= solver.horizon)) throw std::invalid_argument(fmt::format("time {} outside [0, horizon]", t));
    }
  });
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("malformed config: {}", e.what()));
  }

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (!body.data().empty()) throw ConfigError(fmt::format("key '{}' must live inside a section", section));
      throw ConfigError(fmt::format("unknown section [{}]", section));
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, section));
    }
  }

  auto section = [&](const std::string& name) {
    const auto child = tree.get_child_optional(pt::ptree::path_type(name, '\0'));
    return Section(name, child ? &*child : nullptr);
  };

  ExperimentConfig config;
  const Section grid = section("grid");
  config.modes = grid.integer("modes", config.modes);
  config.length = grid.number("length", config.length);

  const Section datum = section("datum");
  try {
    config.datum.family = parse_datum_family(datum.text("family", "sech"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("[datum] family: {}", e.what()));
  }
  config.datum.amplitude = datum.number("amplitude", config.datum.amplitude);
  config.datum.width = datum.number("width", config.datum.width);
  config.datum.center = datum.number("center", config.datum.center);
  config.datum.wavenumber = datum.number("wavenumber", config.datum.wavenumber);
  config.datum.speed = datum.number("speed", config.datum.speed);
  config.datum.path = datum.text("path", "");

  const Section solver = section("solver");
  config.solver.dt = solver.number("dt", config.solver.dt);
  config.solver.horizon = solver.number("horizon", config.solver.horizon);
  config.solver.sample_stride = solver.integer("stride", config.solver.sample_stride);
  config.solver.nonlinear = solver.flag("nonlinear", config.solver.nonlinear);
  config.solver.dealias = solver.flag("dealias", config.solver.dealias);

  const Section analytics = section("analytics");
  config.analytics.sigmas = analytics.list("sigmas", config.analytics.sigmas);
  config.analytics.s = analytics.number("s", config.analytics.s);
  config.analytics.b = analytics.number("b", config.analytics.b);
  config.analytics.b_prime = analytics.number("b_prime", config.analytics.b_prime);
  config.analytics.fit.k_lo = analytics.optional_number("band_lo");
  config.analytics.fit.k_hi = analytics.optional_number("band_hi");
  config.analytics.fit.floor_relative = analytics.number("floor", config.analytics.fit.floor_relative);

  const Section scheduler = section("scheduler");
  config.schedule.constants.c0 = scheduler.number("c0", config.schedule.constants.c0);
  config.schedule.constants.r = scheduler.number("r", config.schedule.constants.r);
  config.schedule.constants.C = scheduler.number("C", config.schedule.constants.C);
  config.schedule.sigma0 = scheduler.number("sigma0", config.schedule.sigma0);
  config.schedule.horizon = scheduler.number("horizon", config.schedule.horizon);
  config.schedule.a0 = scheduler.optional_number("a0");

  const Section sweep = section("sweep");
  config.sweep_delta = sweep.optional_number("delta");
  if (sweep.raw("sigmas")) config.sweep_sigmas = sweep.list("sigmas", {});

  const Section symbol = section("symbol");
  config.symbol.samples = symbol.integer("samples", config.symbol.samples);
  config.symbol.xi_max = symbol.number("xi_max", config.symbol.xi_max);
  config.symbol.sigma_max = symbol.number("sigma_max", config.symbol.sigma_max);
  config.symbol.thetas = symbol.list("thetas", config.symbol.thetas);
  config.symbol_grid_range = static_cast<int>(symbol.integer("grid_range", 5));

  config.checkpoint_times = section("output").list("checkpoint_times", {});
  config.symbol.seed = section("run").integer("seed", config.symbol.seed);

  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  return parse_config(in);
}

}  // namespace gkdv
