#include "eljx/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "eljx/classical.hpp"
#include "eljx/io.hpp"

namespace eljx {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void bad_key(const std::string& origin, int line, const std::string& path,
                          const std::string& what) {
  throw validation_error(origin + ":" + std::to_string(line) + ": " + path + ": " + what);
}

struct Parser {
  RunConfig* cfg;
  std::string origin;
  int line = 0;
  std::string section;

  double to_double(const std::string& path, const std::string& v) const {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument("trailing junk");
      return d;
    } catch (const std::exception&) {
      bad_key(origin, line, path, "expected a number (got '" + v + "')");
    }
  }
  long long to_int(const std::string& path, const std::string& v) const {
    try {
      std::size_t used = 0;
      const long long i = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument("trailing junk");
      return i;
    } catch (const std::exception&) {
      bad_key(origin, line, path, "expected an integer (got '" + v + "')");
    }
  }
  std::uint64_t to_u64(const std::string& path, const std::string& v) const {
    try {
      std::size_t used = 0;
      const unsigned long long i = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument("trailing junk");
      return i;
    } catch (const std::exception&) {
      bad_key(origin, line, path, "expected an unsigned integer (got '" + v + "')");
    }
  }
  bool to_bool(const std::string& path, const std::string& v) const {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    bad_key(origin, line, path, "expected true/false (got '" + v + "')");
  }

  void assign(const std::string& key, const std::string& value) {
    const std::string path = section.empty() ? key : section + "." + key;
    RunConfig& c = *cfg;
    if (section == "model") {
      if (key == "L") c.model.L = static_cast<int>(to_int(path, value));
      else if (key == "M") c.model.M = static_cast<int>(to_int(path, value));
      else if (key == "N") c.model.N = static_cast<int>(to_int(path, value));
      else if (key == "h") c.model.h = to_double(path, value);
      else if (key == "g0") c.model.g0 = to_double(path, value);
      else if (key == "g1") c.model.g1 = to_double(path, value);
      else if (key == "U") c.model.U = to_double(path, value);
      else if (key == "W") c.model.W = to_double(path, value);
      else if (key == "omega") {
        if (value == "2*Omega0") {
          c.omega_resonant = true;
          c.model.omega = 0.0;
        } else {
          c.omega_resonant = false;
          c.model.omega = to_double(path, value);
        }
      } else bad_key(origin, line, path, "unknown key");
    } else if (section == "propagator") {
      if (key == "steps_per_period") c.propagator.steps_per_period = static_cast<int>(to_int(path, value));
      else if (key == "unitarity_tol") c.propagator.unitarity_tol = to_double(path, value);
      else if (key == "convergence_tol") c.propagator.convergence_tol = to_double(path, value);
      else bad_key(origin, line, path, "unknown key");
    } else if (section == "ensemble") {
      if (key == "realizations") c.ensemble.realizations = static_cast<int>(to_int(path, value));
      else if (key == "base_seed") c.ensemble.base_seed = to_u64(path, value);
      else if (key == "workers") c.ensemble.workers = static_cast<int>(to_int(path, value));
      else bad_key(origin, line, path, "unknown key");
    } else if (section == "analysis") {
      if (key == "pr") c.analysis.pr = to_bool(path, value);
      else if (key == "rstats") c.analysis.rstats = to_bool(path, value);
      else if (key == "graph") c.analysis.graph = to_bool(path, value);
      else if (key == "classical") c.analysis.classical = to_bool(path, value);
      else if (key == "spectroscopy") c.analysis.spectroscopy = to_bool(path, value);
      else if (key == "jw") c.analysis.jw = to_bool(path, value);
      else if (key == "cutoff") c.cutoff = to_double(path, value);
      else if (key == "histogram_bins") c.histogram_bins = static_cast<int>(to_int(path, value));
      else bad_key(origin, line, path, "unknown key");
    } else if (section == "spectroscopy") {
      if (key == "Q") c.spectroscopy.Q = static_cast<int>(to_int(path, value));
      else if (key == "threshold") c.spectroscopy.threshold = to_double(path, value);
      else if (key == "noise_sigma") c.spectroscopy.noise_sigma = to_double(path, value);
      else bad_key(origin, line, path, "unknown key");
    } else if (section == "output") {
      if (key == "directory") c.out_dir = value;
      else bad_key(origin, line, path, "unknown key");
    } else {
      bad_key(origin, line, path, "unknown section [" + section + "]");
    }
  }
};

} // namespace

void RunConfig::resolve() {
  const auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw validation_error(msg);
  };
  check(model.M >= 2, "model.M: must be >= 2 (got " + std::to_string(model.M) + ")");
  check(model.L == 2 * model.M,
        "model.L: must equal 2M (got L=" + std::to_string(model.L) + ", M=" + std::to_string(model.M) + ")");
  check(model.N >= 0, "model.N: must be >= 0 (got " + std::to_string(model.N) + ")");
  check(model.g0 > 0.0, "model.g0: must be > 0 (got " + fmt17(model.g0) + ")");
  check(model.g1 >= 0.0, "model.g1: must be >= 0 (got " + fmt17(model.g1) + ")");
  check(model.W >= 0.0, "model.W: must be >= 0 (got " + fmt17(model.W) + ")");
  check(model.h > 0.0, "model.h: must be > 0 (got " + fmt17(model.h) + ")");

  if (omega_resonant) {
    model.omega = 2.0 * omega0(model);
  }
  check(model.omega > 0.0, "model.omega: must be > 0 (got " + fmt17(model.omega) + ")");

  check(propagator.steps_per_period >= 8 && propagator.steps_per_period % 2 == 0,
        "propagator.steps_per_period: must be even and >= 8 (got " +
            std::to_string(propagator.steps_per_period) + ")");
  check(propagator.unitarity_tol > 0.0, "propagator.unitarity_tol: must be > 0");
  check(propagator.convergence_tol > 0.0, "propagator.convergence_tol: must be > 0");
  check(ensemble.realizations >= 1,
        "ensemble.realizations: must be >= 1 (got " + std::to_string(ensemble.realizations) + ")");
  check(ensemble.workers >= 0, "ensemble.workers: must be >= 0");
  check(cutoff >= 0.0, "analysis.cutoff: must be >= 0 (got " + fmt17(cutoff) + ")");
  check(histogram_bins >= 1, "analysis.histogram_bins: must be >= 1");
  check(spectroscopy.Q >= 2, "spectroscopy.Q: must be >= 2");
  check(spectroscopy.threshold > 0.0, "spectroscopy.threshold: must be > 0");
  check(spectroscopy.noise_sigma >= 0.0, "spectroscopy.noise_sigma: must be >= 0");

  model.validate();
  propagator.validate();
}

RunConfig parse_config_text(std::string_view text, const std::string& origin) {
  RunConfig cfg;
  Parser p{&cfg, origin};
  std::map<std::string, int> seen;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    std::string line = raw;
    if (const auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad_key(origin, p.line, line, "malformed section header");
      p.section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (p.section.empty()) bad_key(origin, p.line, line, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad_key(origin, p.line, line, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) bad_key(origin, p.line, line, "empty key");
    if (p.section.empty()) bad_key(origin, p.line, key, "key outside any [section]");
    const std::string path = p.section + "." + key;
    if (++seen[path] > 1) bad_key(origin, p.line, path, "duplicate key");
    p.assign(key, value);
  }
  cfg.resolve();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("config file not readable: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void write_example_config(std::ostream& os) {
  os << "# eljx run configuration. Unknown sections or keys are errors.\n"
        "# All energies are in units of g0, times in 1/g0 (hbar = 1).\n"
        "\n"
        "[model]\n"
        "L = 12            # sites; must equal 2M\n"
        "M = 6             # domain size (disordered half = sites 1..M)\n"
        "N = 2             # particles\n"
        "h = 1.0           # on-site modulation amplitude\n"
        "g0 = 1.0          # static coupling\n"
        "g1 = 0.9          # drive amplitude\n"
        "U = 3.5           # on-site interaction\n"
        "omega = 2*Omega0  # drive frequency; a number, or the resonance shortcut\n"
        "W = 1.0           # disorder strength\n"
        "\n"
        "[propagator]\n"
        "steps_per_period = 256\n"
        "unitarity_tol = 1e-10\n"
        "convergence_tol = 1e-6\n"
        "\n"
        "[ensemble]\n"
        "realizations = 100\n"
        "base_seed = 1\n"
        "workers = 0       # 0 = available parallelism (ELJX_WORKERS overrides)\n"
        "\n"
        "[analysis]\n"
        "pr = true\n"
        "rstats = true\n"
        "graph = true\n"
        "classical = false\n"
        "spectroscopy = false\n"
        "jw = false\n"
        "cutoff = 0.01     # adjacency threshold on |H_eff|\n"
        "histogram_bins = 20\n"
        "\n"
        "[spectroscopy]\n"
        "Q = 700           # stroboscopic samples per trace\n"
        "threshold = 1e-8  # peak threshold on the averaged power spectrum\n"
        "noise_sigma = 0   # optional Gaussian read-out noise\n"
        "\n"
        "[output]\n"
        "directory = out\n";
}

std::uint64_t realization_seed(std::uint64_t base_seed, int index) {
  return mix64(base_seed, static_cast<std::uint64_t>(index));
}

} // namespace eljx
