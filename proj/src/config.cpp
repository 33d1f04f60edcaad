#include "qivif/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qivif {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string &v, const std::string &key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception &) {
    throw ConfigError("config: bad numeric value '" + v + "' for " + key);
  }
}

long parse_int(const std::string &v, const std::string &key) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception &) {
    throw ConfigError("config: bad integer value '" + v + "' for " + key);
  }
}

bool parse_bool(const std::string &v, const std::string &key) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError("config: bad boolean value '" + v + "' for " + key);
}

void set_qls(QlsParams &p, const std::string &key, const std::string &v,
             const std::string &where) {
  if (key == "lambda") p.lambda = parse_double(v, where);
  else if (key == "tau") p.tau = parse_double(v, where);
  else if (key == "tau_rel") p.tau_rel = parse_double(v, where);
  else if (key == "mu2_init") p.mu2_init = parse_double(v, where);
  else if (key == "mu2_growth") p.mu2_growth = parse_double(v, where);
  else if (key == "mu2_cap") p.mu2_cap = parse_double(v, where);
  else if (key == "tol") p.tol = parse_double(v, where);
  else if (key == "max_iter") p.max_iter = static_cast<int>(parse_int(v, where));
  else throw ConfigError("config: unknown key " + where);
}

void set_qlrd(QlrdParams &p, const std::string &key, const std::string &v,
              const std::string &where) {
  if (key == "alpha") p.alpha = parse_double(v, where);
  else if (key == "beta") p.beta = parse_double(v, where);
  else if (key == "gamma") p.gamma = parse_double(v, where);
  else if (key == "p") p.p = parse_double(v, where);
  else if (key == "n") p.n = parse_int(v, where);
  else if (key == "rank") p.rank = parse_int(v, where);
  else if (key == "mu1_init") p.mu1_init = parse_double(v, where);
  else if (key == "mu1_growth") p.mu1_growth = parse_double(v, where);
  else if (key == "mu1_cap") p.mu1_cap = parse_double(v, where);
  else if (key == "tol") p.tol = parse_double(v, where);
  else if (key == "max_iter") p.max_iter = static_cast<int>(parse_int(v, where));
  else throw ConfigError("config: unknown key " + where);
}

void set_qaum(QaumParams &p, const std::string &key, const std::string &v,
              const std::string &where) {
  if (key == "mode") {
    if (v == "summation") p.mode = QaumParams::Mode::Summation;
    else if (v == "adaptive") p.mode = QaumParams::Mode::Adaptive;
    else throw ConfigError("config: mode must be summation or adaptive");
  } else if (key == "g_min") {
    p.g_min = parse_double(v, where);
  } else if (key == "g_max") {
    p.g_max = parse_double(v, where);
  } else {
    throw ConfigError("config: unknown key " + where);
  }
}

void set_qhbf(QhbfParams &p, const std::string &key, const std::string &v,
              const std::string &where) {
  if (key == "w1") p.w1 = parse_double(v, where);
  else if (key == "w2") p.w2 = parse_double(v, where);
  else if (key == "eps_s") p.eps_s = parse_double(v, where);
  else if (key == "eps_q") p.eps_q = parse_double(v, where);
  else if (key == "em_iters") p.em_iters = static_cast<int>(parse_int(v, where));
  else if (key == "inner_tol") p.inner_tol = parse_double(v, where);
  else if (key == "inner_max_iter")
    p.inner_max_iter = static_cast<int>(parse_int(v, where));
  else if (key == "update_eps") p.update_eps = parse_bool(v, where);
  else if (key == "estep_variant") {
    if (v == "paper") p.estep_variant = QhbfParams::EStepVariant::Paper;
    else if (v == "reciprocal")
      p.estep_variant = QhbfParams::EStepVariant::Reciprocal;
    else throw ConfigError("config: estep_variant must be paper or reciprocal");
  } else {
    throw ConfigError("config: unknown key " + where);
  }
}

}  // namespace

void RunConfig::validate() const {
  try {
    qls_visible.validate();
    qls_infrared.validate();
    qlrd_visible.validate();
    qlrd_infrared.validate();
    qaum.validate();
    qhbf.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.qlrd_infrared.p = 1.0;
  cfg.qlrd_infrared.beta = 0.1;
  cfg.qlrd_infrared.n = 10;
  cfg.qlrd_infrared.mu1_init = 0.5;
  cfg.qlrd_visible.p = 0.99;
  cfg.qlrd_visible.beta = 0.01;
  cfg.qlrd_visible.n = 5;
  cfg.qlrd_visible.mu1_init = 0.1;
  return cfg;
}

void apply_setting(RunConfig &cfg, const std::string &section,
                   const std::string &key, const std::string &value) {
  const std::string where = section + "." + key;
  if (section == "qls.visible") set_qls(cfg.qls_visible, key, value, where);
  else if (section == "qls.infrared") set_qls(cfg.qls_infrared, key, value, where);
  else if (section == "qlrd.visible") set_qlrd(cfg.qlrd_visible, key, value, where);
  else if (section == "qlrd.infrared")
    set_qlrd(cfg.qlrd_infrared, key, value, where);
  else if (section == "qaum") set_qaum(cfg.qaum, key, value, where);
  else if (section == "qhbf") set_qhbf(cfg.qhbf, key, value, where);
  else throw ConfigError("config: unknown section " + section);
}

void apply_config_file(RunConfig &cfg, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config: malformed section header at line " +
                          std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value at line " +
                        std::to_string(lineno));
    }
    if (section.empty()) {
      throw ConfigError("config: key outside a section at line " +
                        std::to_string(lineno));
    }
    apply_setting(cfg, section, trim(line.substr(0, eq)),
                  trim(line.substr(eq + 1)));
  }
}

void apply_override(RunConfig &cfg, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set expects section.key=value, got '" + assignment +
                      "'");
  }
  const std::string path = trim(assignment.substr(0, eq));
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) {
    throw ConfigError("--set expects section.key=value, got '" + assignment +
                      "'");
  }
  apply_setting(cfg, path.substr(0, dot), path.substr(dot + 1),
                trim(assignment.substr(eq + 1)));
}

namespace {

void print_qls(std::ostream &os, const std::string &name, const QlsParams &p) {
  os << "[" << name << "]\n";
  os << "lambda = " << p.lambda << "\n";
  os << "tau = " << p.tau << "\n";
  os << "tau_rel = " << p.tau_rel << "\n";
  os << "mu2_init = " << p.mu2_init << "\n";
  os << "mu2_growth = " << p.mu2_growth << "\n";
  os << "mu2_cap = " << p.mu2_cap << "\n";
  os << "tol = " << p.tol << "\n";
  os << "max_iter = " << p.max_iter << "\n\n";
}

void print_qlrd(std::ostream &os, const std::string &name,
                const QlrdParams &p) {
  os << "[" << name << "]\n";
  os << "alpha = " << p.alpha << "\n";
  os << "beta = " << p.beta << "\n";
  os << "gamma = " << p.gamma << "\n";
  os << "p = " << p.p << "\n";
  os << "n = " << p.n << "\n";
  os << "rank = " << p.rank << "\n";
  os << "mu1_init = " << p.mu1_init << "\n";
  os << "mu1_growth = " << p.mu1_growth << "\n";
  os << "mu1_cap = " << p.mu1_cap << "\n";
  os << "tol = " << p.tol << "\n";
  os << "max_iter = " << p.max_iter << "\n\n";
}

}  // namespace

std::string print_config(const RunConfig &cfg) {
  std::ostringstream os;
  os.precision(17);
  print_qls(os, "qls.visible", cfg.qls_visible);
  print_qls(os, "qls.infrared", cfg.qls_infrared);
  print_qlrd(os, "qlrd.visible", cfg.qlrd_visible);
  print_qlrd(os, "qlrd.infrared", cfg.qlrd_infrared);
  os << "[qaum]\n";
  os << "mode = "
     << (cfg.qaum.mode == QaumParams::Mode::Summation ? "summation"
                                                      : "adaptive")
     << "\n";
  os << "g_min = " << cfg.qaum.g_min << "\n";
  os << "g_max = " << cfg.qaum.g_max << "\n\n";
  os << "[qhbf]\n";
  os << "w1 = " << cfg.qhbf.w1 << "\n";
  os << "w2 = " << cfg.qhbf.w2 << "\n";
  os << "eps_s = " << cfg.qhbf.eps_s << "\n";
  os << "eps_q = " << cfg.qhbf.eps_q << "\n";
  os << "em_iters = " << cfg.qhbf.em_iters << "\n";
  os << "inner_tol = " << cfg.qhbf.inner_tol << "\n";
  os << "inner_max_iter = " << cfg.qhbf.inner_max_iter << "\n";
  os << "estep_variant = "
     << (cfg.qhbf.estep_variant == QhbfParams::EStepVariant::Paper
             ? "paper"
             : "reciprocal")
     << "\n";
  os << "update_eps = " << (cfg.qhbf.update_eps ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace qivif
