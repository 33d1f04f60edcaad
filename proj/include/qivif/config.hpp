#pragma once

#include <stdexcept>
#include <string>

#include "qivif/qaum.hpp"
#include "qivif/qhbf.hpp"
#include "qivif/qlrd.hpp"
#include "qivif/qls.hpp"

namespace qivif {

/// Raised on unparseable config files, unknown keys or out-of-range values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised on missing input files or mismatched pair dimensions.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully resolved run configuration. Numeric defaults follow the
/// per-modality settings documented in the README; file values override
/// defaults and CLI --set overrides both.
struct RunConfig {
  std::string visible_path;
  std::string infrared_path;
  std::string out_dir;

  QlsParams qls_visible;
  QlsParams qls_infrared;
  QlrdParams qlrd_visible;
  QlrdParams qlrd_infrared;
  QaumParams qaum;
  QhbfParams qhbf;

  bool dump_intermediates = false;
  bool want_metrics = false;

  void validate() const;  // throws ConfigError on bad parameter values
};

/// Defaults: infrared decomposition (p = 1, beta = 0.1, n = 10,
/// mu1 = 0.5), visible decomposition (p = 0.99, beta = 0.01, n = 5,
/// mu1 = 0.1), alpha = 1, gamma = 100 on both sides.
RunConfig default_config();

/// INI-style file: [section] headers with key = value lines, '#' or ';'
/// comments. Sections: qls.visible, qls.infrared, qlrd.visible,
/// qlrd.infrared, qaum, qhbf.
void apply_config_file(RunConfig &cfg, const std::string &path);

/// One override of the form section.key=value (the CLI --set flag).
void apply_override(RunConfig &cfg, const std::string &assignment);

/// Round-trippable dump of every resolved value.
std::string print_config(const RunConfig &cfg);

}  // namespace qivif
