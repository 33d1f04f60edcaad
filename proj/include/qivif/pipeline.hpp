#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qivif/config.hpp"
#include "qivif/metrics.hpp"
#include "qivif/qhbf.hpp"
#include "qivif/qlrd.hpp"

namespace qivif {

/// Everything one fusion run produces, kept around so callers (CLI,
/// tests) can inspect intermediates.
struct FusionResult {
  QlvflResult visible;
  QlvflResult infrared;
  QMatrix enhanced;
  QhbfResult qhbf;
  QMatrix fused;
  RasterImage fused_raster;
  std::optional<MetricReport> metrics;
  std::string fused_path;
};

/// Encode -> QLVFL per modality -> unsharp enhancement -> Bayesian fusion
/// -> decode. Writes <out>/fused.png (plus intermediates and a metrics CSV
/// when requested). Throws InputError on missing files or size mismatch,
/// IoError on read/write failures.
FusionResult fuse_pair(const RunConfig &cfg);

struct BatchEntry {
  std::string visible;
  std::string infrared;
};

/// Tab-separated "visible<TAB>infrared" lines; blank lines are skipped.
std::vector<BatchEntry> read_manifest(const std::string &path);

struct BatchResult {
  int pairs_total = 0;
  int pairs_failed = 0;
  std::string csv_path;
};

/// Runs every manifest pair, writes numbered fused PNGs and a metrics CSV
/// with one row per pair plus a trailing mean row. Per-pair failures are
/// logged and skipped.
BatchResult run_batch(const std::string &manifest_path, const RunConfig &base);

}  // namespace qivif
