// Command-line front end: single-pair fusion, batch manifest runs and
// config inspection.
//
// Exit codes: 0 success, 1 batch had failing pairs, 2 I/O failure,
// 3 bad input (missing file or mismatched pair), 4 invalid config.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qivif/config.hpp"
#include "qivif/pipeline.hpp"

namespace {

qivif::RunConfig build_config(const std::string &config_path,
                              const std::vector<std::string> &overrides) {
  qivif::RunConfig cfg = qivif::default_config();
  if (!config_path.empty()) qivif::apply_config_file(cfg, config_path);
  for (const auto &o : overrides) qivif::apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quaternion-domain infrared/visible image fusion"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool print_cfg = false;
  app.add_option("--config", config_path, "INI-style configuration file");
  app.add_option("--set", overrides,
                 "Override one value, e.g. --set qlrd.visible.beta=0.02");
  app.add_flag("--print-config", print_cfg,
               "Print the fully resolved configuration and exit");

  auto *fuse = app.add_subcommand("fuse", "Fuse one visible/infrared pair");
  std::string vis_path, ir_path, out_dir = ".";
  bool dump = false, metrics = false;
  fuse->add_option("--vis", vis_path, "Visible PNG")->required();
  fuse->add_option("--ir", ir_path, "Infrared PNG")->required();
  fuse->add_option("--out", out_dir, "Output directory");
  fuse->add_flag("--dump-intermediates", dump,
                 "Write per-stage PNGs and solver traces");
  fuse->add_flag("--metrics", metrics, "Write a metrics.csv next to fused.png");

  auto *batch = app.add_subcommand("batch", "Fuse every pair in a manifest");
  std::string manifest_path, batch_out = ".";
  batch->add_option("--manifest", manifest_path,
                    "TSV manifest: visible<TAB>infrared per line")
      ->required();
  batch->add_option("--out", batch_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    qivif::RunConfig cfg = build_config(config_path, overrides);

    if (print_cfg) {
      std::cout << qivif::print_config(cfg);
      if (!fuse->parsed() && !batch->parsed()) return 0;
    }

    if (fuse->parsed()) {
      cfg.visible_path = vis_path;
      cfg.infrared_path = ir_path;
      cfg.out_dir = out_dir;
      cfg.dump_intermediates = dump;
      cfg.want_metrics = metrics;
      qivif::FusionResult res = qivif::fuse_pair(cfg);
      std::cout << "fused: " << res.fused_path << "\n";
      if (res.metrics) {
        std::cout << qivif::metrics_csv_header() << "\n"
                  << qivif::metrics_csv_row("fused", *res.metrics) << "\n";
      }
      return 0;
    }

    if (batch->parsed()) {
      cfg.out_dir = batch_out;
      qivif::BatchResult res = qivif::run_batch(manifest_path, cfg);
      std::cout << "pairs: " << res.pairs_total
                << ", failed: " << res.pairs_failed << "\n"
                << "metrics: " << res.csv_path << "\n";
      return res.pairs_failed == 0 ? 0 : 1;
    }

    if (!print_cfg) std::cout << app.help();
    return 0;
  } catch (const qivif::ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const qivif::InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qivif::IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
