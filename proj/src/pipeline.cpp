#include "qivif/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qivif/qaum.hpp"

namespace fs = std::filesystem;

namespace qivif {

namespace {

RasterImage replicate_to_rgb(const RasterImage &gray) {
  RasterImage rgb = RasterImage::zero(gray.height, gray.width, 3);
  for (int r = 0; r < gray.height; ++r)
    for (int c = 0; c < gray.width; ++c)
      for (int ch = 0; ch < 3; ++ch) rgb.at(r, c, ch) = gray.at(r, c, 0);
  return rgb;
}

RasterImage rgb_to_gray(const RasterImage &rgb) {
  RasterImage gray = RasterImage::zero(rgb.height, rgb.width, 1);
  for (int r = 0; r < rgb.height; ++r)
    for (int c = 0; c < rgb.width; ++c)
      gray.at(r, c, 0) = 0.299 * rgb.at(r, c, 0) + 0.587 * rgb.at(r, c, 1) +
                         0.114 * rgb.at(r, c, 2);
  return gray;
}

void require_exists(const std::string &path) {
  if (!fs::exists(path)) throw InputError("input file not found: " + path);
}

// Quantize through the same 6-decimal formatting the CSV uses, so the
// emitted mean row is the exact arithmetic mean of the emitted pair rows.
double quantize_csv(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::strtod(buf, nullptr);
}

MetricReport quantize_csv(const MetricReport &m) {
  MetricReport r;
  r.mi = quantize_csv(m.mi);
  r.en = quantize_csv(m.en);
  r.sd = quantize_csv(m.sd);
  r.ag = quantize_csv(m.ag);
  r.sf = quantize_csv(m.sf);
  r.qabf = quantize_csv(m.qabf);
  return r;
}

RasterImage gray_preview(const Eigen::ArrayXXd &map) {
  RasterImage img = RasterImage::zero(static_cast<int>(map.rows()),
                                      static_cast<int>(map.cols()), 1);
  const double hi = map.maxCoeff();
  const double scale = hi > 0.0 ? 1.0 / hi : 0.0;
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) img.at(r, c, 0) = map(r, c) * scale;
  return img;
}

void dump_stage(const fs::path &dir, const std::string &tag,
                const QlvflResult &res) {
  save_png(decode(res.qls.lighting), (dir / (tag + "_lighting.png")).string());
  save_png(gray_preview(res.qls.bright.modulus()),
           (dir / (tag + "_bright.png")).string());
  save_png(decode(res.dec.z), (dir / (tag + "_structure.png")).string());
  save_png(gray_preview(res.dec.d.modulus()),
           (dir / (tag + "_detail.png")).string());
  save_png(gray_preview(res.dec.e.modulus()),
           (dir / (tag + "_residual.png")).string());

  std::ofstream qls_csv(dir / (tag + "_qls_trace.csv"));
  qls_csv << "iter,mu2,objective,feasibility,rel_change\n";
  for (const auto &st : res.qls.trace) {
    qls_csv << st.iter << ',' << st.mu2 << ',' << st.objective << ','
            << st.feasibility << ',' << st.rel_change << '\n';
  }
  std::ofstream qlrd_csv(dir / (tag + "_qlrd_trace.csv"));
  qlrd_csv << "iter,mu1,residual,objective,rel_change\n";
  for (const auto &st : res.dec.trace) {
    qlrd_csv << st.iter << ',' << st.mu1 << ',' << st.feasibility << ','
             << st.objective << ',' << st.rel_change << '\n';
  }
}

}  // namespace

FusionResult fuse_pair(const RunConfig &cfg) {
  cfg.validate();
  require_exists(cfg.visible_path);
  require_exists(cfg.infrared_path);

  RasterImage vis = load_png(cfg.visible_path);
  RasterImage ir = load_png(cfg.infrared_path);
  if (vis.channels == 1) {
    std::cerr << "note: visible input " << cfg.visible_path
              << " is grayscale; replicating channels\n";
    vis = replicate_to_rgb(vis);
  }
  if (ir.channels == 3) {
    std::cerr << "note: infrared input " << cfg.infrared_path
              << " is RGB; converting to luma\n";
    ir = rgb_to_gray(ir);
  }
  if (vis.height != ir.height || vis.width != ir.width) {
    std::ostringstream msg;
    msg << "pair dimensions differ: " << cfg.visible_path << " is "
        << vis.width << "x" << vis.height << ", " << cfg.infrared_path
        << " is " << ir.width << "x" << ir.height;
    throw InputError(msg.str());
  }

  fs::path out_dir = cfg.out_dir.empty() ? fs::path(".") : fs::path(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir.string());

  FusionResult res;
  res.visible = run_qlvfl(encode_visible(vis), cfg.qls_visible, cfg.qlrd_visible);
  res.infrared =
      run_qlvfl(encode_infrared(ir), cfg.qls_infrared, cfg.qlrd_infrared);

  res.enhanced = enhance(res.visible.qls.lighting, res.infrared.dec.d,
                         res.visible.dec.d, cfg.qaum);
  res.qhbf = run_qhbf(res.enhanced, res.infrared.qls.lighting, cfg.qhbf);
  res.fused = res.qhbf.fused;
  res.fused_raster = decode(res.fused);

  res.fused_path = (out_dir / "fused.png").string();
  save_png(res.fused_raster, res.fused_path);

  if (cfg.dump_intermediates) {
    const fs::path inter = out_dir / "intermediates";
    fs::create_directories(inter, ec);
    if (ec) throw IoError("cannot create " + inter.string());
    dump_stage(inter, "visible", res.visible);
    dump_stage(inter, "infrared", res.infrared);
    save_png(decode(res.enhanced), (inter / "visible_enhanced.png").string());
    std::ofstream qhbf_csv(inter / "qhbf_trace.csv");
    qhbf_csv << "iter,objective,inner_residual,inner_iterations,eps_s,eps_q\n";
    for (const auto &st : res.qhbf.trace) {
      qhbf_csv << st.iter << ',' << st.objective << ',' << st.inner_residual
               << ',' << st.inner_iterations << ',' << st.eps_s << ','
               << st.eps_q << '\n';
    }
  }

  if (cfg.want_metrics) {
    res.metrics = compute_metrics(res.fused_raster, vis, ir);
    std::ofstream csv(out_dir / "metrics.csv");
    if (!csv) throw IoError("cannot write metrics.csv in " + out_dir.string());
    csv << metrics_csv_header() << '\n'
        << metrics_csv_row(fs::path(cfg.visible_path).stem().string(),
                           *res.metrics)
        << '\n';
  }
  return res;
}

std::vector<BatchEntry> read_manifest(const std::string &path) {
  require_exists(path);
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest: " + path);
  std::vector<BatchEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InputError("manifest line " + std::to_string(lineno) +
                       " is not visible<TAB>infrared");
    }
    entries.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return entries;
}

BatchResult run_batch(const std::string &manifest_path, const RunConfig &base) {
  base.validate();
  const std::vector<BatchEntry> entries = read_manifest(manifest_path);

  fs::path out_dir =
      base.out_dir.empty() ? fs::path(".") : fs::path(base.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir.string());

  BatchResult result;
  result.pairs_total = static_cast<int>(entries.size());
  result.csv_path = (out_dir / "metrics.csv").string();

  std::ofstream csv(result.csv_path);
  if (!csv) throw IoError("cannot write " + result.csv_path);
  csv << metrics_csv_header() << '\n';

  MetricReport sum;
  int succeeded = 0;
  for (size_t idx = 0; idx < entries.size(); ++idx) {
    const auto &entry = entries[idx];
    std::ostringstream tag;
    tag << std::setw(4) << std::setfill('0') << (idx + 1) << '_'
        << fs::path(entry.visible).stem().string();
    try {
      RunConfig cfg = base;
      cfg.visible_path = entry.visible;
      cfg.infrared_path = entry.infrared;
      cfg.out_dir = (out_dir / tag.str()).string();
      cfg.want_metrics = true;
      FusionResult fused = fuse_pair(cfg);
      const MetricReport m = quantize_csv(*fused.metrics);
      csv << metrics_csv_row(tag.str(), m) << '\n';
      sum.mi += m.mi;
      sum.en += m.en;
      sum.sd += m.sd;
      sum.ag += m.ag;
      sum.sf += m.sf;
      sum.qabf += m.qabf;
      ++succeeded;
    } catch (const std::exception &e) {
      ++result.pairs_failed;
      std::cerr << "error: pair " << (idx + 1) << " (" << entry.visible << ", "
                << entry.infrared << ") failed: " << e.what() << "\n";
    }
  }

  if (succeeded > 0) {
    MetricReport mean;
    mean.mi = sum.mi / succeeded;
    mean.en = sum.en / succeeded;
    mean.sd = sum.sd / succeeded;
    mean.ag = sum.ag / succeeded;
    mean.sf = sum.sf / succeeded;
    mean.qabf = sum.qabf / succeeded;
    csv << metrics_csv_row("mean", quantize_csv(mean)) << '\n';
  }
  return result;
}

}  // namespace qivif
