#include "qivif/qfft.hpp"

#include <fftw3.h>

#include <mutex>

namespace qivif {

namespace {
// FFTW's planner is a shared global; plan creation must be serialized.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Eigen::MatrixXcd dft2(const Eigen::MatrixXcd &plane, bool inverse) {
  const Index h = plane.rows(), w = plane.cols();
  Eigen::MatrixXcd out(h, w);
  if (h == 0 || w == 0) return out;

  // FFTW is row-major; feed the column-major Eigen data as a W x H
  // transform, which transforms the same 2-D grid.
  Eigen::MatrixXcd in = plane;
  auto *src = reinterpret_cast<fftw_complex *>(in.data());
  auto *dst = reinterpret_cast<fftw_complex *>(out.data());

  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(w), static_cast<int>(h), src, dst,
                            inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  if (inverse) out /= static_cast<double>(h * w);
  return out;
}

QMatrix qfft(const QMatrix &a, bool inverse) {
  Eigen::MatrixXcd a1, a2;
  a.to_complex_pair(a1, a2);
  return QMatrix::from_complex_pair(dft2(a1, inverse), dft2(a2, inverse));
}

}  // namespace qivif
