#pragma once

#include <vector>

#include "qivif/qls.hpp"
#include "qivif/qmatrix.hpp"

namespace qivif {

/// Low-rank decomposition tunables. rank <= 0 selects the size rule
/// max(4, min(H,W)/8).
struct QlrdParams {
  double alpha = 1.0;     // factor-norm weight
  double beta = 0.1;      // detail sparsity weight
  double gamma = 100.0;   // residual energy weight
  double p = 1.0;         // Schatten exponent in (0, 1]
  Index n = 10;           // leading singular values preserved (p1)
  Index rank = 0;         // bilinear factor rank r; <= 0 = automatic
  double mu1_init = 0.5;
  double mu1_growth = 1.1;
  double mu1_cap = 1e6;
  double tol = 1e-5;
  int max_iter = 200;

  void validate() const;
  [[nodiscard]] Index effective_rank(Index rows, Index cols) const;
};

struct QlrdIterStats {
  int iter = 0;
  double mu1 = 0.0;
  double feasibility = 0.0;  // ||I - Z - D - E||_F
  double objective = 0.0;    // beta*||D||_1 + gamma*||E||_F^2 + feasibility term
  double rel_change = 0.0;   // max over {Z, D} of relative max-modulus change
};

/// Structure Z = A*B, sparse detail D and residual E with the factor pair
/// and the per-iteration trace.
struct Decomposition {
  QMatrix z, d, e;
  QMatrix a, b;
  std::vector<QlrdIterStats> trace;
  bool converged = false;
  int iterations = 0;
};

/// Closed-form factor updates; mu1 is the current penalty.
QMatrix update_a(const QMatrix &z, const QMatrix &b, const QMatrix &j,
                 const QMatrix &y2, const QMatrix &y3, double mu1);
QMatrix update_b(const QMatrix &a, const QMatrix &z, const QMatrix &p,
                 const QMatrix &y2, const QMatrix &y4, double mu1);
QMatrix update_z(const QMatrix &i, const QMatrix &d, const QMatrix &e,
                 const QMatrix &a, const QMatrix &b, const QMatrix &y1,
                 const QMatrix &y2, double mu1);
QMatrix update_e(const QMatrix &i, const QMatrix &z, const QMatrix &d,
                 double gamma, double mu1);

/// LADMAP loop: A, B, Z, the spectral proximal steps for the factor
/// auxiliaries, column-soft-thresholded D, closed-form E, multipliers and
/// the mu1 growth schedule.
Decomposition run_qlrd(const QMatrix &i, const QlrdParams &params);

struct QlvflResult {
  QlsResult qls;
  Decomposition dec;
};

/// Full low-visibility feature learning: lighting suppression first, then
/// low-rank decomposition of the suppressed layer.
QlvflResult run_qlvfl(const QMatrix &l, const QlsParams &qls_params,
                      const QlrdParams &qlrd_params);

}  // namespace qivif
