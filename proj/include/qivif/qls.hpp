#pragma once

#include <vector>

#include "qivif/filters.hpp"
#include "qivif/qmatrix.hpp"

namespace qivif {

/// Lighting-suppression tunables. tau < 0 selects the relative rule
/// tau_rel * max |grad L| computed once from the input.
struct QlsParams {
  double lambda = 0.01;    // second-order fidelity weight
  double tau = -1.0;       // absolute hard-shrink threshold; < 0 = relative
  double tau_rel = 0.05;   // relative threshold on max gradient modulus
  double mu2_init = 0.1;
  double mu2_growth = 5.0;
  double mu2_cap = 1e6;
  double tol = 1e-5;
  int max_iter = 30;

  void validate() const;
};

struct QlsIterStats {
  int iter = 0;
  double mu2 = 0.0;
  double objective = 0.0;      // augmented Lagrangian value
  double feasibility = 0.0;    // ||G - H(grad I)||_F over the pair
  double rel_change = 0.0;     // max-modulus change of I over max-modulus of I
};

struct QlsResult {
  QMatrix lighting;            // suppressed layer I, intensity spanning [0,1]
  QGradPair glow;              // gradient-domain bright layer G
  QMatrix bright;              // L - I before normalization
  std::vector<QlsIterStats> trace;
  bool converged = false;
  int iterations = 0;
};

/// Entries with modulus <= tau are zeroed, the rest pass through.
QMatrix hard_shrink(const QMatrix &x, double tau);

/// Closed-form minimizer of
///   lambda*||lap I - lap L||_F^2 + mu/2*||grad I - G||_F^2
/// by pointwise spectral division under periodic boundaries. The DC bin of
/// I is tied to the DC bin of L (the quadratic is blind to constants), and
/// the intensity of I is projected into [0, intensity(L)] per pixel by
/// rescaling the imaginary triple.
QMatrix update_lighting_layer(const QMatrix &l, const QGradPair &g,
                              double lambda, double mu);

/// Alternates the spectral I-update, the Lemma-4 column soft-threshold
/// G-update, the multiplier step and the mu2 growth schedule, then rescales
/// the intensity of I to span [0,1].
QlsResult run_qls(const QMatrix &l, const QlsParams &params);

}  // namespace qivif
