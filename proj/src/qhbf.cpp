#include "qivif/qhbf.hpp"

#include <iostream>
#include <stdexcept>

#include "qivif/filters.hpp"
#include "qivif/qfft.hpp"

namespace qivif {

namespace {
constexpr double kExpectationFloor = 1e-8;
constexpr double kExpectationCap = 1e8;

Eigen::ArrayXXd expectation(const Eigen::ArrayXXd &mod, double eps,
                            QhbfParams::EStepVariant variant) {
  Eigen::ArrayXXd e;
  if (variant == QhbfParams::EStepVariant::Paper) {
    e = (2.0 * mod.square() / eps).sqrt();
  } else {
    e = (2.0 / (eps * mod.square())).sqrt();
  }
  e = e.isFinite().select(e, kExpectationCap);
  return e.max(kExpectationFloor).min(kExpectationCap);
}

// grad^T grad under periodic boundaries equals the negated 5-point
// Laplacian.
QMatrix grad_adj_grad(const QMatrix &a) {
  return -apply_filter(a, FilterKind::Laplacian);
}

}  // namespace

void QhbfParams::validate() const {
  if (w1 < 0.0 || w2 < 0.0 || eps_s <= 0.0 || eps_q <= 0.0 || em_iters < 1 ||
      inner_tol <= 0.0 || inner_max_iter < 1) {
    throw std::invalid_argument("QhbfParams: values out of range");
  }
}

std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> e_step(
    const QMatrix &s, const QMatrix &q, double eps_s, double eps_q,
    QhbfParams::EStepVariant variant) {
  if (eps_s <= 0.0 || eps_q <= 0.0) {
    throw std::invalid_argument("e_step: scale parameters must be positive");
  }
  return {expectation(s.modulus(), eps_s, variant),
          expectation(q.modulus(), eps_q, variant)};
}

double m_step_objective(const QMatrix &s, const QMatrix &t,
                        const Eigen::ArrayXXd &m, const Eigen::ArrayXXd &n,
                        double w1, double w2) {
  const QMatrix q = t - s;
  const QGradPair gs = gradient(s);
  const QGradPair gq = gradient(q);
  const double data_s = (m.square() * s.modulus().square()).sum();
  const double data_q = (n.square() * q.modulus().square()).sum();
  const double grad_s = gs.norm_fro() * gs.norm_fro();
  const double grad_q = gq.norm_fro() * gq.norm_fro();
  return 0.5 * data_s + 0.5 * data_q + 0.5 * w1 * grad_s + 0.5 * w2 * grad_q;
}

QMatrix m_step(const QMatrix &t, const Eigen::ArrayXXd &m,
               const Eigen::ArrayXXd &n, double w1, double w2, double tol,
               int max_iter, QhbfIterStats *stats) {
  if (m.rows() != t.rows() || m.cols() != t.cols() || n.rows() != t.rows() ||
      n.cols() != t.cols()) {
    throw std::invalid_argument("m_step: shape mismatch");
  }
  if ((m <= 0.0).any() || (n <= 0.0).any()) {
    throw std::invalid_argument("m_step: expectations must be positive");
  }
  const Index h = t.rows(), w = t.cols();
  const double c = w1 + w2;
  const Eigen::ArrayXXd diag = m.square() + n.square();

  const QMatrix rhs = t.scaled(n.square()) + grad_adj_grad(t) * w2;

  if (stats) {
    stats->inner_iterations = 0;
    stats->inner_residual = 0.0;
  }

  if (c == 0.0) {
    return rhs.scaled(diag.inverse());
  }

  const double rhs_norm = std::max(rhs.norm_fro(), 1e-300);
  const Eigen::ArrayXXd gspec = grad_power_spectrum(h, w);

  // Splitting on s = u: the s-subproblem is diagonal per pixel, the
  // u-subproblem diagonal per frequency. Over-relaxation plus
  // residual-balanced rho keep the alternation from stalling.
  const double dmean = diag.mean();
  double rho = std::min(1e8, std::max(1e-8, std::sqrt(dmean * (dmean + 4.0 * c))));
  constexpr double kRelax = 1.8;

  QMatrix s = rhs.scaled((diag + 4.0 * c).inverse());
  QMatrix u = s;
  QMatrix y(h, w);

  auto spectral_solve = [&](const QMatrix &in, double r) {
    const Eigen::ArrayXXd u_scale = (c * gspec + r).inverse();
    Eigen::MatrixXcd a1, a2;
    in.to_complex_pair(a1, a2);
    Eigen::MatrixXcd f1 = dft2(a1, false);
    Eigen::MatrixXcd f2 = dft2(a2, false);
    f1.array() *= u_scale;
    f2.array() *= u_scale;
    return QMatrix::from_complex_pair(dft2(f1, true), dft2(f2, true));
  };

  double rel = 0.0;
  int iters = 0;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::ArrayXXd s_scale = (diag + rho).inverse();
    s = (rhs + u * rho - y).scaled(s_scale);
    const QMatrix s_relaxed = s * kRelax + u * (1.0 - kRelax);
    const QMatrix u_prev = u;
    u = spectral_solve(s_relaxed * rho + y, rho);
    y += (s_relaxed - u) * rho;
    ++iters;

    const QMatrix resid = s.scaled(diag) + grad_adj_grad(s) * c - rhs;
    rel = resid.norm_fro() / rhs_norm;
    if (rel <= tol) break;

    const double primal = (s - u).norm_fro();
    const double dual = rho * (u - u_prev).norm_fro();
    if (primal > 10.0 * dual) {
      rho = std::min(rho * 2.0, 1e10);
      y *= 0.5;
    } else if (dual > 10.0 * primal) {
      rho = std::max(rho * 0.5, 1e-10);
      y *= 2.0;
    }
  }
  if (stats) {
    stats->inner_iterations = iters;
    stats->inner_residual = rel;
  }
  if (rel > tol) {
    std::cerr << "warning: QHBF inner solve stopped at " << iters
              << " iterations with residual " << rel << "\n";
  }
  return s;
}

QhbfResult run_qhbf(const QMatrix &i_v, const QMatrix &i_f,
                    const QhbfParams &params) {
  params.validate();
  if (i_v.rows() != i_f.rows() || i_v.cols() != i_f.cols()) {
    throw std::invalid_argument("run_qhbf: shape mismatch");
  }

  const QMatrix t = i_f - i_v;
  QMatrix s = t * 0.5;
  double eps_s = params.eps_s;
  double eps_q = params.eps_q;

  QhbfResult res;
  for (int it = 0; it < params.em_iters; ++it) {
    const QMatrix q = t - s;
    auto [m, n] = e_step(s, q, eps_s, eps_q, params.estep_variant);

    QhbfIterStats st;
    st.iter = it;
    s = m_step(t, m, n, params.w1, params.w2, params.inner_tol,
               params.inner_max_iter, &st);
    st.objective = m_step_objective(s, t, m, n, params.w1, params.w2);

    if (params.update_eps) {
      eps_s = std::max(s.modulus().mean(), 1e-6);
      eps_q = std::max((t - s).modulus().mean(), 1e-6);
    }
    st.eps_s = eps_s;
    st.eps_q = eps_q;
    res.trace.push_back(st);
  }

  res.fused = s + i_v;
  return res;
}

}  // namespace qivif
