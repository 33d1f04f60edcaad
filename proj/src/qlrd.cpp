#include "qivif/qlrd.hpp"

#include <iostream>
#include <stdexcept>

#include "qivif/proxops.hpp"
#include "qivif/qlinalg.hpp"
#include "qivif/qsvd.hpp"

namespace qivif {

void QlrdParams::validate() const {
  if (alpha <= 0.0 || beta <= 0.0 || gamma <= 0.0) {
    throw std::invalid_argument("QlrdParams: weights must be positive");
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("QlrdParams: p must lie in (0, 1]");
  }
  if (n < 0 || mu1_init <= 0.0 || mu1_growth <= 0.0 || mu1_cap <= 0.0 ||
      tol <= 0.0 || max_iter < 1) {
    throw std::invalid_argument("QlrdParams: values out of range");
  }
}

Index QlrdParams::effective_rank(Index rows, Index cols) const {
  const Index k = std::min(rows, cols);
  if (rank > 0) {
    if (rank > k) throw std::invalid_argument("QlrdParams: rank > min(H,W)");
    return rank;
  }
  return std::min<Index>(k, std::max<Index>(4, k / 8));
}

QMatrix update_a(const QMatrix &z, const QMatrix &b, const QMatrix &j,
                 const QMatrix &y2, const QMatrix &y3, double mu1) {
  const QMatrix bh = b.conj_transpose();
  const QMatrix r1 = (z + y2 * (1.0 / mu1)) * bh + j - y3 * (1.0 / mu1);
  QMatrix m = b * bh;                       // r x r Hermitian PSD
  m += QMatrix::identity(m.rows());
  return solve_hpd_right(m, r1);            // A = R1 (B B^H + I)^-1
}

QMatrix update_b(const QMatrix &a, const QMatrix &z, const QMatrix &p,
                 const QMatrix &y2, const QMatrix &y4, double mu1) {
  const QMatrix ah = a.conj_transpose();
  const QMatrix r2 = ah * (z + y2 * (1.0 / mu1)) + p - y4 * (1.0 / mu1);
  QMatrix m = ah * a;
  m += QMatrix::identity(m.rows());
  return solve_hpd_left(m, r2);             // B = (A^H A + I)^-1 R2
}

QMatrix update_z(const QMatrix &i, const QMatrix &d, const QMatrix &e,
                 const QMatrix &a, const QMatrix &b, const QMatrix &y1,
                 const QMatrix &y2, double mu1) {
  return (i - d - e + y1 * (1.0 / mu1) + a * b - y2 * (1.0 / mu1)) * 0.5;
}

QMatrix update_e(const QMatrix &i, const QMatrix &z, const QMatrix &d,
                 double gamma, double mu1) {
  return (i - z - d) * (mu1 / (2.0 * gamma + mu1));
}

Decomposition run_qlrd(const QMatrix &input, const QlrdParams &params) {
  params.validate();
  if (!input.all_finite()) {
    throw std::invalid_argument("run_qlrd: non-finite input");
  }
  const Index h = input.rows(), w = input.cols();
  const Index r = params.effective_rank(h, w);

  // Warm start from the truncated QSVD so the factors do not sit on the
  // all-zero stationary point.
  Decomposition dec;
  {
    QsvdResult svd = qsvd(input);
    dec.a = QMatrix(h, r);
    dec.b = QMatrix(r, w);
    QMatrix vh = svd.v.conj_transpose();
    for (Index i = 0; i < r; ++i) {
      const double root = std::sqrt(svd.s(i));
      dec.a.w().col(i) = svd.u.w().col(i) * root;
      dec.a.x().col(i) = svd.u.x().col(i) * root;
      dec.a.y().col(i) = svd.u.y().col(i) * root;
      dec.a.z().col(i) = svd.u.z().col(i) * root;
      dec.b.w().row(i) = vh.w().row(i) * root;
      dec.b.x().row(i) = vh.x().row(i) * root;
      dec.b.y().row(i) = vh.y().row(i) * root;
      dec.b.z().row(i) = vh.z().row(i) * root;
    }
  }
  dec.z = dec.a * dec.b;
  dec.d = QMatrix(h, w);
  dec.e = QMatrix(h, w);
  QMatrix j = dec.a, p = dec.b;
  QMatrix y1(h, w), y2(h, w), y3(h, r), y4(r, w);
  double mu1 = params.mu1_init;

  const Index n_factor = std::min<Index>(params.n, r);

  for (int it = 0; it < params.max_iter; ++it) {
    const QMatrix z_prev = dec.z;
    const QMatrix d_prev = dec.d;

    dec.a = update_a(dec.z, dec.b, j, y2, y3, mu1);
    dec.b = update_b(dec.a, dec.z, p, y2, y4, mu1);
    dec.z = update_z(input, dec.d, dec.e, dec.a, dec.b, y1, y2, mu1);

    ShrinkParams shrink;
    shrink.lambda = params.alpha / mu1;
    shrink.p = params.p;
    shrink.n = n_factor;
    j = pssv_wsp_shrink(dec.a + y3 * (1.0 / mu1), shrink);
    p = pssv_wsp_shrink((dec.b + y4 * (1.0 / mu1)).conj_transpose(), shrink)
            .conj_transpose();

    dec.d = soft_threshold_columns(input - dec.z - dec.e + y1 * (1.0 / mu1),
                                   params.beta / mu1);
    dec.e = update_e(input, dec.z, dec.d, params.gamma, mu1);

    const QMatrix feas = input - dec.z - dec.d - dec.e;
    y1 += feas * mu1;
    y2 += (dec.z - dec.a * dec.b) * mu1;
    y3 += (dec.a - j) * mu1;
    y4 += (dec.b - p) * mu1;

    QlrdIterStats st;
    st.iter = it;
    st.mu1 = mu1;
    st.feasibility = feas.norm_fro();
    st.objective = params.beta * dec.d.norm_l1() +
                   params.gamma * dec.e.norm_fro() * dec.e.norm_fro() +
                   0.5 * mu1 * st.feasibility * st.feasibility;
    const double zc =
        (dec.z - z_prev).max_modulus() / std::max(dec.z.max_modulus(), 1e-12);
    const double dc =
        (dec.d - d_prev).max_modulus() / std::max(dec.d.max_modulus(), 1e-12);
    st.rel_change = std::max(zc, dc);
    dec.trace.push_back(st);
    dec.iterations = it + 1;

    mu1 = std::min(params.mu1_cap, mu1 * params.mu1_growth);

    if (st.rel_change < params.tol) {
      dec.converged = true;
      break;
    }
  }

  if (!dec.converged) {
    std::cerr << "warning: QLRD stopped at max_iter=" << params.max_iter
              << " with rel_change="
              << (dec.trace.empty() ? 0.0 : dec.trace.back().rel_change)
              << "\n";
  }
  return dec;
}

QlvflResult run_qlvfl(const QMatrix &l, const QlsParams &qls_params,
                      const QlrdParams &qlrd_params) {
  QlvflResult res;
  res.qls = run_qls(l, qls_params);
  res.dec = run_qlrd(res.qls.lighting, qlrd_params);
  return res;
}

}  // namespace qivif
