#include "cfdyn/filters.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfdyn {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Polynomial coefficients (descending-free, index = delay) from roots.
Eigen::VectorXd poly_from_roots(const std::vector<cd>& roots) {
  std::vector<cd> c(roots.size() + 1, cd(0.0, 0.0));
  c[0] = cd(1.0, 0.0);
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j > 0; --j) c[j] -= roots[i] * c[j - 1];
  Eigen::VectorXd out(static_cast<Eigen::Index>(c.size()));
  for (size_t i = 0; i < c.size(); ++i) out[static_cast<Eigen::Index>(i)] = c[i].real();
  return out;
}

cd evaluate_poly(const Eigen::VectorXd& coeffs, cd z_inv) {
  cd acc(0.0, 0.0);
  cd p(1.0, 0.0);
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    acc += coeffs[k] * p;
    p *= z_inv;
  }
  return acc;
}

}  // namespace

FilterCoefficients design_butterworth(int order, double cutoff_hz,
                                      double sample_rate_hz, FilterKind kind) {
  if (order < 1 || order > 8)
    throw std::invalid_argument("design_butterworth: order must be in [1, 8]");
  if (!(sample_rate_hz > 0.0))
    throw std::invalid_argument("design_butterworth: sample rate must be positive");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 * sample_rate_hz))
    throw std::invalid_argument("design_butterworth: cutoff must be in (0, fs/2)");

  const double fs2 = 2.0 * sample_rate_hz;
  const double w_analog = fs2 * std::tan(kPi * cutoff_hz / sample_rate_hz);

  // Prototype poles on the unit circle, left half plane.
  std::vector<cd> poles(static_cast<size_t>(order));
  for (int k = 1; k <= order; ++k) {
    const double angle = kPi * static_cast<double>(2 * k + order - 1) /
                         static_cast<double>(2 * order);
    poles[static_cast<size_t>(k - 1)] = std::exp(cd(0.0, angle));
  }

  std::vector<cd> zeros;
  if (kind == FilterKind::lowpass) {
    for (auto& p : poles) p *= w_analog;
    // All zeros at infinity.
  } else {
    for (auto& p : poles) p = w_analog / p;
    zeros.assign(static_cast<size_t>(order), cd(0.0, 0.0));
  }

  // Bilinear transform; zeros at infinity land on z = -1.
  std::vector<cd> zpoles, zzeros;
  for (const auto& p : poles) zpoles.push_back((fs2 + p) / (fs2 - p));
  for (const auto& z : zeros) zzeros.push_back((fs2 + z) / (fs2 - z));
  while (zzeros.size() < zpoles.size()) zzeros.push_back(cd(-1.0, 0.0));

  FilterCoefficients out;
  out.b = poly_from_roots(zzeros);
  out.a = poly_from_roots(zpoles);
  out.order = order;
  out.kind = kind;
  out.cutoff_hz = cutoff_hz;
  out.sample_rate_hz = sample_rate_hz;

  out.b /= out.a[0];
  out.a /= out.a[0];

  // Pin the passband edge gain: DC for lowpass, Nyquist for highpass.
  const cd z_inv = (kind == FilterKind::lowpass) ? cd(1.0, 0.0) : cd(-1.0, 0.0);
  const cd gain = evaluate_poly(out.b, z_inv) / evaluate_poly(out.a, z_inv);
  out.b /= gain.real();
  return out;
}

ComplementaryPair make_perfect_complement(const FilterCoefficients& low) {
  if (low.kind != FilterKind::lowpass)
    throw std::invalid_argument("make_perfect_complement: expected a lowpass design");
  ComplementaryPair pair;
  pair.low = low;
  pair.high = low;
  pair.high.kind = FilterKind::highpass;
  pair.high.b = low.a - low.b;
  pair.perfect = true;
  return pair;
}

ComplementaryPair make_shared_cutoff_pair(int order, double cutoff_hz,
                                          double sample_rate_hz) {
  ComplementaryPair pair;
  pair.low = design_butterworth(order, cutoff_hz, sample_rate_hz, FilterKind::lowpass);
  pair.high = design_butterworth(order, cutoff_hz, sample_rate_hz, FilterKind::highpass);
  pair.perfect = false;
  return pair;
}

Signal iir_filter(const FilterCoefficients& coeffs, const Signal& y, FilterInit init) {
  validate(y);
  const int p = coeffs.order;
  const Eigen::Index n_steps = y.steps();
  if (n_steps < p + 1)
    throw std::invalid_argument("iir_filter: signal too short for the filter order");

  Signal out = y;
  for (Eigen::Index c = 0; c < y.channels(); ++c) {
    for (Eigen::Index n = 0; n < p; ++n)
      out.samples(c, n) = (init == FilterInit::zeros) ? 0.0 : y.samples(c, n);
    for (Eigen::Index n = p; n < n_steps; ++n) {
      double acc = 0.0;
      for (int k = 0; k <= p; ++k) acc += coeffs.b[k] * y.samples(c, n - k);
      for (int k = 1; k <= p; ++k) acc -= coeffs.a[k] * out.samples(c, n - k);
      out.samples(c, n) = acc;
    }
  }
  return out;
}

namespace filter_detail {

Eigen::VectorXd steady_state(const Eigen::VectorXd& b, const Eigen::VectorXd& a) {
  const Eigen::Index p = a.size() - 1;
  if (p < 1) return Eigen::VectorXd();
  // Solve (I - A^T) zi = b[1:] - a[1:] * b[0] with A the companion matrix,
  // i.e. the state reached by a unit step once the output has settled.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd rhs(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    m(i, i) += 1.0;
    m(i, 0) += a[i + 1];
    if (i + 1 < p) m(i, i + 1) -= 1.0;
    rhs[i] = b[i + 1] - a[i + 1] * b[0];
  }
  return m.colPivHouseholderQr().solve(rhs);
}

Eigen::RowVectorXd df2t(const Eigen::VectorXd& b, const Eigen::VectorXd& a,
                        const Eigen::RowVectorXd& x, Eigen::VectorXd& state) {
  const Eigen::Index p = a.size() - 1;
  Eigen::RowVectorXd out(x.size());
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    const double xn = x[n];
    const double yn = b[0] * xn + (p > 0 ? state[0] : 0.0);
    out[n] = yn;
    for (Eigen::Index i = 0; i + 1 < p; ++i)
      state[i] = state[i + 1] + b[i + 1] * xn - a[i + 1] * yn;
    if (p > 0) state[p - 1] = b[p] * xn - a[p] * yn;
  }
  return out;
}

Eigen::Index pad_length(int order, Eigen::Index n_steps) {
  return std::min<Eigen::Index>(3 * (order + 1), n_steps - 1);
}

}  // namespace filter_detail

Signal filtfilt(const FilterCoefficients& coeffs, const Signal& y) {
  validate(y);
  const int p = coeffs.order;
  const Eigen::Index n = y.steps();
  if (n < 3 * (p + 1))
    throw std::invalid_argument("filtfilt: signal too short for edge handling");

  const Eigen::Index pad = filter_detail::pad_length(p, n);
  const Eigen::VectorXd zi = filter_detail::steady_state(coeffs.b, coeffs.a);

  Signal out = y;
  for (Eigen::Index c = 0; c < y.channels(); ++c) {
    const Eigen::RowVectorXd x = y.samples.row(c);

    Eigen::RowVectorXd ext(n + 2 * pad);
    for (Eigen::Index i = 0; i < pad; ++i) ext[i] = 2.0 * x[0] - x[pad - i];
    ext.segment(pad, n) = x;
    for (Eigen::Index i = 0; i < pad; ++i)
      ext[pad + n + i] = 2.0 * x[n - 1] - x[n - 2 - i];

    Eigen::VectorXd state = zi * ext[0];
    Eigen::RowVectorXd fwd = filter_detail::df2t(coeffs.b, coeffs.a, ext, state);

    fwd.reverseInPlace();
    state = zi * fwd[0];
    Eigen::RowVectorXd bwd = filter_detail::df2t(coeffs.b, coeffs.a, fwd, state);
    bwd.reverseInPlace();

    out.samples.row(c) = bwd.segment(pad, n);
  }
  return out;
}

Signal complementary_combine(const ComplementaryPair& pair, const Signal& y_high,
                             const Signal& y_low, FilterInit init,
                             const Signal* init_values) {
  validate(y_high);
  validate(y_low);
  if (pair.high.a != pair.low.a)
    throw std::invalid_argument("complementary_combine: legs must share the denominator");
  if (y_high.samples.rows() != y_low.samples.rows() ||
      y_high.samples.cols() != y_low.samples.cols())
    throw std::invalid_argument("complementary_combine: input shape mismatch");
  const int p = pair.high.order;
  const Eigen::Index n_steps = y_high.steps();
  if (n_steps < p + 1)
    throw std::invalid_argument("complementary_combine: signal too short");
  if (init_values != nullptr &&
      (init_values->channels() != y_high.channels() || init_values->steps() < p))
    throw std::invalid_argument("complementary_combine: init_values too short");

  const Eigen::VectorXd& a = pair.high.a;
  const Eigen::VectorXd& bh = pair.high.b;
  const Eigen::VectorXd& bl = pair.low.b;

  Signal out = y_high;
  for (Eigen::Index c = 0; c < y_high.channels(); ++c) {
    for (Eigen::Index n = 0; n < p; ++n) {
      if (init_values != nullptr)
        out.samples(c, n) = init_values->samples(c, n);
      else
        out.samples(c, n) = (init == FilterInit::zeros) ? 0.0 : y_low.samples(c, n);
    }
    for (Eigen::Index n = p; n < n_steps; ++n) {
      double acc = 0.0;
      for (int k = 0; k <= p; ++k)
        acc += bh[k] * y_high.samples(c, n - k) + bl[k] * y_low.samples(c, n - k);
      for (int k = 1; k <= p; ++k) acc -= a[k] * out.samples(c, n - k);
      out.samples(c, n) = acc;
    }
  }
  return out;
}

std::complex<double> evaluate_response(const FilterCoefficients& coeffs, double omega) {
  const cd z_inv = std::exp(cd(0.0, -omega));
  return evaluate_poly(coeffs.b, z_inv) / evaluate_poly(coeffs.a, z_inv);
}

std::vector<ResponsePoint> frequency_response(const FilterCoefficients& coeffs,
                                              int n_points) {
  if (n_points < 2)
    throw std::invalid_argument("frequency_response: need at least 2 points");
  std::vector<ResponsePoint> out;
  out.reserve(static_cast<size_t>(n_points));
  const double nyquist = 0.5 * coeffs.sample_rate_hz;
  for (int i = 0; i < n_points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n_points - 1);
    const cd h = evaluate_response(coeffs, kPi * frac);
    out.push_back({nyquist * frac, std::abs(h), std::arg(h)});
  }
  return out;
}

std::vector<std::complex<double>> denominator_roots(const FilterCoefficients& coeffs) {
  const Eigen::Index p = coeffs.a.size() - 1;
  if (p < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) companion(0, i) = -coeffs.a[i + 1] / coeffs.a[0];
  for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<cd> roots;
  for (Eigen::Index i = 0; i < p; ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

bool is_stable(const FilterCoefficients& coeffs, double margin) {
  for (const auto& r : denominator_roots(coeffs))
    if (std::abs(r) >= 1.0 - margin) return false;
  return true;
}

}  // namespace cfdyn
