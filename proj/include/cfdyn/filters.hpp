#pragma once

#include "cfdyn/signal.hpp"

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace cfdyn {

enum class FilterKind { lowpass, highpass };

/// Strategy for the first P outputs of a recurrence, before it has enough
/// history to run.
enum class FilterInit { zeros, hold_input };

/// Digital IIR filter as numerator/denominator coefficient arrays, both of
/// length order+1, normalized so a[0] == 1. The recurrence implemented by
/// iir_filter is
///
///   out[n] = sum_k b[k] * in[n-k] - sum_{k>=1} a[k] * out[n-k].
struct FilterCoefficients {
  Eigen::VectorXd b;
  Eigen::VectorXd a;
  int order = 0;
  FilterKind kind = FilterKind::lowpass;
  double cutoff_hz = 0.0;
  double sample_rate_hz = 0.0;
};

/// High/low-pass pair sharing the denominator (and the cutoff). A perfect
/// pair satisfies low.b[k] == high.a[k] - high.b[k], which makes the
/// transfer functions sum to one.
struct ComplementaryPair {
  FilterCoefficients high;
  FilterCoefficients low;
  bool perfect = false;
};

/// Digital Butterworth design: analog prototype poles, lowpass/highpass
/// analog transform, bilinear transform with prewarped cutoff
/// w_a = 2*fs*tan(pi*fc/fs). The passband edge gain is pinned exactly
/// (DC for lowpass, Nyquist for highpass).
/// Requires 1 <= order <= 8 and 0 < cutoff_hz < fs/2.
FilterCoefficients design_butterworth(int order, double cutoff_hz,
                                      double sample_rate_hz, FilterKind kind);

/// Pair whose high leg is the exact complement of the given lowpass:
/// high.a = low.a, high.b[k] = low.a[k] - low.b[k].
ComplementaryPair make_perfect_complement(const FilterCoefficients& low);

/// Independently designed Butterworth lowpass and highpass at a shared
/// cutoff. Not a perfect complement for order >= 2 (for order 1 the two
/// constructions coincide).
ComplementaryPair make_shared_cutoff_pair(int order, double cutoff_hz,
                                          double sample_rate_hz);

/// Single forward pass of the recurrence, per channel. The first P outputs
/// are set by `init` (zeros, or a copy of the input). Requires at least
/// P+1 steps.
Signal iir_filter(const FilterCoefficients& coeffs, const Signal& y,
                  FilterInit init = FilterInit::zeros);

/// Zero-phase forward-backward filtering. The signal is extended at both
/// ends by odd-symmetric reflection of length min(3*(P+1), N-1), filtered
/// forward and backward with steady-state initial conditions, and trimmed.
/// Requires N >= 3*(P+1).
Signal filtfilt(const FilterCoefficients& coeffs, const Signal& y);

/// Fused complementary recurrence
///
///   out[n] = sum_k high.b[k]*y_high[n-k] + sum_k low.b[k]*y_low[n-k]
///            - sum_{k>=1} a[k]*out[n-k],
///
/// with the first P outputs taken from `init_values` when given, otherwise
/// from `init` (hold_input copies y_low). The two legs must share the
/// denominator and the input shapes must match.
Signal complementary_combine(const ComplementaryPair& pair, const Signal& y_high,
                             const Signal& y_low,
                             FilterInit init = FilterInit::zeros,
                             const Signal* init_values = nullptr);

struct ResponsePoint {
  double frequency_hz;
  double magnitude;
  double phase_rad;
};

/// Transfer function evaluated on the unit circle at n_points uniformly
/// spaced frequencies spanning [0, Nyquist].
std::vector<ResponsePoint> frequency_response(const FilterCoefficients& coeffs,
                                              int n_points);

/// H(e^{jw}) at a single angular frequency w in [0, pi].
std::complex<double> evaluate_response(const FilterCoefficients& coeffs, double omega);

/// Roots of the denominator polynomial (companion-matrix eigenvalues).
std::vector<std::complex<double>> denominator_roots(const FilterCoefficients& coeffs);

/// True when every denominator root has magnitude < 1 - margin.
bool is_stable(const FilterCoefficients& coeffs, double margin = 0.0);

namespace filter_detail {
/// Steady-state DF2T state for a unit step scaled by the first sample;
/// used by filtfilt so constant inputs pass through without transients.
Eigen::VectorXd steady_state(const Eigen::VectorXd& b, const Eigen::VectorXd& a);

/// Direct-form II transposed pass over one channel with explicit initial
/// state (length P). Returns the outputs; `state` is updated in place.
Eigen::RowVectorXd df2t(const Eigen::VectorXd& b, const Eigen::VectorXd& a,
                        const Eigen::RowVectorXd& x, Eigen::VectorXd& state);

/// Odd-symmetric edge extension length used by filtfilt for a signal of
/// n steps: min(3*(order+1), n-1).
Eigen::Index pad_length(int order, Eigen::Index n_steps);
}  // namespace filter_detail

}  // namespace cfdyn
