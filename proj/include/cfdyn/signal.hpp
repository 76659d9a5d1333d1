#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

namespace cfdyn {

/// Uniformly sampled multi-channel time series. Rows are channels, columns
/// are time steps; immutable by convention (operations return new values).
struct Signal {
  Eigen::MatrixXd samples;  // channels x steps
  double sample_rate_hz = 1.0;
  double start_time_s = 0.0;

  Eigen::Index channels() const { return samples.rows(); }
  Eigen::Index steps() const { return samples.cols(); }
  double dt() const { return 1.0 / sample_rate_hz; }
};

/// Validates shape, rate and finiteness; throws std::invalid_argument.
void validate(const Signal& s);

/// Additive i.i.d. Gaussian sensor noise.
struct NoiseSpec {
  double variance = 0.0;  // sigma^2
  std::uint64_t seed = 0;
};

/// y + eps, eps ~ N(0, variance), deterministic for a given seed.
Signal add_noise(const Signal& signal, const NoiseSpec& noise);

/// sqrt of the mean squared difference over all channels and steps.
/// Throws on shape or rate mismatch.
double rmse(const Signal& a, const Signal& b);

/// Running root-mean-squared error: entry n is the RMSE accumulated over
/// steps 0..n (mean over steps and channels). Single-channel output at the
/// input sample rate.
Signal rmse_over_time(const Signal& pred, const Signal& truth);

/// Columns [begin, begin+count) as a new Signal; start time shifts
/// accordingly, the sample rate is preserved.
Signal slice(const Signal& s, Eigen::Index begin, Eigen::Index count);

/// Concatenation along time. Rates and channel counts must match.
Signal concat(const Signal& a, const Signal& b);

/// CSV interchange: header "t,y0,y1,...", comma separated, '.' decimal,
/// LF line endings. The time column must be uniform within 1e-9 * dt.
Signal read_csv(const std::string& path);
void write_csv(const Signal& s, const std::string& path);

}  // namespace cfdyn
