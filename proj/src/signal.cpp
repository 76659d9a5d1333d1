#include "cfdyn/signal.hpp"

#include "cfdyn/rng.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cfdyn {

void validate(const Signal& s) {
  if (s.samples.rows() < 1 || s.samples.cols() < 1)
    throw std::invalid_argument("signal: needs at least one channel and one step");
  if (!(s.sample_rate_hz > 0.0))
    throw std::invalid_argument("signal: sample rate must be positive");
  if (!s.samples.allFinite())
    throw std::invalid_argument("signal: samples must be finite");
}

Signal add_noise(const Signal& signal, const NoiseSpec& noise) {
  validate(signal);
  if (noise.variance < 0.0)
    throw std::invalid_argument("add_noise: variance must be >= 0");
  Signal out = signal;
  if (noise.variance == 0.0) return out;
  Rng rng(noise.seed);
  const double sigma = std::sqrt(noise.variance);
  for (Eigen::Index c = 0; c < out.samples.rows(); ++c)
    for (Eigen::Index n = 0; n < out.samples.cols(); ++n)
      out.samples(c, n) += sigma * rng.gaussian();
  return out;
}

namespace {

void require_same_shape(const Signal& a, const Signal& b, const char* who) {
  if (a.samples.rows() != b.samples.rows() || a.samples.cols() != b.samples.cols())
    throw std::invalid_argument(std::string(who) + ": shape mismatch");
  if (a.sample_rate_hz != b.sample_rate_hz)
    throw std::invalid_argument(std::string(who) + ": sample rate mismatch");
}

}  // namespace

double rmse(const Signal& a, const Signal& b) {
  require_same_shape(a, b, "rmse");
  const double n = static_cast<double>(a.samples.size());
  return std::sqrt((a.samples - b.samples).squaredNorm() / n);
}

Signal rmse_over_time(const Signal& pred, const Signal& truth) {
  require_same_shape(pred, truth, "rmse_over_time");
  const Eigen::Index n_steps = pred.steps();
  const double d = static_cast<double>(pred.channels());
  Eigen::MatrixXd curve(1, n_steps);
  double acc = 0.0;
  for (Eigen::Index n = 0; n < n_steps; ++n) {
    acc += (pred.samples.col(n) - truth.samples.col(n)).squaredNorm();
    curve(0, n) = std::sqrt(acc / (static_cast<double>(n + 1) * d));
  }
  return Signal{std::move(curve), pred.sample_rate_hz, pred.start_time_s};
}

Signal slice(const Signal& s, Eigen::Index begin, Eigen::Index count) {
  if (begin < 0 || count < 1 || begin + count > s.steps())
    throw std::out_of_range("slice: window out of range");
  Signal out;
  out.samples = s.samples.middleCols(begin, count);
  out.sample_rate_hz = s.sample_rate_hz;
  out.start_time_s = s.start_time_s + static_cast<double>(begin) * s.dt();
  return out;
}

Signal concat(const Signal& a, const Signal& b) {
  if (a.channels() != b.channels())
    throw std::invalid_argument("concat: channel mismatch");
  if (a.sample_rate_hz != b.sample_rate_hz)
    throw std::invalid_argument("concat: sample rate mismatch");
  Signal out;
  out.samples.resize(a.channels(), a.steps() + b.steps());
  out.samples << a.samples, b.samples;
  out.sample_rate_hz = a.sample_rate_hz;
  out.start_time_s = a.start_time_s;
  return out;
}

namespace {

// 17 significant digits round-trip doubles exactly.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& tok, const std::string& context) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::runtime_error("csv: bad number '" + tok + "' " + context);
  return v;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Signal read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);
  const auto header = split_line(line);
  if (header.empty() || header[0] != "t")
    throw std::runtime_error("csv: first column must be 't' in " + path);
  const Eigen::Index n_channels = static_cast<Eigen::Index>(header.size()) - 1;
  if (n_channels < 1) throw std::runtime_error("csv: no data columns in " + path);

  std::vector<double> times;
  std::vector<double> values;  // row-major (step-major) buffer
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto toks = split_line(line);
    if (static_cast<Eigen::Index>(toks.size()) != n_channels + 1)
      throw std::runtime_error("csv: ragged row in " + path);
    times.push_back(parse_double(toks[0], "in time column"));
    for (Eigen::Index c = 0; c < n_channels; ++c)
      values.push_back(parse_double(toks[static_cast<size_t>(c) + 1], "in data column"));
  }
  if (times.empty()) throw std::runtime_error("csv: empty signal in " + path);

  const Eigen::Index n_steps = static_cast<Eigen::Index>(times.size());
  Signal out;
  out.samples.resize(n_channels, n_steps);
  for (Eigen::Index n = 0; n < n_steps; ++n)
    for (Eigen::Index c = 0; c < n_channels; ++c)
      out.samples(c, n) = values[static_cast<size_t>(n * n_channels + c)];
  out.start_time_s = times.front();

  if (n_steps == 1)
    throw std::runtime_error("csv: cannot infer sample rate from a single row in " + path);
  const double dt = (times.back() - times.front()) / static_cast<double>(n_steps - 1);
  if (!(dt > 0.0)) throw std::runtime_error("csv: time column must increase in " + path);
  for (Eigen::Index n = 1; n < n_steps; ++n) {
    const double gap = times[static_cast<size_t>(n)] - times[static_cast<size_t>(n - 1)];
    if (std::abs(gap - dt) > 1e-9 * dt)
      throw std::runtime_error("csv: non-uniform sampling in " + path);
  }
  out.sample_rate_hz = 1.0 / dt;
  validate(out);
  return out;
}

void write_csv(const Signal& s, const std::string& path) {
  validate(s);
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  out << "t";
  for (Eigen::Index c = 0; c < s.channels(); ++c) out << ",y" << c;
  out << "\n";
  const double dt = s.dt();
  for (Eigen::Index n = 0; n < s.steps(); ++n) {
    out << format_double(s.start_time_s + static_cast<double>(n) * dt);
    for (Eigen::Index c = 0; c < s.channels(); ++c)
      out << "," << format_double(s.samples(c, n));
    out << "\n";
  }
  if (!out) throw std::runtime_error("csv: write failed for " + path);
}

}  // namespace cfdyn
