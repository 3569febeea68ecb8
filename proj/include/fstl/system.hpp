// System models in control-affine form xdot = f(x) + g(x) u + w, with an
// optional two-block structured split used by the unicycle-type laws.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace fstl {

struct NoiseSpec {
  Eigen::VectorXd cov_diag;        // per-coordinate variance (units^2)
  double clip_sigmas = 4.0;        // <= 0 disables clipping

  bool any() const { return cov_diag.size() > 0 && cov_diag.maxCoeff() > 0.0; }
};

/// Draws one process-noise vector per integration step, held constant across
/// the step. Each coordinate is zero-mean Gaussian with the spec's variance,
/// clipped at clip_sigmas standard deviations to keep the noise set bounded.
class NoiseSampler {
 public:
  NoiseSampler(const NoiseSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  Eigen::VectorXd sample() {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(spec_.cov_diag.size());
    for (int i = 0; i < w.size(); ++i) {
      const double sigma = std::sqrt(std::max(0.0, spec_.cov_diag[i]));
      if (sigma == 0.0) continue;
      double z = normal_(rng_);
      if (spec_.clip_sigmas > 0.0)
        z = std::clamp(z, -spec_.clip_sigmas, spec_.clip_sigmas);
      w[i] = sigma * z;
    }
    return w;
  }

 private:
  NoiseSpec spec_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Block accessors and analytic partials for the structured form
///   x1dot = f1(x1) + g11(x2) u1            + w1
///   x2dot = f2(x)  + g21(x) u1 + g22(x) u2 + w2.
struct StructuredSplit {
  int n1 = 0, n2 = 0, m1 = 0, m2 = 0;

  std::function<Eigen::VectorXd(const Eigen::VectorXd& x1)> f1;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& x)> f2;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x2)> g11;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x)> g21;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x)> g22;

  // Partials; the j argument indexes the differentiation coordinate.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x1)> df1_dx1;          // n1 x n1
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x)> df2_dx;            // n2 x n
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x2, int j)> dg11_dx2;  // n1 x m1
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x, int j)> dg21_dx;    // n2 x m1
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& x, int j)> dg22_dx;    // n2 x m2
};

struct SystemModel {
  int n = 0;
  int m = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> f;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> g;
  NoiseSpec noise;
  std::optional<StructuredSplit> structure;
  std::vector<int> wrap_indices;  // angle coordinates wrapped after each step
};

/// Wraps to (-pi, pi].
double wrap_angle(double theta);

/// Unicycle: state (x, y, theta), input (v, omega);
/// xdot = v cos(theta), ydot = v sin(theta), thetadot = omega.
SystemModel unicycle_model(NoiseSpec noise = {});

/// Planar single integrator xdot = u (f = 0, g = I). Satisfies the
/// unstructured controllability setting of the general law.
SystemModel single_integrator_model(NoiseSpec noise = {});

}  // namespace fstl
