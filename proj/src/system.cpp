#include "fstl/system.hpp"

#include <cmath>

namespace fstl {

double wrap_angle(double theta) {
  double r = std::remainder(theta, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

SystemModel unicycle_model(NoiseSpec noise) {
  SystemModel model;
  model.n = 3;
  model.m = 2;
  model.noise = std::move(noise);
  model.wrap_indices = {2};
  model.f = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(x.size()); };
  model.g = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(3, 2);
    g(0, 0) = std::cos(x[2]);
    g(1, 0) = std::sin(x[2]);
    g(2, 1) = 1.0;
    return g;
  };

  StructuredSplit s;
  s.n1 = 2;
  s.n2 = 1;
  s.m1 = 1;
  s.m2 = 1;
  s.f1 = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(2); };
  s.f2 = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(1); };
  s.g11 = [](const Eigen::VectorXd& x2) {
    Eigen::MatrixXd g(2, 1);
    g(0, 0) = std::cos(x2[0]);
    g(1, 0) = std::sin(x2[0]);
    return g;
  };
  s.g21 = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(1, 1); };
  s.g22 = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(1, 1); };
  s.df1_dx1 = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(2, 2); };
  s.df2_dx = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(1, 3); };
  s.dg11_dx2 = [](const Eigen::VectorXd& x2, int) {
    Eigen::MatrixXd d(2, 1);
    d(0, 0) = -std::sin(x2[0]);
    d(1, 0) = std::cos(x2[0]);
    return d;
  };
  s.dg21_dx = [](const Eigen::VectorXd&, int) { return Eigen::MatrixXd::Zero(1, 1); };
  s.dg22_dx = [](const Eigen::VectorXd&, int) { return Eigen::MatrixXd::Zero(1, 1); };
  model.structure = std::move(s);
  return model;
}

SystemModel single_integrator_model(NoiseSpec noise) {
  SystemModel model;
  model.n = 2;
  model.m = 2;
  model.noise = std::move(noise);
  model.f = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(x.size()); };
  model.g = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(2, 2); };
  return model;
}

}  // namespace fstl
