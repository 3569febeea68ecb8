// Atomic predicates: parametric h-functions over planar positions.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fstl {

/// Radius below which gradients of circle predicates are treated as undefined.
inline constexpr double kSingularFloor = 1e-9;

/// A named atomic predicate. Truth is the sign of h(p); the three shapes are
///   circle-inside : h = r - |p - c|
///   circle-outside: h = |p - c| - r
///   halfplane     : h = n.p - b   (n normalized at construction)
struct Predicate {
  enum class Shape { CircleInside, CircleOutside, Halfplane };

  std::string name;
  Shape shape = Shape::Halfplane;
  Eigen::Vector2d center{0.0, 0.0};  // circle center, or halfplane normal
  double scalar = 0.0;               // circle radius, or halfplane offset

  static Predicate circle_inside(std::string name, const Eigen::Vector2d& c, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("predicate '" + name + "': radius must be > 0");
    return Predicate{std::move(name), Shape::CircleInside, c, r};
  }

  static Predicate circle_outside(std::string name, const Eigen::Vector2d& c, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("predicate '" + name + "': radius must be > 0");
    return Predicate{std::move(name), Shape::CircleOutside, c, r};
  }

  /// Normalizes the normal; the offset is rescaled so the zero set is preserved.
  static Predicate halfplane(std::string name, const Eigen::Vector2d& n, double b) {
    const double len = n.norm();
    if (!(len > 0.0)) throw std::invalid_argument("predicate '" + name + "': zero normal");
    return Predicate{std::move(name), Shape::Halfplane, n / len, b / len};
  }

  double value(const Eigen::Vector2d& p) const {
    switch (shape) {
      case Shape::CircleInside: return scalar - (p - center).norm();
      case Shape::CircleOutside: return (p - center).norm() - scalar;
      case Shape::Halfplane: return center.dot(p) - scalar;
    }
    return 0.0;
  }

  /// True unless p sits on a circle center, where the distance gradient blows up.
  bool gradient_defined(const Eigen::Vector2d& p) const {
    if (shape == Shape::Halfplane) return true;
    return (p - center).norm() >= kSingularFloor;
  }

  Eigen::Vector2d gradient(const Eigen::Vector2d& p) const {
    switch (shape) {
      case Shape::CircleInside: {
        const Eigen::Vector2d e = p - center;
        const double d = e.norm();
        if (d < kSingularFloor) throw std::domain_error("gradient undefined at circle center");
        return -e / d;
      }
      case Shape::CircleOutside: {
        const Eigen::Vector2d e = p - center;
        const double d = e.norm();
        if (d < kSingularFloor) throw std::domain_error("gradient undefined at circle center");
        return e / d;
      }
      case Shape::Halfplane: return center;
    }
    return Eigen::Vector2d::Zero();
  }

  Eigen::Matrix2d hessian(const Eigen::Vector2d& p) const {
    switch (shape) {
      case Shape::CircleInside:
      case Shape::CircleOutside: {
        const Eigen::Vector2d e = p - center;
        const double d = e.norm();
        if (d < kSingularFloor) throw std::domain_error("hessian undefined at circle center");
        const Eigen::Vector2d eh = e / d;
        Eigen::Matrix2d h = (Eigen::Matrix2d::Identity() - eh * eh.transpose()) / d;
        return shape == Shape::CircleInside ? Eigen::Matrix2d(-h) : h;
      }
      case Shape::Halfplane: return Eigen::Matrix2d::Zero();
    }
    return Eigen::Matrix2d::Zero();
  }
};

/// Declared predicates, addressable by name or dense index.
class PredicateTable {
 public:
  int add(Predicate p) {
    if (by_name_.count(p.name)) throw std::invalid_argument("duplicate predicate '" + p.name + "'");
    const int idx = static_cast<int>(preds_.size());
    by_name_.emplace(p.name, idx);
    preds_.push_back(std::move(p));
    return idx;
  }

  int index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
  }

  const Predicate& at(int idx) const { return preds_.at(static_cast<size_t>(idx)); }
  int size() const { return static_cast<int>(preds_.size()); }

 private:
  std::vector<Predicate> preds_;
  std::map<std::string, int> by_name_;
};

}  // namespace fstl
