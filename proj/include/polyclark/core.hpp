#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyclark {

using Complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Error hierarchy. Everything the library throws derives from Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct PoleError : Error {
  using Error::Error;
};
struct SingularityError : Error {
  using Error::Error;
};
struct RootFindingError : Error {
  using Error::Error;
};
struct DegenerateError : Error {
  using Error::Error;
};
struct ResolutionError : Error {
  using Error::Error;
};
struct AliasingError : Error {
  using Error::Error;
};
struct NegativeMassError : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

/// A point of the open polydisc: every coordinate has modulus < 1.
class DiscPoint {
 public:
  explicit DiscPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("DiscPoint needs at least one coordinate");
    for (const auto& z : coords_) {
      if (!(std::abs(z) < 1.0)) throw DomainError("DiscPoint coordinate outside the open unit disc");
    }
  }
  DiscPoint(std::initializer_list<Complex> coords) : DiscPoint(std::vector<Complex>(coords)) {}

  static DiscPoint origin(std::size_t n) { return DiscPoint(std::vector<Complex>(n, 0.0)); }

  std::size_t size() const { return coords_.size(); }
  const Complex& operator[](std::size_t j) const { return coords_[j]; }
  std::span<const Complex> coords() const { return coords_; }

 private:
  std::vector<Complex> coords_;
};

/// A point of the torus. Inputs within 1e-8 of the circle are projected onto it.
class TorusPoint {
 public:
  static constexpr double renormalize_tolerance = 1e-8;

  explicit TorusPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("TorusPoint needs at least one coordinate");
    for (auto& z : coords_) {
      const double r = std::abs(z);
      if (!(std::abs(r - 1.0) <= renormalize_tolerance)) {
        throw DomainError("TorusPoint coordinate is not unimodular");
      }
      z /= r;
    }
  }
  TorusPoint(std::initializer_list<Complex> coords) : TorusPoint(std::vector<Complex>(coords)) {}

  /// Angles in radians.
  static TorusPoint from_angles(std::span<const double> angles) {
    std::vector<Complex> c;
    c.reserve(angles.size());
    for (double t : angles) c.push_back(std::polar(1.0, t));
    return TorusPoint(std::move(c));
  }

  std::size_t size() const { return coords_.size(); }
  const Complex& operator[](std::size_t j) const { return coords_[j]; }
  std::span<const Complex> coords() const { return coords_; }

 private:
  std::vector<Complex> coords_;
};

/// Projects a near-unimodular scalar onto the circle; rejects anything farther than 1e-8.
inline Complex unimodular(Complex a) {
  const double r = std::abs(a);
  if (!(std::abs(r - 1.0) <= TorusPoint::renormalize_tolerance)) {
    throw DomainError("parameter is not unimodular");
  }
  return a / r;
}

/// e^{2 pi i t}, exact at multiples of a quarter turn.
inline Complex from_turns(double turns) {
  double t = turns - std::floor(turns);
  if (t == 0.0) return {1.0, 0.0};
  if (t == 0.25) return {0.0, 1.0};
  if (t == 0.5) return {-1.0, 0.0};
  if (t == 0.75) return {0.0, -1.0};
  return std::polar(1.0, two_pi * t);
}

}  // namespace polyclark
