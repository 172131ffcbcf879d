#pragma once

#include <complex>
#include <concepts>
#include <type_traits>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace semiclassic {

/// Unit system shared by every computation: particle mass and reduced
/// Planck constant. Defaults to m = hbar = 1.
struct PhysicalContext {
  double mass = 1.0;
  double hbar = 1.0;

  void validate() const;
};

/// V(x) = height for |x - center| < width/2, zero outside. Exactly on an
/// edge the mean height/2 is returned.
struct SquareBarrier {
  double height = 1.0;
  double width = 1.0;
  double center = 0.0;
};

/// V(x) = amplitude * exp(-((x - center)/width)^2)
struct GaussianBump {
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
};

/// V(x) = height * sech^2((x - center)/width)
struct EckartBarrier {
  double height = 1.0;
  double width = 1.0;
  double center = 0.0;
};

/// V(x) = height - curvature * (x - center)^2 / 2
struct ParabolicBarrier {
  double height = 1.0;
  double curvature = 1.0;
  double center = 0.0;
};

/// V(x) = stiffness * x^2 / 2
struct HarmonicWell {
  double stiffness = 1.0;
};

/// V(x) = offset + slope * x
struct LinearRamp {
  double offset = 0.0;
  double slope = 1.0;
};

/// Natural cubic spline through (x, V) samples. Strictly increasing x,
/// at least four points.
class TabulatedPotential {
 public:
  TabulatedPotential(std::vector<double> xs, std::vector<double> vs);

  double value(double x) const;
  double second_derivative(double x) const;

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& vs() const { return vs_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> xs_;
  std::vector<double> vs_;
  std::vector<double> m_;  // spline second derivatives at the knots
};

class PotentialModel {
 public:
  using Form = std::variant<SquareBarrier, GaussianBump, EckartBarrier, ParabolicBarrier,
                            HarmonicWell, LinearRamp, TabulatedPotential>;

  // Throws Error{Config} when a width/stiffness parameter is not positive.
  PotentialModel(Form form);  // NOLINT(google-explicit-constructor)

  template <class Model>
    requires(!std::same_as<std::decay_t<Model>, Form> &&
             !std::same_as<std::decay_t<Model>, PotentialModel> &&
             std::constructible_from<Form, Model>)
  PotentialModel(Model model)  // NOLINT(google-explicit-constructor)
      : PotentialModel(Form(std::move(model))) {}

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  const Form& form() const { return form_; }
  std::string_view name() const;

  /// True for models with jump discontinuities (SquareBarrier).
  bool is_discontinuous() const;

  /// Center of mirror symmetry, if the model is even about one.
  std::optional<double> symmetry_center() const;

 private:
  Form form_;
};

double evaluate(const PotentialModel& potential, double x);
double derivative(const PotentialModel& potential, double x);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// The unit of work: unit system, potential, energy and spatial domain.
struct ScatteringProblem {
  PhysicalContext context;
  PotentialModel potential;
  double energy = 0.0;
  Interval domain;

  void validate() const;

  double V(double x) const { return potential.value(x); }
  /// 2m(E - V(x)), the squared classical momentum (negative when forbidden).
  double momentum_squared(double x) const;
};

struct TurningPoints {
  double a = 0.0;
  double b = 0.0;
  int count = 0;
};

struct RootScanOptions {
  int panels = 2048;
};

/// All roots of V(x) - E in the domain, by panel scan plus bisection to
/// full double resolution. More than two roots is a multi-well error.
TurningPoints find_turning_points(const ScatteringProblem& problem, RootScanOptions options = {});

/// k(x) for E >= V, i*beta(x) for E < V.
std::complex<double> local_wavenumber(const ScatteringProblem& problem, double x);

/// Airy length (hbar^2 / (2m |V'(x_c)|))^(1/3) around a turning point.
/// Zero for discontinuous models, where no linear neighbourhood exists.
double exclusion_radius(const ScatteringProblem& problem, double turning_point);

/// Largest V over a uniform sampling of the domain.
double max_potential(const ScatteringProblem& problem, int samples = 4096);

}  // namespace semiclassic
