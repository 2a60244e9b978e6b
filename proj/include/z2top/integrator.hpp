#pragma once

// Adaptive Dormand-Prince 5(4) integration with PI step-size control,
// sampled on a uniform output grid, with a finite-time blow-up guard.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace z2top {

enum class Termination {
  completed,
  blow_up,         // max |x| exceeded the blow-up threshold
  step_failure,    // step size underflow, non-finite state or step budget exhausted
  branch_failure,  // the right-hand side left its real domain (DomainError)
};

std::string_view to_string(Termination t);

struct Sample {
  double t;
  std::vector<double> x;
};

struct Trajectory {
  std::vector<Sample> samples;  // strictly increasing t
  Termination termination = Termination::completed;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  const Sample& back() const { return samples.back(); }
  bool completed() const { return termination == Termination::completed; }
};

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  /// Number of uniform output intervals on [0, t_end].
  std::size_t output_intervals = 100;
  double blow_up_threshold = 1e9;
  std::size_t max_steps = 5'000'000;
};

/// dx/dt = f(t, x). May throw DomainError to signal a branch failure.
using RhsFunction =
    std::function<void(double t, std::span<const double> x, std::span<double> dxdt)>;

/// Integrates from t = 0 to t_end. Throws InvalidParameter for t_end <= 0,
/// tolerances outside (0, 1e-2], or zero output intervals; run-time failures
/// are reported through Trajectory::termination.
Trajectory integrate_ode(const RhsFunction& rhs, std::span<const double> x0, double t_end,
                         const IntegratorOptions& options = {});

void validate(const IntegratorOptions& options);

}  // namespace z2top
