#include "z2top/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "z2top/error.hpp"

namespace z2top {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blow_up: return "blow_up";
    case Termination::step_failure: return "step_failure";
    case Termination::branch_failure: return "branch_failure";
  }
  return "unknown";
}

void validate(const IntegratorOptions& options) {
  auto in_range = [](double tol) { return tol > 0.0 && tol <= 1e-2; };
  if (!in_range(options.rel_tol) || !in_range(options.abs_tol)) {
    throw InvalidParameter("tolerances must lie in (0, 1e-2]");
  }
  if (options.output_intervals == 0) throw InvalidParameter("output_intervals must be positive");
  if (!(options.blow_up_threshold > 0.0)) throw InvalidParameter("blow-up threshold must be positive");
}

namespace {

// Dormand & Prince (1980) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output (Hairer's CONTD5).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

// PI controller constants (Hairer, Norsett & Wanner, DOPRI5).
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

class DormandPrince {
 public:
  DormandPrince(const RhsFunction& f, std::size_t dim, const IntegratorOptions& opt)
      : f_(f), opt_(opt), dim_(dim) {
    for (auto& k : k_) k.resize(dim);
    for (auto& c : cont_) c.resize(dim);
    tmp_.resize(dim);
    y_new_.resize(dim);
  }

  void eval(double t, std::span<const double> y, std::vector<double>& out) { f_(t, y, out); }

  double initial_step(double t, std::span<const double> y, double t_span) {
    // Hairer's starting step heuristic.
    auto& f0 = k_[0];
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / dim_);
    d1 = std::sqrt(d1 / dim_);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, t_span);
    for (std::size_t i = 0; i < dim_; ++i) tmp_[i] = y[i] + h0 * f0[i];
    eval(t + h0, tmp_, k_[1]);
    double d2 = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y[i]);
      const double v = (k_[1][i] - f0[i]) / sc;
      d2 += v * v;
    }
    d2 = std::sqrt(d2 / dim_) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100 * h0, h1, t_span});
  }

  // One trial step of size h from (t, y), with k_[0] = f(t, y) on entry.
  // Returns the scaled error norm; the candidate is left in y_new_ and its
  // derivative in k_[6].
  double trial(double t, std::span<const double> y, double h) {
    auto& [k1, k2, k3, k4, k5, k6, k7] = k_;
    for (std::size_t i = 0; i < dim_; ++i) tmp_[i] = y[i] + h * a21 * k1[i];
    eval(t + c2 * h, tmp_, k2);
    for (std::size_t i = 0; i < dim_; ++i) tmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval(t + c3 * h, tmp_, k3);
    for (std::size_t i = 0; i < dim_; ++i)
      tmp_[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval(t + c4 * h, tmp_, k4);
    for (std::size_t i = 0; i < dim_; ++i)
      tmp_[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval(t + c5 * h, tmp_, k5);
    for (std::size_t i = 0; i < dim_; ++i)
      tmp_[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    eval(t + h, tmp_, k6);
    for (std::size_t i = 0; i < dim_; ++i)
      y_new_[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    if (!all_finite(y_new_)) return std::numeric_limits<double>::infinity();
    eval(t + h, y_new_, k7);
    double sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
      const double sc =
          opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new_[i]));
      sum += (err / sc) * (err / sc);
    }
    const double norm = std::sqrt(sum / static_cast<double>(dim_));
    return std::isfinite(norm) ? norm : std::numeric_limits<double>::infinity();
  }

  // Prepares the continuous extension of the accepted step (t, y) -> y_new_.
  void prepare_dense(std::span<const double> y, double h) {
    const auto& [k1, k2, k3, k4, k5, k6, k7] = k_;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double ydiff = y_new_[i] - y[i];
      const double bspl = h * k1[i] - ydiff;
      cont_[0][i] = y[i];
      cont_[1][i] = ydiff;
      cont_[2][i] = bspl;
      cont_[3][i] = ydiff - h * k7[i] - bspl;
      cont_[4][i] =
          h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
  }

  // Value at fraction theta of the prepared step.
  std::vector<double> dense(double theta) const {
    const double theta1 = 1.0 - theta;
    std::vector<double> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      out[i] = cont_[0][i] +
               theta * (cont_[1][i] +
                        theta1 * (cont_[2][i] + theta * (cont_[3][i] + theta1 * cont_[4][i])));
    }
    return out;
  }

  std::array<std::vector<double>, 7>& stages() { return k_; }
  std::vector<double>& candidate() { return y_new_; }

 private:
  const RhsFunction& f_;
  const IntegratorOptions& opt_;
  std::size_t dim_;
  std::array<std::vector<double>, 7> k_;
  std::array<std::vector<double>, 5> cont_;
  std::vector<double> tmp_;
  std::vector<double> y_new_;
};

}  // namespace

Trajectory integrate_ode(const RhsFunction& rhs, std::span<const double> x0, double t_end,
                         const IntegratorOptions& options) {
  validate(options);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidParameter("t_end must be positive");
  if (x0.empty()) throw InvalidParameter("empty initial state");
  if (!all_finite(x0)) throw InvalidParameter("initial state must be finite");

  Trajectory traj;
  std::vector<double> y(x0.begin(), x0.end());
  traj.samples.push_back({0.0, y});
  if (max_abs(y) > options.blow_up_threshold) {
    traj.termination = Termination::blow_up;
    return traj;
  }

  const std::size_t dim = y.size();
  DormandPrince dp(rhs, dim, options);
  auto& k = dp.stages();

  const std::size_t intervals = options.output_intervals;
  auto grid = [&](std::size_t i) {
    return i == intervals ? t_end : t_end * static_cast<double>(i) / static_cast<double>(intervals);
  };

  try {
    dp.eval(0.0, y, k[0]);
    if (!all_finite(k[0])) {
      traj.termination = Termination::step_failure;
      return traj;
    }
    double t = 0.0;
    double h = dp.initial_step(t, y, t_end);
    double err_prev = 1e-4;
    bool last_rejected = false;
    std::size_t next_out = 1;

    while (t < t_end) {
      if (traj.accepted_steps + traj.rejected_steps >= options.max_steps) {
        traj.termination = Termination::step_failure;
        return traj;
      }
      // Only the final step is shortened to land on t_end; interior grid
      // points come from the continuous extension. Stretch by up to 1% rather
      // than leave a sliver before t_end.
      const bool last = t + 1.01 * h >= t_end;
      const double step = last ? t_end - t : h;
      if (!(step > 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))) {
        traj.termination = Termination::step_failure;
        return traj;
      }

      const double err = dp.trial(t, y, step);
      if (err <= 1.0) {
        ++traj.accepted_steps;
        const double t_new = last ? t_end : t + step;
        dp.prepare_dense(y, step);
        for (; next_out < intervals && grid(next_out) <= t_new; ++next_out) {
          const double tg = grid(next_out);
          if (tg == t_new) break;
          traj.samples.push_back({tg, dp.dense((tg - t) / step)});
        }
        t = t_new;
        y.swap(dp.candidate());
        std::swap(k[0], k[6]);  // FSAL

        const double err_c = std::max(err, 1e-10);
        const double fac = std::clamp(std::pow(err_c, kExpo) / std::pow(err_prev, kBeta) / kSafety,
                         1.0 / kFacMax, 1.0 / kFacMin);
        h = step / fac;
        if (last_rejected) h = std::min(h, step);
        err_prev = std::max(err, 1e-4);
        last_rejected = false;

        const bool on_grid = next_out <= intervals && grid(next_out) == t;
        const bool blown = max_abs(y) > options.blow_up_threshold;
        if (on_grid || blown) traj.samples.push_back({t, y});
        if (on_grid) ++next_out;
        if (blown) {
          traj.termination = Termination::blow_up;
          return traj;
        }
        if (!all_finite(k[0])) {
          traj.termination = Termination::step_failure;
          return traj;
        }
      } else {
        ++traj.rejected_steps;
        const double fac = std::isfinite(err)
                               ? std::min(1.0 / kFacMin, std::pow(err, kExpo) / kSafety)
                               : 1.0 / kFacMin;
        h = step / fac;
        last_rejected = true;
      }
    }
  } catch (const DomainError&) {
    traj.termination = Termination::branch_failure;
    return traj;
  }
  traj.termination = Termination::completed;
  return traj;
}

}  // namespace z2top
