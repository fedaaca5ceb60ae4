#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ara/errors.hpp"

namespace ara::actuate {

enum class MagnetMode { Touched, Untouched };

inline const char* magnet_mode_name(MagnetMode m) { return m == MagnetMode::Touched ? "Touched" : "Untouched"; }

/// Gap targets in millimeters.
inline constexpr double kTouchedGapMm = 0.0;
inline constexpr double kUntouchedGapMm = 1.0;

inline double setpoint_for(MagnetMode m) { return m == MagnetMode::Touched ? kTouchedGapMm : kUntouchedGapMm; }

struct MagnetGains
{
  double kp = 2.0;
  double ki = 0.5;
  double kd = 0.05;
  double integral_clamp = 1.0;
  double trim = 0.5;  // proportional correction on gap_left - gap_right
};

/// Screw-drive plant, one per side: the gap rate follows max_rate * command through a
/// first-order lag, the gap integrates the rate plus a constant disturbance, and stops at 0.
struct MagnetPlant
{
  double tau = 0.1;        // s
  double max_rate = 10.0;  // mm/s at |command| = 1
  double bias = 0.0;       // mm/s

  void validate() const
  {
    if (!(tau > 0.0)) throw ConfigError("magnet: plant tau must be > 0");
    if (!(max_rate > 0.0)) throw ConfigError("magnet: plant max_rate must be > 0");
  }
};

struct MagnetArrayState
{
  MagnetMode mode = MagnetMode::Untouched;
  double gap_left = 1.0;   // mm
  double gap_right = 1.0;  // mm
  double rate_left = 0.0;  // mm/s, plant state
  double rate_right = 0.0;
  double command_left = 0.0;  // normalized [-1, 1]
  double command_right = 0.0;
  double integral = 0.0;
  double prev_error = 0.0;
  bool has_prev = false;

  double mean_gap() const { return 0.5 * (gap_left + gap_right); }
};

/// One control period: PID on the mean gap drives both screws alike, the trim term pulls the
/// two sides together, and the plant is advanced by dt.
inline MagnetArrayState magnet_pid_step(MagnetArrayState s, double setpoint, const MagnetGains& g,
                                        const MagnetPlant& plant, double dt)
{
  if (!(dt > 0.0)) throw DomainError("magnet_pid_step: dt must be > 0");
  if (setpoint != kTouchedGapMm && setpoint != kUntouchedGapMm)
    throw DomainError("magnet_pid_step: setpoint must be 0 mm (touched) or 1 mm (untouched)");
  plant.validate();

  const double error = setpoint - s.mean_gap();
  const double derivative = s.has_prev ? (error - s.prev_error) / dt : 0.0;
  s.prev_error = error;
  s.has_prev = true;
  // Conditional integration: hold the integrator while the output is saturated in the
  // direction the error pushes it.
  const double candidate = std::clamp(s.integral + error * dt, -g.integral_clamp, g.integral_clamp);
  const double unsat = g.kp * error + g.ki * candidate + g.kd * derivative;
  if (std::abs(unsat) <= 1.0 || unsat * error < 0.0) s.integral = candidate;
  const double common = g.kp * error + g.ki * s.integral + g.kd * derivative;
  const double skew = g.trim * (s.gap_left - s.gap_right);
  s.command_left = std::clamp(common - skew, -1.0, 1.0);
  s.command_right = std::clamp(common + skew, -1.0, 1.0);

  auto advance = [&](double& gap, double& rate, double command) {
    rate += dt * (plant.max_rate * command - rate) / plant.tau;
    gap += dt * (rate + plant.bias);
    if (gap <= 0.0) {
      gap = 0.0;
      rate = std::max(rate, 0.0);
    }
  };
  advance(s.gap_left, s.rate_left, s.command_left);
  advance(s.gap_right, s.rate_right, s.command_right);
  s.mode = setpoint == kTouchedGapMm ? MagnetMode::Touched : MagnetMode::Untouched;
  return s;
}

struct MagnetSample
{
  double t = 0.0;
  MagnetArrayState state;
};

struct MagnetRun
{
  std::vector<MagnetSample> samples;  // includes the initial state at t = 0
  double final_error = 0.0;           // max side deviation from the setpoint at the end
  double settle_time = -1.0;          // first time after which both sides stay within tol; -1 if never
};

inline MagnetRun simulate_magnet(MagnetArrayState init, double setpoint, const MagnetGains& g,
                                 const MagnetPlant& plant, double dt, double duration, double settle_tol = 0.05)
{
  if (!(duration > 0.0)) throw ConfigError("magnet: duration must be > 0");
  MagnetRun run;
  const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
  run.samples.push_back({0.0, init});
  MagnetArrayState s = init;
  for (std::size_t k = 1; k <= steps; ++k) {
    s = magnet_pid_step(s, setpoint, g, plant, dt);
    run.samples.push_back({static_cast<double>(k) * dt, s});
  }
  auto dev = [&](const MagnetArrayState& st) {
    return std::max(std::abs(st.gap_left - setpoint), std::abs(st.gap_right - setpoint));
  };
  run.final_error = dev(s);
  for (std::size_t k = run.samples.size(); k-- > 0;) {
    if (dev(run.samples[k].state) >= settle_tol) {
      if (k + 1 < run.samples.size()) run.settle_time = run.samples[k + 1].t;
      break;
    }
    if (k == 0) run.settle_time = 0.0;
  }
  return run;
}

}  // namespace ara::actuate
