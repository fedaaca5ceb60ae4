#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "ara/errors.hpp"
#include "ara/rng.hpp"

namespace ara::drive {

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a)
{
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

struct Pose2D
{
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;

  Pose2D() = default;
  Pose2D(double x_, double y_, double phi_) : x(x_), y(y_), phi(wrap_angle(phi_)) {}
};

/// Body-frame tracking error of the robot (current) with respect to a reference (target).
struct TrackingError
{
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;

  double position_norm() const { return std::hypot(e1, e2); }
};

inline TrackingError tracking_error(const Pose2D& current, const Pose2D& target)
{
  const double dx = target.x - current.x;
  const double dy = target.y - current.y;
  const double c = std::cos(current.phi);
  const double s = std::sin(current.phi);
  return {c * dx + s * dy, -s * dx + c * dy, wrap_angle(target.phi - current.phi)};
}

/// Time derivative of the tracking error for a robot driving (v_c, omega_c) while the
/// reference moves at (v_r, omega_r):
///   de1 = omega_c e2 - v_c + v_r cos e3,  de2 = -omega_c e1 + v_r sin e3,  de3 = omega_r - omega_c
inline TrackingError error_dynamics(const TrackingError& e, double v_c, double omega_c, double v_r, double omega_r)
{
  return {omega_c * e.e2 - v_c + v_r * std::cos(e.e3), -omega_c * e.e1 + v_r * std::sin(e.e3), omega_r - omega_c};
}

struct LoopGains
{
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_clamp = 1.0;
};

struct PIDGains
{
  LoopGains position{0.8, 0.05, 0.1, 1.0};
  LoopGains heading{2.0, 0.0, 0.2, 1.0};
  double v_max = 0.2;
  double omega_max = 1.0;

  void validate() const
  {
    for (const auto* g : {&position, &heading})
      if (g->kp < 0 || g->ki < 0 || g->kd < 0 || !(g->integral_clamp > 0))
        throw ConfigError("drive: gains must be >= 0 and integral clamp > 0");
    if (!(v_max > 0.0) || !(omega_max > 0.0)) throw ConfigError("drive: saturation limits must be > 0");
  }
};

struct DriveCommand
{
  double v = 0.0;
  double omega = 0.0;

  /// Wheel speeds for track width `track`.
  std::pair<double, double> wheel_speeds(double track) const
  {
    return {v - 0.5 * omega * track, v + 0.5 * omega * track};
  }
};

struct LoopState
{
  double integral = 0.0;
  double prev_error = 0.0;
  bool has_prev = false;
};

struct ControllerState
{
  LoopState position;
  LoopState heading;
};

namespace detail {

inline double pid(const LoopGains& g, LoopState& s, double error, double dt, bool angular)
{
  s.integral = std::clamp(s.integral + error * dt, -g.integral_clamp, g.integral_clamp);
  double derivative = 0.0;
  if (s.has_prev) derivative = (angular ? wrap_angle(error - s.prev_error) : error - s.prev_error) / dt;
  s.prev_error = error;
  s.has_prev = true;
  return g.kp * error + g.ki * s.integral + g.kd * derivative;
}

}  // namespace detail

/// Two-loop controller: a distance loop producing forward speed and a heading loop producing
/// turn rate. The mixer scales forward speed by max(0, cos(heading_error)) so the robot never
/// drives away from a waypoint that is behind it.
inline DriveCommand mixed_pid_step(const TrackingError& e, double heading_error, const PIDGains& gains, double dt,
                                   ControllerState& state, double v_cap = INFINITY)
{
  if (!(dt > 0.0)) throw DomainError("mixed_pid_step: dt must be > 0");
  const double distance = e.position_norm();
  const double v_raw = detail::pid(gains.position, state.position, distance, dt, false);
  const double w_raw = detail::pid(gains.heading, state.heading, wrap_angle(heading_error), dt, true);
  const double v_lim = std::min(gains.v_max, v_cap);
  const double gate = std::max(0.0, std::cos(heading_error));
  return {std::clamp(v_raw, 0.0, v_lim) * gate, std::clamp(w_raw, -gains.omega_max, gains.omega_max)};
}

inline double heading_to(const Pose2D& current, const Pose2D& target)
{
  return wrap_angle(std::atan2(target.y - current.y, target.x - current.x) - current.phi);
}

struct TraceRow
{
  double t = 0.0;
  Pose2D pose;
  TrackingError e;
  DriveCommand cmd;
  std::size_t waypoint_index = 0;
};

struct TrackParams
{
  PIDGains gains;
  double dt = 0.02;
  double v_r = 0.15;
  double horizon = 120.0;
  double accept_radius = 0.03;
  double noise_sigma_pos = 0.0;  // measurement noise, meters; 0 disables
  double noise_sigma_phi = 0.0;  // radians
  std::uint64_t seed = 0;

  void validate() const
  {
    gains.validate();
    if (!(dt > 0.0 && dt <= 0.1)) throw ConfigError("drive: dt must be in (0, 0.1]");
    if (!(v_r > 0.0)) throw ConfigError("drive: v_r must be > 0");
    if (!(horizon > 0.0)) throw ConfigError("drive: horizon must be > 0");
    if (!(accept_radius > 0.0)) throw ConfigError("drive: accept_radius must be > 0");
    if (noise_sigma_pos < 0.0 || noise_sigma_phi < 0.0) throw ConfigError("drive: noise sigma must be >= 0");
  }
};

struct TrackSummary
{
  bool converged = false;
  std::size_t steps = 0;
  std::size_t waypoints_reached = 0;
  double final_error = 0.0;  // distance from the final pose to the last waypoint
  /// Distance to each waypoint at the moment it was accepted.
  std::vector<double> acceptance_errors;
};

struct TrackTrace
{
  std::vector<TraceRow> rows;
  std::vector<Pose2D> targets;  // waypoints with phi set to the bearing of their segment
  Pose2D final_pose;
  TrackSummary summary;
};

/// Per-step callback, e.g. a visual inspector that runs while driving.
using StepHook = std::function<void(const TraceRow&)>;

/// Reference headings: each waypoint takes the bearing of the segment that ends at it; a
/// zero-length segment inherits the previous heading.
inline std::vector<Pose2D> assign_segment_bearings(const Pose2D& start, const std::vector<Pose2D>& waypoints)
{
  std::vector<Pose2D> out;
  out.reserve(waypoints.size());
  Pose2D prev = start;
  double heading = start.phi;
  for (const auto& w : waypoints) {
    const double dx = w.x - prev.x, dy = w.y - prev.y;
    if (std::hypot(dx, dy) > 1e-12) heading = std::atan2(dy, dx);
    out.emplace_back(w.x, w.y, heading);
    prev = out.back();
  }
  return out;
}

/// Splits the polyline through `vertices` into tracking positions at most `spacing` apart,
/// always including every vertex. The first vertex is the start and is not emitted.
inline std::vector<Pose2D> discretize_path(const std::vector<Pose2D>& vertices, double spacing)
{
  if (!(spacing > 0.0)) throw ConfigError("drive: waypoint spacing must be > 0");
  std::vector<Pose2D> out;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const auto& a = vertices[i - 1];
    const auto& b = vertices[i];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / spacing - 1e-9)));
    for (std::size_t k = 1; k <= pieces; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(pieces);
      out.emplace_back(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), 0.0);
    }
  }
  return out;
}

/// Closed-loop unicycle simulation with explicit Euler integration. Waypoints are tracked in
/// order; a waypoint is accepted once the robot is within accept_radius of it.
inline TrackTrace simulate_track(const Pose2D& start, const std::vector<Pose2D>& waypoints, const TrackParams& p,
                                 const StepHook& hook = {})
{
  p.validate();
  if (waypoints.empty()) throw DomainError("simulate_track: need at least one waypoint");

  TrackTrace trace;
  trace.targets = assign_segment_bearings(start, waypoints);
  const auto max_steps = static_cast<std::size_t>(std::llround(p.horizon / p.dt));
  const bool noisy = p.noise_sigma_pos > 0.0 || p.noise_sigma_phi > 0.0;
  Rng rng(p.seed);

  Pose2D pose = start;
  ControllerState ctrl;
  std::size_t target = 0;
  std::size_t step = 0;
  for (;;) {
    while (target < trace.targets.size()) {
      const double dist = std::hypot(trace.targets[target].x - pose.x, trace.targets[target].y - pose.y);
      if (dist >= p.accept_radius) break;
      trace.summary.acceptance_errors.push_back(dist);
      ++target;
      ctrl = ControllerState{};
    }
    if (target == trace.targets.size() || step == max_steps) break;

    Pose2D measured = pose;
    if (noisy) {
      measured = Pose2D(pose.x + rng.normal(0.0, p.noise_sigma_pos), pose.y + rng.normal(0.0, p.noise_sigma_pos),
                        pose.phi + rng.normal(0.0, p.noise_sigma_phi));
    }
    const auto& ref = trace.targets[target];
    TraceRow row;
    row.t = static_cast<double>(step) * p.dt;
    row.pose = pose;
    row.e = tracking_error(measured, ref);
    row.cmd = mixed_pid_step(row.e, heading_to(measured, ref), p.gains, p.dt, ctrl, p.v_r);
    row.waypoint_index = target;
    trace.rows.push_back(row);
    if (hook) hook(row);

    pose = Pose2D(pose.x + row.cmd.v * std::cos(pose.phi) * p.dt, pose.y + row.cmd.v * std::sin(pose.phi) * p.dt,
                  pose.phi + row.cmd.omega * p.dt);
    ++step;
  }

  trace.final_pose = pose;
  trace.summary.steps = step;
  trace.summary.waypoints_reached = target;
  trace.summary.converged = target == trace.targets.size();
  const auto& last = trace.targets.back();
  trace.summary.final_error = std::hypot(last.x - pose.x, last.y - pose.y);
  return trace;
}

}  // namespace ara::drive
