#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ara/errors.hpp"
#include "ara/footprint.hpp"
#include "ara/magnet.hpp"

namespace ara::actuate {

enum class Phase {
  MobileConfig,
  BaseFootTouched,
  AtConvenientPose,
  Foot1OnTarget,
  MagnetsSwapped,
  Foot2OnTarget,
  MobileReformed,
};

enum class Event {
  LowerBaseMagnet,
  ReachConvenientPose,
  Foot1Contact,
  SwapMagnets,
  Foot2Contact,
  Reform,
};

inline constexpr std::array<Phase, 7> kPhases{Phase::MobileConfig,   Phase::BaseFootTouched, Phase::AtConvenientPose,
                                              Phase::Foot1OnTarget,  Phase::MagnetsSwapped,  Phase::Foot2OnTarget,
                                              Phase::MobileReformed};

inline constexpr std::array<Event, 6> kEvents{Event::LowerBaseMagnet, Event::ReachConvenientPose, Event::Foot1Contact,
                                              Event::SwapMagnets,     Event::Foot2Contact,        Event::Reform};

inline const char* phase_name(Phase p)
{
  switch (p) {
    case Phase::MobileConfig: return "MobileConfig";
    case Phase::BaseFootTouched: return "BaseFootTouched";
    case Phase::AtConvenientPose: return "AtConvenientPose";
    case Phase::Foot1OnTarget: return "Foot1OnTarget";
    case Phase::MagnetsSwapped: return "MagnetsSwapped";
    case Phase::Foot2OnTarget: return "Foot2OnTarget";
    case Phase::MobileReformed: return "MobileReformed";
  }
  return "?";
}

inline const char* event_name(Event e)
{
  switch (e) {
    case Event::LowerBaseMagnet: return "LowerBaseMagnet";
    case Event::ReachConvenientPose: return "ReachConvenientPose";
    case Event::Foot1Contact: return "Foot1Contact";
    case Event::SwapMagnets: return "SwapMagnets";
    case Event::Foot2Contact: return "Foot2Contact";
    case Event::Reform: return "Reform";
  }
  return "?";
}

inline std::optional<Event> parse_event(const std::string& name)
{
  for (Event e : kEvents)
    if (name == event_name(e)) return e;
  return std::nullopt;
}

/// Foot 1 is the leg that jumps first; foot 2 starts as the base foot.
struct InchwormState
{
  Phase phase = Phase::MobileConfig;
  MagnetMode magnet1 = MagnetMode::Untouched;
  MagnetMode magnet2 = MagnetMode::Untouched;
  std::optional<footprint::FootprintPose> target_pose;
};

inline bool is_mobile_phase(Phase p) { return p == Phase::MobileConfig || p == Phase::MobileReformed; }

/// Outside the two mobile phases at least one foot must be held by a touched array.
inline bool is_safe(const InchwormState& s)
{
  return is_mobile_phase(s.phase) || s.magnet1 == MagnetMode::Touched || s.magnet2 == MagnetMode::Touched;
}

/// The only event accepted in each phase; MobileReformed is terminal.
inline std::optional<Event> legal_event(Phase p)
{
  switch (p) {
    case Phase::MobileConfig: return Event::LowerBaseMagnet;
    case Phase::BaseFootTouched: return Event::ReachConvenientPose;
    case Phase::AtConvenientPose: return Event::Foot1Contact;
    case Phase::Foot1OnTarget: return Event::SwapMagnets;
    case Phase::MagnetsSwapped: return Event::Foot2Contact;
    case Phase::Foot2OnTarget: return Event::Reform;
    case Phase::MobileReformed: return std::nullopt;
  }
  return std::nullopt;
}

struct StepOutcome
{
  InchwormState state;
  bool accepted = false;
  std::string reason;  // empty when accepted
};

inline StepOutcome inchworm_step(const InchwormState& s, Event e)
{
  const auto legal = legal_event(s.phase);
  if (!legal || *legal != e)
    return {s, false, std::string("event ") + event_name(e) + " is not legal in phase " + phase_name(s.phase)};

  InchwormState next = s;
  switch (s.phase) {
    case Phase::MobileConfig:
      next.phase = Phase::BaseFootTouched;
      next.magnet2 = MagnetMode::Touched;
      break;
    case Phase::BaseFootTouched: next.phase = Phase::AtConvenientPose; break;
    case Phase::AtConvenientPose: next.phase = Phase::Foot1OnTarget; break;
    case Phase::Foot1OnTarget:
      next.phase = Phase::MagnetsSwapped;
      next.magnet1 = MagnetMode::Touched;
      next.magnet2 = MagnetMode::Untouched;
      break;
    case Phase::MagnetsSwapped: next.phase = Phase::Foot2OnTarget; break;
    case Phase::Foot2OnTarget:
      next.phase = Phase::MobileReformed;
      next.magnet1 = MagnetMode::Untouched;
      next.magnet2 = MagnetMode::Untouched;
      break;
    case Phase::MobileReformed: break;
  }
  if (!is_safe(next)) return {s, false, "transition would release both magnet arrays"};
  return {next, true, {}};
}

inline std::vector<Event> canonical_jump_events()
{
  return {kEvents.begin(), kEvents.end()};
}

struct FsmTraceEntry
{
  std::size_t step = 0;
  Phase phase = Phase::MobileConfig;  // phase after the event
  Event event = Event::LowerBaseMagnet;
  MagnetMode magnet1 = MagnetMode::Untouched;
  MagnetMode magnet2 = MagnetMode::Untouched;
  bool accepted = false;
};

inline std::vector<FsmTraceEntry> run_events(InchwormState s, const std::vector<Event>& events)
{
  std::vector<FsmTraceEntry> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto r = inchworm_step(s, events[i]);
    s = r.state;
    out.push_back({i, s.phase, events[i], s.magnet1, s.magnet2, r.accepted});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jump trajectory: joint-space interpolation through the convenient pose.

using JointVector = std::array<double, 6>;

struct JointLimits
{
  JointVector lower{-3.14159, -2.0, -2.6, -3.14159, -2.0, -3.14159};
  JointVector upper{3.14159, 2.0, 2.6, 3.14159, 2.0, 3.14159};

  bool contains(const JointVector& q) const
  {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] < lower[i] || q[i] > upper[i]) return false;
    return true;
  }
};

struct JumpConfig
{
  JointVector convenient{0.0, 0.6, -1.2, 0.0, 0.6, 0.0};
  JointVector target{0.0, 1.2, -0.9, 0.0, -0.3, 0.0};
  JointLimits limits;
};

/// `steps` evenly spaced vectors from a to b; both endpoints exact.
inline std::vector<JointVector> interpolate_joints(const JointVector& a, const JointVector& b, std::size_t steps)
{
  if (steps < 2) throw DomainError("interpolate_joints: steps must be >= 2");
  std::vector<JointVector> out;
  out.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(steps - 1);
    JointVector q;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = a[i] + s * (b[i] - a[i]);
    out.push_back(q);
  }
  out.back() = b;
  return out;
}

/// from -> convenient -> target, `steps` vectors per leg with the convenient pose shared
/// (2 * steps - 1 vectors). The target joint vector is the configured solution for `to_pose`.
inline std::vector<JointVector> plan_jump_trajectory(const JointVector& from, const footprint::FootprintPose& to_pose,
                                                     const JumpConfig& cfg, std::size_t steps)
{
  if (steps < 2) throw DomainError("plan_jump_trajectory: steps must be >= 2");
  if (!is_orthonormal(to_pose.orientation, 1e-6))
    throw DomainError("plan_jump_trajectory: target orientation is not a rotation");
  for (std::size_t i = 0; i < 6; ++i)
    if (!(cfg.limits.lower[i] <= cfg.limits.upper[i])) throw ConfigError("jump: joint limits need lower <= upper");

  auto check = [&](const JointVector& q, const char* what) {
    if (!cfg.limits.contains(q)) throw InfeasibleTrajectoryError(std::string(what) + " violates joint limits");
  };
  check(from, "start joint vector");
  check(cfg.convenient, "convenient pose");
  check(cfg.target, "target joint vector");

  auto out = interpolate_joints(from, cfg.convenient, steps);
  const auto second = interpolate_joints(cfg.convenient, cfg.target, steps);
  out.insert(out.end(), second.begin() + 1, second.end());
  for (const auto& q : out) check(q, "intermediate joint vector");
  return out;
}

}  // namespace ara::actuate
