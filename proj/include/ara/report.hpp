#pragma once

// Serialized artifacts. The key order and number formats here are the documented wire
// formats (see docs/formats.md); change them only together with that document.

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ara/drive.hpp"
#include "ara/inchworm.hpp"
#include "ara/magnet.hpp"
#include "ara/switching.hpp"

namespace ara::report {

using Json = nlohmann::ordered_json;

inline Json point_json(const Point3& p) { return Json::array({p.x(), p.y(), p.z()}); }

inline Json pose_json(const footprint::FootprintPose& pose)
{
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r)
    rows.push_back(Json::array({pose.orientation(r, 0), pose.orientation(r, 1), pose.orientation(r, 2)}));
  Json j;
  j["position"] = point_json(pose.position);
  j["orientation"] = rows;
  return j;
}

inline Json decision_json(const switching::SwitchDecision& d)
{
  const auto& g = d.diagnostics;
  Json diag;
  diag["input_points"] = g.input_points;
  diag["filtered_points"] = g.filtered_points;
  diag["downsampled_points"] = g.downsampled_points;
  diag["inlier_count"] = g.inlier_count;
  diag["boundary_size"] = g.boundary_size;
  diag["candidates_evaluated"] = g.candidates_evaluated;
  diag["accepted_candidate"] = g.accepted_candidate ? Json(*g.accepted_candidate) : Json(nullptr);
  diag["centroid_camera"] = g.centroid_camera ? point_json(*g.centroid_camera) : Json(nullptr);
  diag["normal"] = g.normal ? point_json(*g.normal) : Json(nullptr);
  diag["height_delta"] = g.height_delta ? Json(*g.height_delta) : Json(nullptr);

  Json j;
  j["s_pa"] = d.s_pa;
  j["s_am"] = d.s_am;
  j["s_hc"] = d.s_hc;
  j["s"] = d.s;
  j["transformation"] = switching::transformation_name(d.transformation);
  j["pose"] = d.pose ? pose_json(*d.pose) : Json(nullptr);
  j["diagnostics"] = diag;
  return j;
}

inline std::string decision_string(const switching::SwitchDecision& d) { return decision_json(d).dump(2) + "\n"; }

namespace detail {

inline std::string g9(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace detail

inline void write_track_csv(std::ostream& out, const drive::TrackTrace& trace)
{
  using detail::g9;
  out << "t,x,y,phi,e1,e2,e3,v,omega,waypoint_index\n";
  for (const auto& r : trace.rows)
    out << g9(r.t) << ',' << g9(r.pose.x) << ',' << g9(r.pose.y) << ',' << g9(r.pose.phi) << ',' << g9(r.e.e1)
        << ',' << g9(r.e.e2) << ',' << g9(r.e.e3) << ',' << g9(r.cmd.v) << ',' << g9(r.cmd.omega) << ','
        << r.waypoint_index << '\n';
}

inline Json track_summary_json(const drive::TrackSummary& s)
{
  Json j;
  j["converged"] = s.converged;
  j["final_error"] = s.final_error;
  j["steps"] = s.steps;
  j["waypoints_reached"] = s.waypoints_reached;
  return j;
}

inline void write_magnet_csv(std::ostream& out, const actuate::MagnetRun& run)
{
  using detail::g9;
  out << "t,gap_left,gap_right,command_left,command_right,mode\n";
  for (const auto& s : run.samples)
    out << g9(s.t) << ',' << g9(s.state.gap_left) << ',' << g9(s.state.gap_right) << ','
        << g9(s.state.command_left) << ',' << g9(s.state.command_right) << ','
        << actuate::magnet_mode_name(s.state.mode) << '\n';
}

inline Json magnet_summary_json(const actuate::MagnetRun& run, double tol)
{
  Json j;
  j["converged"] = run.final_error < tol;
  j["final_error"] = run.final_error;
  j["steps"] = run.samples.size() - 1;
  j["settle_time"] = run.settle_time;
  return j;
}

inline Json fsm_entry_json(const actuate::FsmTraceEntry& e)
{
  Json j;
  j["step"] = e.step;
  j["phase"] = actuate::phase_name(e.phase);
  j["event"] = actuate::event_name(e.event);
  j["magnet1_mode"] = actuate::magnet_mode_name(e.magnet1);
  j["magnet2_mode"] = actuate::magnet_mode_name(e.magnet2);
  j["accepted"] = e.accepted;
  return j;
}

inline void write_fsm_jsonl(std::ostream& out, const std::vector<actuate::FsmTraceEntry>& trace)
{
  for (const auto& e : trace) out << fsm_entry_json(e).dump() << '\n';
}

inline void write_joints_csv(std::ostream& out, const std::vector<actuate::JointVector>& traj)
{
  using detail::g9;
  out << "j1,j2,j3,j4,j5,j6\n";
  for (const auto& q : traj) {
    for (std::size_t i = 0; i < q.size(); ++i) out << (i ? "," : "") << g9(q[i]);
    out << '\n';
  }
}

template <class Writer, class Value>
std::string to_string_with(Writer&& w, const Value& v)
{
  std::ostringstream os;
  w(os, v);
  return os.str();
}

}  // namespace ara::report
