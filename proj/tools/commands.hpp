#pragma once

// Subcommand implementations for ara_nav. Each returns the process exit code and writes
// its machine-readable output to `out` and diagnostics to `err`.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ara/ara.hpp"

namespace ara::cli {

inline constexpr int kExitMobile = 0;
inline constexpr int kExitInchWorm = 10;
inline constexpr int kExitError = 2;

/// Flag values that override the config file when given.
struct Overrides
{
  std::optional<double> alpha_s;
  std::optional<double> foot_w;
  std::optional<double> foot_l;
  std::optional<double> tol_t;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

inline config::RunConfig resolve_config(const std::string& config_path, const Overrides& o)
{
  config::RunConfig cfg = config_path.empty() ? config::RunConfig{} : config::load_run_config(config_path);
  if (o.alpha_s) cfg.pipeline.slice.alpha_s = *o.alpha_s;
  if (o.foot_w) cfg.pipeline.foot.w = *o.foot_w;
  if (o.foot_l) cfg.pipeline.foot.l = *o.foot_l;
  if (o.tol_t) cfg.pipeline.foot.t = *o.tol_t;
  if (o.n) cfg.pipeline.foot.n = *o.n;
  if (o.m) cfg.pipeline.foot.m = *o.m;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out_dir = *o.out;
  cfg.validate();
  return cfg;
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline int exit_code_for(const switching::SwitchDecision& d)
{
  return d.transformation == switching::Transformation::Mobile ? kExitMobile : kExitInchWorm;
}

// ---------------------------------------------------------------------------

struct GenArgs
{
  synth::SyntheticCloudSpec spec;
  std::string out;
};

inline int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err)
{
  try {
    if (a.out.empty()) throw ConfigError("gen: --out is required");
    const auto cloud = synth::generate(a.spec);
    write_text(a.out, pcd::to_pcd_string(cloud));
    out << cloud.size() << " points written to " << a.out << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

// ---------------------------------------------------------------------------

struct DecideArgs
{
  std::string cloud_path;
  std::string config_path;
  Overrides overrides;
  std::optional<std::string> json_out;  // also write the decision to this file
};

inline int cmd_decide(const DecideArgs& a, std::ostream& out, std::ostream& err)
{
  try {
    const auto cfg = resolve_config(a.config_path, a.overrides);
    const auto cloud = pcd::load_cloud(a.cloud_path);
    const auto d = switching::decide(cloud, cfg.pipeline, cfg.seed);
    const auto text = report::decision_string(d);
    out << text;
    if (a.json_out) write_text(*a.json_out, text);
    return exit_code_for(d);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

// ---------------------------------------------------------------------------

struct SimulateArgs
{
  std::string what;  // track | magnet | jump
  std::string config_path;
  Overrides overrides;
  std::string target_cloud;  // jump only: take the target pose from a decision on this cloud
};

inline int simulate_track_cmd(const config::RunConfig& cfg, std::ostream& out)
{
  auto params = cfg.track.params;
  params.seed = cfg.seed;
  const auto waypoints = drive::discretize_path(cfg.track.path, cfg.track.spacing);
  const std::filesystem::path dir(cfg.out_dir);
  drive::TrackTrace trace;
  if (waypoints.empty()) {
    // A one-vertex path is a single waypoint at that vertex.
    trace = drive::simulate_track(cfg.track.start, {cfg.track.path.front()}, params);
  } else {
    trace = drive::simulate_track(cfg.track.start, waypoints, params);
  }
  write_text(dir / "track_trace.csv", report::to_string_with(report::write_track_csv, trace));
  const auto summary = report::track_summary_json(trace.summary).dump();
  write_text(dir / "track_summary.json", summary + "\n");
  out << summary << "\n";
  return 0;
}

inline int simulate_magnet_cmd(const config::RunConfig& cfg, std::ostream& out)
{
  const auto& m = cfg.magnet;
  actuate::MagnetArrayState init;
  init.gap_left = m.gap_left;
  init.gap_right = m.gap_right;
  const auto run = actuate::simulate_magnet(init, m.setpoint, m.gains, m.plant, m.dt, m.duration, m.settle_tol);
  const std::filesystem::path dir(cfg.out_dir);
  write_text(dir / "magnet_trace.csv", report::to_string_with(report::write_magnet_csv, run));
  const auto summary = report::magnet_summary_json(run, m.settle_tol).dump();
  write_text(dir / "magnet_summary.json", summary + "\n");
  out << summary << "\n";
  return 0;
}

inline int simulate_jump_cmd(const config::RunConfig& cfg, const std::string& target_cloud, std::ostream& out)
{
  actuate::InchwormState state;
  if (!target_cloud.empty()) {
    const auto d = switching::decide(pcd::load_cloud(target_cloud), cfg.pipeline, cfg.seed);
    if (!d.pose) throw DomainError("jump: no placeable footprint on '" + target_cloud + "'");
    state.target_pose = d.pose;
  } else {
    state.target_pose = footprint::FootprintPose{};
  }
  const auto fsm = actuate::run_events(state, cfg.jump.events);
  const auto traj = actuate::plan_jump_trajectory(cfg.jump.from, *state.target_pose, cfg.jump.jump, cfg.jump.steps);

  std::size_t phases = 1;
  bool all_accepted = true;
  actuate::Phase last = actuate::Phase::MobileConfig;
  for (const auto& e : fsm) {
    all_accepted = all_accepted && e.accepted;
    if (e.accepted) ++phases;
    last = e.phase;
  }
  const std::filesystem::path dir(cfg.out_dir);
  write_text(dir / "jump_fsm.jsonl", report::to_string_with(report::write_fsm_jsonl, fsm));
  write_text(dir / "jump_joints.csv", report::to_string_with(report::write_joints_csv, traj));
  report::Json summary;
  summary["converged"] = all_accepted && last == actuate::Phase::MobileReformed;
  summary["phases_traversed"] = phases;
  summary["all_accepted"] = all_accepted;
  summary["final_phase"] = actuate::phase_name(last);
  summary["steps"] = fsm.size();
  summary["trajectory_points"] = traj.size();
  write_text(dir / "jump_summary.json", summary.dump() + "\n");
  out << summary.dump() << "\n";
  return 0;
}

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err)
{
  try {
    const auto cfg = resolve_config(a.config_path, a.overrides);
    if (a.what == "track") return simulate_track_cmd(cfg, out);
    if (a.what == "magnet") return simulate_magnet_cmd(cfg, out);
    if (a.what == "jump") return simulate_jump_cmd(cfg, a.target_cloud, out);
    throw ConfigError("simulate: expected track, magnet or jump, got '" + a.what + "'");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

// ---------------------------------------------------------------------------

struct BatchArgs
{
  std::vector<std::string> clouds;
  std::string config_path;
  Overrides overrides;
  unsigned jobs = 0;  // 0: hardware concurrency
};

/// Runs decide on every cloud, writing <out>/<stem>.decision.json per input. Prints one
/// "path<TAB>transformation|error" line per input, in input order.
inline int cmd_batch(const BatchArgs& a, std::ostream& out, std::ostream& err)
{
  config::RunConfig cfg;
  try {
    cfg = resolve_config(a.config_path, a.overrides);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  const std::filesystem::path dir(cfg.out_dir);
  std::vector<std::string> status(a.clouds.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < a.clouds.size(); i = next++) {
      try {
        const auto d = switching::decide(pcd::load_cloud(a.clouds[i]), cfg.pipeline, cfg.seed);
        const auto stem = std::filesystem::path(a.clouds[i]).stem().string();
        write_text(dir / (stem + ".decision.json"), report::decision_string(d));
        status[i] = switching::transformation_name(d.transformation);
      } catch (const std::exception& e) {
        status[i] = "error";
        std::lock_guard lock(err_mutex);
        err << "error: " << a.clouds[i] << ": " << e.what() << "\n";
      }
    }
  };
  unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, a.clouds.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  bool failed = false;
  for (std::size_t i = 0; i < a.clouds.size(); ++i) {
    out << a.clouds[i] << '\t' << status[i] << '\n';
    failed = failed || status[i] == "error";
  }
  return failed ? kExitError : 0;
}

}  // namespace ara::cli
