#pragma once

// Run configuration: an INI file of [section] key = value lines (see docs/config.md).
// Every key is optional; unknown sections or keys are rejected so typos do not go unnoticed.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ara/drive.hpp"
#include "ara/errors.hpp"
#include "ara/inchworm.hpp"
#include "ara/magnet.hpp"
#include "ara/switching.hpp"

namespace ara::config {

struct MagnetRunConfig
{
  actuate::MagnetGains gains;
  actuate::MagnetPlant plant;
  double dt = 0.001;
  double duration = 2.0;
  double setpoint = actuate::kUntouchedGapMm;
  double gap_left = 3.0;
  double gap_right = 3.0;
  double settle_tol = 0.05;
};

struct JumpRunConfig
{
  actuate::JumpConfig jump;
  actuate::JointVector from{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  std::size_t steps = 20;
  std::vector<actuate::Event> events = actuate::canonical_jump_events();
};

struct TrackRunConfig
{
  drive::TrackParams params;
  drive::Pose2D start;
  std::vector<drive::Pose2D> path{drive::Pose2D(0, 0, 0), drive::Pose2D(2, 0, 0)};  // polyline vertices
  double spacing = 0.25;
};

struct RunConfig
{
  switching::PipelineConfig pipeline;
  TrackRunConfig track;
  MagnetRunConfig magnet;
  JumpRunConfig jump;
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  void validate() const
  {
    pipeline.filter.validate();
    pipeline.slice.validate();
    pipeline.foot.validate();
    pipeline.height.validate();
    track.params.validate();
    if (!(track.spacing > 0.0)) throw ConfigError("drive: spacing must be > 0");
    if (track.path.empty()) throw ConfigError("drive: path needs at least one vertex");
    magnet.plant.validate();
    if (!(magnet.dt > 0.0) || !(magnet.duration > 0.0)) throw ConfigError("magnet: dt and duration must be > 0");
    if (magnet.setpoint != actuate::kTouchedGapMm && magnet.setpoint != actuate::kUntouchedGapMm)
      throw ConfigError("magnet: setpoint must be 0 or 1 mm");
    if (magnet.gap_left < 0.0 || magnet.gap_right < 0.0) throw ConfigError("magnet: gaps must be >= 0");
    if (jump.steps < 2) throw ConfigError("jump: steps must be >= 2");
  }
};

namespace detail {

inline std::vector<double> parse_numbers(const std::string& key, const std::string& text)
{
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(s);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ConfigError(key + ": '" + tok + "' is not a number");
    out.push_back(v);
  }
  return out;
}

inline double parse_one(const std::string& key, const std::string& text)
{
  const auto v = parse_numbers(key, text);
  if (v.size() != 1) throw ConfigError(key + ": expected one number");
  return v.front();
}

template <std::size_t N>
std::array<double, N> parse_fixed(const std::string& key, const std::string& text)
{
  const auto v = parse_numbers(key, text);
  if (v.size() != N) throw ConfigError(key + ": expected " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

inline std::size_t parse_count(const std::string& key, const std::string& text)
{
  const double v = parse_one(key, text);
  if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
    throw ConfigError(key + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

/// "x y; x y; ..." -> poses (phi = 0).
inline std::vector<drive::Pose2D> parse_path(const std::string& key, const std::string& text)
{
  std::vector<drive::Pose2D> out;
  std::istringstream is(text);
  std::string vertex;
  while (std::getline(is, vertex, ';')) {
    if (vertex.find_first_not_of(" \t") == std::string::npos) continue;
    const auto xy = parse_numbers(key, vertex);
    if (xy.size() != 2) throw ConfigError(key + ": each vertex needs 'x y'");
    out.emplace_back(xy[0], xy[1], 0.0);
  }
  return out;
}

inline std::vector<Axis> parse_axes(const std::string& key, const std::string& text)
{
  if (text == "auto") return {};
  std::vector<Axis> out;
  for (char c : text) {
    if (c == 'x') out.push_back(Axis::X);
    else if (c == 'y') out.push_back(Axis::Y);
    else if (c == 'z') out.push_back(Axis::Z);
    else if (c != ' ' && c != ',') throw ConfigError(key + ": axes must be 'auto' or letters from xyz");
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

inline const std::map<std::string, Setter>& setters()
{
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& name, auto member) {
      t[name] = [member](RunConfig& c, const std::string& k, const std::string& v) { member(c) = parse_one(k, v); };
    };
    auto count = [&t](const std::string& name, auto member) {
      t[name] = [member](RunConfig& c, const std::string& k, const std::string& v) {
        member(c) = static_cast<std::remove_reference_t<decltype(member(c))>>(parse_count(k, v));
      };
    };
    auto joints = [&t](const std::string& name, auto member) {
      t[name] = [member](RunConfig& c, const std::string& k, const std::string& v) { member(c) = parse_fixed<6>(k, v); };
    };

    t["run.seed"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = parse_count(k, v); };
    t["run.out"] = [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = v; };

    num("filter.x_min", [](RunConfig& c) -> double& { return c.pipeline.filter.passthrough[0].min; });
    num("filter.x_max", [](RunConfig& c) -> double& { return c.pipeline.filter.passthrough[0].max; });
    num("filter.y_min", [](RunConfig& c) -> double& { return c.pipeline.filter.passthrough[1].min; });
    num("filter.y_max", [](RunConfig& c) -> double& { return c.pipeline.filter.passthrough[1].max; });
    num("filter.z_min", [](RunConfig& c) -> double& { return c.pipeline.filter.passthrough[2].min; });
    num("filter.z_max", [](RunConfig& c) -> double& { return c.pipeline.filter.passthrough[2].max; });
    num("filter.leaf", [](RunConfig& c) -> double& { return c.pipeline.filter.leaf; });
    num("filter.ransac_threshold", [](RunConfig& c) -> double& { return c.pipeline.filter.ransac_threshold; });
    count("filter.ransac_iterations", [](RunConfig& c) -> int& { return c.pipeline.filter.ransac_iterations; });
    count("filter.min_inliers", [](RunConfig& c) -> std::size_t& { return c.pipeline.filter.min_inliers; });

    num("boundary.alpha_s", [](RunConfig& c) -> double& { return c.pipeline.slice.alpha_s; });
    t["boundary.axes"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.pipeline.slice.axes = parse_axes(k, v);
    };

    num("foot.w", [](RunConfig& c) -> double& { return c.pipeline.foot.w; });
    num("foot.l", [](RunConfig& c) -> double& { return c.pipeline.foot.l; });
    num("foot.t", [](RunConfig& c) -> double& { return c.pipeline.foot.t; });
    count("foot.n", [](RunConfig& c) -> std::size_t& { return c.pipeline.foot.n; });
    count("foot.m", [](RunConfig& c) -> std::size_t& { return c.pipeline.foot.m; });

    num("height.z_robotbase", [](RunConfig& c) -> double& { return c.pipeline.height.z_robotbase; });
    num("height.epsilon", [](RunConfig& c) -> double& { return c.pipeline.height.epsilon; });
    t["height.rotation"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const auto r = parse_fixed<9>(k, v);
      Mat3 m;
      m << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
      try {
        c.pipeline.height.camera_to_base = RigidTransform(m, c.pipeline.height.camera_to_base.translation());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k + ": " + e.what());
      }
    };
    t["height.rpy"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const auto r = parse_fixed<3>(k, v);
      c.pipeline.height.camera_to_base =
          RigidTransform::rpy(r[0], r[1], r[2], c.pipeline.height.camera_to_base.translation());
    };
    t["height.translation"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const auto tr = parse_fixed<3>(k, v);
      c.pipeline.height.camera_to_base =
          RigidTransform(c.pipeline.height.camera_to_base.rotation(), Vec3(tr[0], tr[1], tr[2]));
    };

    auto tp = [](RunConfig& c) -> drive::TrackParams& { return c.track.params; };
    num("drive.pos_kp", [tp](RunConfig& c) -> double& { return tp(c).gains.position.kp; });
    num("drive.pos_ki", [tp](RunConfig& c) -> double& { return tp(c).gains.position.ki; });
    num("drive.pos_kd", [tp](RunConfig& c) -> double& { return tp(c).gains.position.kd; });
    num("drive.pos_iclamp", [tp](RunConfig& c) -> double& { return tp(c).gains.position.integral_clamp; });
    num("drive.head_kp", [tp](RunConfig& c) -> double& { return tp(c).gains.heading.kp; });
    num("drive.head_ki", [tp](RunConfig& c) -> double& { return tp(c).gains.heading.ki; });
    num("drive.head_kd", [tp](RunConfig& c) -> double& { return tp(c).gains.heading.kd; });
    num("drive.head_iclamp", [tp](RunConfig& c) -> double& { return tp(c).gains.heading.integral_clamp; });
    num("drive.v_max", [tp](RunConfig& c) -> double& { return tp(c).gains.v_max; });
    num("drive.omega_max", [tp](RunConfig& c) -> double& { return tp(c).gains.omega_max; });
    num("drive.dt", [tp](RunConfig& c) -> double& { return tp(c).dt; });
    num("drive.v_r", [tp](RunConfig& c) -> double& { return tp(c).v_r; });
    num("drive.horizon", [tp](RunConfig& c) -> double& { return tp(c).horizon; });
    num("drive.accept_radius", [tp](RunConfig& c) -> double& { return tp(c).accept_radius; });
    num("drive.noise_pos", [tp](RunConfig& c) -> double& { return tp(c).noise_sigma_pos; });
    num("drive.noise_phi", [tp](RunConfig& c) -> double& { return tp(c).noise_sigma_phi; });
    num("drive.spacing", [](RunConfig& c) -> double& { return c.track.spacing; });
    t["drive.start"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      const auto s = parse_fixed<3>(k, v);
      c.track.start = drive::Pose2D(s[0], s[1], s[2]);
    };
    t["drive.path"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.track.path = parse_path(k, v);
    };

    num("magnet.kp", [](RunConfig& c) -> double& { return c.magnet.gains.kp; });
    num("magnet.ki", [](RunConfig& c) -> double& { return c.magnet.gains.ki; });
    num("magnet.kd", [](RunConfig& c) -> double& { return c.magnet.gains.kd; });
    num("magnet.iclamp", [](RunConfig& c) -> double& { return c.magnet.gains.integral_clamp; });
    num("magnet.trim", [](RunConfig& c) -> double& { return c.magnet.gains.trim; });
    num("magnet.tau", [](RunConfig& c) -> double& { return c.magnet.plant.tau; });
    num("magnet.max_rate", [](RunConfig& c) -> double& { return c.magnet.plant.max_rate; });
    num("magnet.bias", [](RunConfig& c) -> double& { return c.magnet.plant.bias; });
    num("magnet.dt", [](RunConfig& c) -> double& { return c.magnet.dt; });
    num("magnet.duration", [](RunConfig& c) -> double& { return c.magnet.duration; });
    num("magnet.setpoint_mm", [](RunConfig& c) -> double& { return c.magnet.setpoint; });
    num("magnet.gap_left_mm", [](RunConfig& c) -> double& { return c.magnet.gap_left; });
    num("magnet.gap_right_mm", [](RunConfig& c) -> double& { return c.magnet.gap_right; });
    num("magnet.settle_tol_mm", [](RunConfig& c) -> double& { return c.magnet.settle_tol; });

    joints("jump.from", [](RunConfig& c) -> actuate::JointVector& { return c.jump.from; });
    joints("jump.convenient", [](RunConfig& c) -> actuate::JointVector& { return c.jump.jump.convenient; });
    joints("jump.target", [](RunConfig& c) -> actuate::JointVector& { return c.jump.jump.target; });
    joints("jump.lower", [](RunConfig& c) -> actuate::JointVector& { return c.jump.jump.limits.lower; });
    joints("jump.upper", [](RunConfig& c) -> actuate::JointVector& { return c.jump.jump.limits.upper; });
    count("jump.steps", [](RunConfig& c) -> std::size_t& { return c.jump.steps; });
    t["jump.events"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      std::istringstream is(v);
      std::vector<actuate::Event> events;
      std::string name;
      while (is >> name) {
        const auto e = actuate::parse_event(name);
        if (!e) throw ConfigError(k + ": unknown event '" + name + "'");
        events.push_back(*e);
      }
      c.jump.events = std::move(events);
    };
    return t;
  }();
  return table;
}

}  // namespace detail

/// Applies one "section.key" = value assignment.
inline void set_value(RunConfig& cfg, const std::string& dotted_key, const std::string& value)
{
  const auto& table = detail::setters();
  const auto it = table.find(dotted_key);
  if (it == table.end()) throw ConfigError("unknown config key '" + dotted_key + "'");
  it->second(cfg, dotted_key, value);
}

inline RunConfig parse_run_config(std::istream& in, RunConfig cfg = {})
{
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const auto& [section, node] : tree) {
    if (node.empty()) throw ConfigError("config: key '" + section + "' must be inside a [section]");
    for (const auto& [key, leaf] : node) set_value(cfg, section + "." + key, leaf.data());
  }
  cfg.validate();
  return cfg;
}

inline RunConfig load_run_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_run_config(in);
}

}  // namespace ara::config
