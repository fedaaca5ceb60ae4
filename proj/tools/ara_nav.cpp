#include <cmath>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_pipeline_flags(CLI::App& app, ara::cli::Overrides& o, std::string& config_path)
{
  app.add_option("--config", config_path, "INI run configuration");
  app.add_option("--alpha-s", o.alpha_s, "boundary slab width [m]");
  app.add_option("--foot-w", o.foot_w, "foot width [m]");
  app.add_option("--foot-l", o.foot_l, "foot length [m]");
  app.add_option("--tol-t", o.tol_t, "relative probe tolerance");
  app.add_option("--n", o.n, "anchor candidates");
  app.add_option("--m", o.m, "boundary neighbours per probe");
  app.add_option("--seed", o.seed, "PRNG seed");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"ARA navigation toolkit: plane extraction, transformation switching and simulators"};
  app.require_subcommand(1);

  // gen
  ara::cli::GenArgs gen;
  std::string gen_shape = "rectangle";
  std::vector<double> gen_translation{0.0, 0.0, 0.0};
  std::vector<double> gen_rpy_deg{0.0, 0.0, 0.0};
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic planar cloud as ASCII PCD");
  gen_cmd->add_option("--shape", gen_shape, "rectangle | strip | l_shape | rectangle_with_hole | circle");
  gen_cmd->add_option("--dims", gen.spec.dims, "shape dimensions [m]")->delimiter(',');
  gen_cmd->add_option("--pitch", gen.spec.pitch, "grid pitch [m]");
  gen_cmd->add_option("--noise", gen.spec.noise_sigma, "z noise sigma [m]");
  gen_cmd->add_option("--outliers", gen.spec.outlier_fraction, "outlier fraction in [0, 1)");
  gen_cmd->add_option("--translate", gen_translation, "pose translation x,y,z [m]")->delimiter(',')->expected(3);
  gen_cmd->add_option("--rpy", gen_rpy_deg, "pose roll,pitch,yaw [deg]")->delimiter(',')->expected(3);
  gen_cmd->add_option("--seed", gen.spec.seed, "PRNG seed");
  gen_cmd->add_option("--out", gen.out, "output PCD path")->required();

  // decide
  ara::cli::DecideArgs decide;
  std::string decide_out;
  auto* decide_cmd = app.add_subcommand("decide", "run the switching pipeline on one cloud");
  decide_cmd->add_option("cloud", decide.cloud_path, "input PCD")->required();
  add_pipeline_flags(*decide_cmd, decide.overrides, decide.config_path);
  decide_cmd->add_option("--out", decide_out, "also write the decision JSON here");

  // simulate
  ara::cli::SimulateArgs sim;
  std::string sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "run the track, magnet or jump simulator");
  sim_cmd->add_option("what", sim.what, "track | magnet | jump")
      ->required()
      ->check(CLI::IsMember({"track", "magnet", "jump"}));
  add_pipeline_flags(*sim_cmd, sim.overrides, sim.config_path);
  sim_cmd->add_option("--out", sim_out, "output directory");
  sim_cmd->add_option("--cloud", sim.target_cloud, "jump: take the target pose from this cloud");

  // batch
  ara::cli::BatchArgs batch;
  std::string batch_out;
  auto* batch_cmd = app.add_subcommand("batch", "decide on many clouds in parallel");
  batch_cmd->add_option("clouds", batch.clouds, "input PCDs")->required();
  add_pipeline_flags(*batch_cmd, batch.overrides, batch.config_path);
  batch_cmd->add_option("--out", batch_out, "output directory");
  batch_cmd->add_option("--jobs", batch.jobs, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : ara::cli::kExitError;
  }

  if (*gen_cmd) {
    const auto shape = ara::synth::parse_shape(gen_shape);
    if (!shape) {
      std::cerr << "error: unknown shape '" << gen_shape << "'\n";
      return ara::cli::kExitError;
    }
    gen.spec.shape = *shape;
    constexpr double deg = std::numbers::pi / 180.0;
    try {
      gen.spec.pose = ara::RigidTransform::rpy(gen_rpy_deg[0] * deg, gen_rpy_deg[1] * deg, gen_rpy_deg[2] * deg,
                                               ara::Vec3(gen_translation[0], gen_translation[1], gen_translation[2]));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return ara::cli::kExitError;
    }
    return ara::cli::cmd_gen(gen, std::cout, std::cerr);
  }
  if (*decide_cmd) {
    if (!decide_out.empty()) decide.json_out = decide_out;
    return ara::cli::cmd_decide(decide, std::cout, std::cerr);
  }
  if (*sim_cmd) {
    if (!sim_out.empty()) sim.overrides.out = sim_out;
    return ara::cli::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (!batch_out.empty()) batch.overrides.out = batch_out;
  return ara::cli::cmd_batch(batch, std::cout, std::cerr);
}
