#pragma once

#include <string>

#include "ara/drive.hpp"

namespace ara::inspect {

/// One camera frame captured while driving. `image_path` is a placeholder name; no image
/// is produced by the simulator.
struct InspectionFrame
{
  double t = 0.0;
  drive::Pose2D pose;
  std::string image_path;
};

/// Seam for a visual defect inspector running in mobile mode.
class Inspector
{
public:
  virtual ~Inspector() = default;
  virtual void inspect(const InspectionFrame& frame) = 0;
};

class NullInspector final : public Inspector
{
public:
  void inspect(const InspectionFrame&) override {}
};

/// Adapts an inspector to a drive::StepHook, emitting a frame every `every` steps.
inline drive::StepHook inspection_hook(Inspector& inspector, std::size_t every = 25)
{
  return [&inspector, every, count = std::size_t{0}](const drive::TraceRow& row) mutable {
    if (count++ % every != 0) return;
    inspector.inspect({row.t, row.pose, "frame_" + std::to_string(count - 1) + ".png"});
  };
}

}  // namespace ara::inspect
