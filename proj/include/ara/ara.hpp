#pragma once

#include "ara/boundary.hpp"
#include "ara/cloud.hpp"
#include "ara/config.hpp"
#include "ara/drive.hpp"
#include "ara/errors.hpp"
#include "ara/footprint.hpp"
#include "ara/geometry.hpp"
#include "ara/inchworm.hpp"
#include "ara/inspect.hpp"
#include "ara/magnet.hpp"
#include "ara/pcd.hpp"
#include "ara/report.hpp"
#include "ara/rng.hpp"
#include "ara/switching.hpp"
#include "ara/synth.hpp"
