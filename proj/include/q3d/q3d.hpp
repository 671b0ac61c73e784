#pragma once

#include "q3d/board.hpp"
#include "q3d/bounds.hpp"
#include "q3d/certificate.hpp"
#include "q3d/coverage.hpp"
#include "q3d/error.hpp"
#include "q3d/formats.hpp"
#include "q3d/ilp_export.hpp"
#include "q3d/ilp_replay.hpp"
#include "q3d/solver.hpp"
#include "q3d/symmetry.hpp"
#include "q3d/table.hpp"
#include "q3d/verifier.hpp"
