#pragma once

#include "surfsat/rational.hpp"
#include "surfsat/linalg.hpp"
#include "surfsat/config.hpp"
#include "surfsat/lattice.hpp"
#include "surfsat/mumford.hpp"
#include "surfsat/fibre.hpp"
#include "surfsat/saturation.hpp"
#include "surfsat/elliptic.hpp"
#include "surfsat/hironaka.hpp"
