#pragma once

// Densest-subhypergraph toolkit for monotone partial-edge rewards: peeling
// approximations, convex-hull projection, flow-based exact solving, ILP
// export, and size-constrained variants.

#include "hyperdense/constrained.hpp"
#include "hyperdense/errors.hpp"
#include "hyperdense/exact.hpp"
#include "hyperdense/flow.hpp"
#include "hyperdense/hypergraph.hpp"
#include "hyperdense/peel.hpp"
#include "hyperdense/project.hpp"
#include "hyperdense/rational.hpp"
#include "hyperdense/rewards.hpp"
