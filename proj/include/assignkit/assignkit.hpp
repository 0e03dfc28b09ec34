#pragma once

// Umbrella header.

#include "assignkit/apraq.hpp"
#include "assignkit/auction.hpp"
#include "assignkit/bottleneck.hpp"
#include "assignkit/cbaa.hpp"
#include "assignkit/distributed_auction.hpp"
#include "assignkit/dynamic_engine.hpp"
#include "assignkit/errors.hpp"
#include "assignkit/fair_matching.hpp"
#include "assignkit/generate.hpp"
#include "assignkit/grid.hpp"
#include "assignkit/hopcroft_karp.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/instance.hpp"
#include "assignkit/io.hpp"
#include "assignkit/k_sum.hpp"
#include "assignkit/lossy.hpp"
#include "assignkit/min_deviation.hpp"
#include "assignkit/oracle.hpp"
#include "assignkit/policies.hpp"
#include "assignkit/rational.hpp"
#include "assignkit/report.hpp"
#include "assignkit/rng.hpp"
#include "assignkit/scenario.hpp"
#include "assignkit/semi_assignment.hpp"
#include "assignkit/side_constraints.hpp"
#include "assignkit/simulation.hpp"
#include "assignkit/topology.hpp"
