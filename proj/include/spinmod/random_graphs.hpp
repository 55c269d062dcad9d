#pragma once

#include <cstdint>
#include <random>

#include "spinmod/dualgraph.hpp"

namespace spinmod {

struct RandomGraphBounds {
  std::size_t max_vertices = 4;
  std::size_t max_edges = 6;
  int max_genus = 3;
  bool allow_loops = true;
};

/// Connected multigraph drawn from `rng`: a random spanning tree plus extra
/// edges (loops allowed when enabled), genera uniform in [0, max_genus].
/// Uses only raw engine output so sequences are identical across standard
/// libraries.
DualGraph random_dual_graph(std::mt19937_64& rng, const RandomGraphBounds& bounds = {});

}  // namespace spinmod
