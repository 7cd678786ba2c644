#pragma once

#include <cstdint>

#include "robgc/graph.hpp"

namespace robgc {

struct NoiseSpec {
    double level = 0.0;        // ratio of changed edges, round(level * |E|) changes total
    double add_fraction = 0.5; // share of changes that are additions (floor), rest are deletions
    std::uint64_t seed = 0;
};

/// Adds uniformly sampled non-edges and removes uniformly sampled real edges,
/// without replacement, deterministically per seed.
Graph inject_random_noise(const Graph& graph, const NoiseSpec& spec);

/// |symmetric difference of edge sets| / |original edge set|.
double changed_edge_ratio(const Graph& original, const Graph& noisy);

} // namespace robgc
