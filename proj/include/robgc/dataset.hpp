#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "robgc/graph.hpp"

namespace robgc {

struct DatasetBundle {
    Graph graph; // role masks carry the train/val/test split
};

/// Planted-partition benchmark: C blocks of equal size, intra/inter edge
/// probabilities, features = orthogonal unit class mean + Gaussian noise.
struct SyntheticSpec {
    std::size_t classes = 4;
    std::size_t nodes_per_class = 150;
    double intra_p = 0.05;
    double inter_p = 0.005;
    std::size_t feature_dim = 4;
    double feature_noise = 0.6;
};

/// Train/val/test induced subgraphs; training nodes keep ids [0, train_size)
/// in all three graphs. to_original maps each graph's new ids back.
struct InductiveSplit {
    Graph train;
    Graph val;
    Graph test;
    std::vector<NodeId> train_to_original;
    std::vector<NodeId> val_to_original;
    std::vector<NodeId> test_to_original;
};

/// Reads edges.txt, features.bin (or features.csv), labels.txt, split.json.
DatasetBundle load_dataset(const std::filesystem::path& directory);

/// Writes the same directory layout; features go to features.bin (float32)
/// so a load round-trips bit-exactly.
void save_dataset(const Graph& graph, const std::filesystem::path& directory);

DatasetBundle generate_sbm(const SyntheticSpec& spec, std::uint64_t seed);

InductiveSplit inductive_split(const DatasetBundle& bundle);

} // namespace robgc
