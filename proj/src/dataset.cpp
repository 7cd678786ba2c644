#include "robgc/dataset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "robgc/rng.hpp"

namespace robgc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::ifstream open_or_fail(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path.filename().string() + " not found");
    return in;
}

std::vector<Edge> read_edges(const fs::path& path) {
    auto in = open_or_fail(path);
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u >> v) || u < 0 || v < 0)
            fail("edges.txt line " + std::to_string(line_no) + " is malformed: \"" + line + "\"");
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return edges;
}

Matrix read_features_bin(const fs::path& path) {
    auto in = open_or_fail(path);
    std::uint64_t n = 0, d = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&d), sizeof(d));
    if (!in) fail("features.bin header truncated");
    Matrix out(n, d);
    std::vector<float> row(d);
    for (std::uint64_t i = 0; i < n; ++i) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(d * sizeof(float)));
        if (!in) fail("features.bin truncated at row " + std::to_string(i));
        for (std::uint64_t j = 0; j < d; ++j) out(i, j) = static_cast<double>(row[j]);
    }
    return out;
}

Matrix read_features_csv(const fs::path& path) {
    auto in = open_or_fail(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                fail("features.csv line " + std::to_string(line_no) + " has a bad value: \"" + cell + "\"");
            }
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            fail("features.csv line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                 " values, expected " + std::to_string(width));
        rows.push_back(std::move(row));
    }
    Matrix out(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) out(i, j) = rows[i][j];
    return out;
}

std::vector<int> read_labels(const fs::path& path) {
    auto in = open_or_fail(path);
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            labels.push_back(std::stoi(line));
        } catch (const std::exception&) {
            fail("labels.txt line " + std::to_string(line_no) + " is malformed: \"" + line + "\"");
        }
    }
    return labels;
}

RoleMasks read_split(const fs::path& path) {
    auto in = open_or_fail(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("split.json is not valid JSON: " + std::string(e.what()));
    }
    RoleMasks masks;
    auto read_ids = [&](const char* key, std::vector<NodeId>& out) {
        if (!j.contains(key)) fail(std::string("split.json missing \"") + key + "\"");
        for (const auto& v : j.at(key)) out.push_back(v.get<NodeId>());
    };
    read_ids("train", masks.train);
    read_ids("val", masks.val);
    read_ids("test", masks.test);
    return masks;
}

enum class InductiveRole { val, test };

Graph induced_subgraph(const Graph& full, const std::vector<NodeId>& nodes,
                       std::size_t train_size, InductiveRole role) {
    const std::size_t n = nodes.size();
    std::vector<std::int64_t> to_new(full.num_nodes(), -1);
    for (std::size_t i = 0; i < n; ++i) to_new[nodes[i]] = static_cast<std::int64_t>(i);

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        const NodeId orig = nodes[i];
        for (NodeId nb : full.neighbors(orig)) {
            const std::int64_t j = to_new[nb];
            if (j >= 0 && static_cast<std::size_t>(j) > i)
                edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    }

    Matrix feats(n, full.features().cols());
    std::vector<int> labels(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto src = full.features().row(nodes[i]);
        std::copy(src.begin(), src.end(), feats.row(i).begin());
        if (!full.labels().empty()) labels[i] = full.labels()[nodes[i]];
    }

    RoleMasks masks;
    for (std::size_t i = 0; i < train_size; ++i) masks.train.push_back(static_cast<NodeId>(i));
    auto& inductive = role == InductiveRole::val ? masks.val : masks.test;
    for (std::size_t i = train_size; i < n; ++i) inductive.push_back(static_cast<NodeId>(i));
    return build_graph(edges, n, std::move(feats), std::move(labels), std::move(masks));
}

} // namespace

DatasetBundle load_dataset(const fs::path& directory) {
    const auto edges = read_edges(directory / "edges.txt");
    Matrix features;
    if (fs::exists(directory / "features.bin"))
        features = read_features_bin(directory / "features.bin");
    else
        features = read_features_csv(directory / "features.csv");
    auto labels = read_labels(directory / "labels.txt");
    auto masks = read_split(directory / "split.json");
    if (labels.size() != features.rows())
        fail("labels.txt has " + std::to_string(labels.size()) + " entries but features describe " +
             std::to_string(features.rows()) + " nodes");
    // build_graph rejects overlapping masks and out-of-range ids
    Graph g = build_graph(edges, features.rows(), std::move(features), std::move(labels), std::move(masks));
    return DatasetBundle{std::move(g)};
}

void save_dataset(const Graph& graph, const fs::path& directory) {
    fs::create_directories(directory);
    {
        std::ofstream out(directory / "edges.txt");
        for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
    }
    {
        std::ofstream out(directory / "features.bin", std::ios::binary);
        const std::uint64_t n = graph.features().rows();
        const std::uint64_t d = graph.features().cols();
        out.write(reinterpret_cast<const char*>(&n), sizeof(n));
        out.write(reinterpret_cast<const char*>(&d), sizeof(d));
        std::vector<float> row(d);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto src = graph.features().row(i);
            for (std::uint64_t j = 0; j < d; ++j) row[j] = static_cast<float>(src[j]);
            out.write(reinterpret_cast<const char*>(row.data()),
                      static_cast<std::streamsize>(d * sizeof(float)));
        }
    }
    {
        std::ofstream out(directory / "labels.txt");
        for (int label : graph.labels()) out << label << '\n';
    }
    {
        json j;
        j["train"] = graph.masks().train;
        j["val"] = graph.masks().val;
        j["test"] = graph.masks().test;
        std::ofstream out(directory / "split.json");
        out << j.dump() << '\n';
    }
}

DatasetBundle generate_sbm(const SyntheticSpec& spec, std::uint64_t seed) {
    if (spec.classes == 0 || spec.nodes_per_class == 0)
        throw std::invalid_argument("generate_sbm: empty block specification");
    if (spec.inter_p < 0.0 || spec.inter_p >= spec.intra_p || spec.intra_p > 1.0)
        throw std::invalid_argument("generate_sbm: need 0 <= inter_p < intra_p <= 1");
    if (spec.feature_dim < spec.classes)
        throw std::invalid_argument("generate_sbm: feature_dim must be >= classes for orthogonal means");
    if (spec.feature_noise < 0.0) throw std::invalid_argument("generate_sbm: negative feature noise");

    const std::size_t C = spec.classes;
    const std::size_t m = spec.nodes_per_class;
    const std::size_t n = C * m;
    Rng rng(seed);

    // Per block pair, draw the edge count from the matching binomial and then
    // sample that many distinct slots.
    std::vector<Edge> edges;
    auto sample_block = [&](std::size_t a, std::size_t b) {
        const bool same = a == b;
        const std::size_t pairs = same ? m * (m - 1) / 2 : m * m;
        const double p = same ? spec.intra_p : spec.inter_p;
        if (pairs == 0 || p <= 0.0) return;
        const std::size_t count = rng.binomial(pairs, p);
        std::set<Edge> block;
        while (block.size() < count) {
            NodeId u, v;
            if (same) {
                u = static_cast<NodeId>(a * m + rng.index(m));
                v = static_cast<NodeId>(a * m + rng.index(m));
                if (u == v) continue;
            } else {
                u = static_cast<NodeId>(a * m + rng.index(m));
                v = static_cast<NodeId>(b * m + rng.index(m));
            }
            block.emplace(std::min(u, v), std::max(u, v));
        }
        edges.insert(edges.end(), block.begin(), block.end());
    };
    for (std::size_t a = 0; a < C; ++a)
        for (std::size_t b = a; b < C; ++b) sample_block(a, b);

    Matrix features(n, spec.feature_dim);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i / m;
        labels[i] = static_cast<int>(c);
        features(i, c) = 1.0; // orthogonal unit-norm class means
        for (std::size_t j = 0; j < spec.feature_dim; ++j)
            features(i, j) += spec.feature_noise * rng.normal();
    }

    // 60/20/20 split over a shuffled node order
    std::vector<NodeId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
    rng.shuffle(order);
    RoleMasks masks;
    const std::size_t train_size = n * 6 / 10;
    const std::size_t val_size = n * 2 / 10;
    masks.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_size));
    masks.val.assign(order.begin() + static_cast<std::ptrdiff_t>(train_size),
                     order.begin() + static_cast<std::ptrdiff_t>(train_size + val_size));
    masks.test.assign(order.begin() + static_cast<std::ptrdiff_t>(train_size + val_size), order.end());
    std::sort(masks.train.begin(), masks.train.end());
    std::sort(masks.val.begin(), masks.val.end());
    std::sort(masks.test.begin(), masks.test.end());

    Graph g = build_graph(edges, n, std::move(features), std::move(labels), std::move(masks));
    return DatasetBundle{std::move(g)};
}

InductiveSplit inductive_split(const DatasetBundle& bundle) {
    const auto& masks = bundle.graph.masks();
    std::vector<NodeId> train_nodes = masks.train;
    std::sort(train_nodes.begin(), train_nodes.end());

    auto extend = [&](const std::vector<NodeId>& extra) {
        std::vector<NodeId> nodes = train_nodes;
        std::vector<NodeId> sorted_extra = extra;
        std::sort(sorted_extra.begin(), sorted_extra.end());
        nodes.insert(nodes.end(), sorted_extra.begin(), sorted_extra.end());
        return nodes;
    };

    InductiveSplit split;
    split.train_to_original = train_nodes;
    split.val_to_original = extend(masks.val);
    split.test_to_original = extend(masks.test);
    split.train = induced_subgraph(bundle.graph, split.train_to_original, train_nodes.size(),
                                   InductiveRole::test);
    split.val = induced_subgraph(bundle.graph, split.val_to_original, train_nodes.size(),
                                 InductiveRole::val);
    split.test = induced_subgraph(bundle.graph, split.test_to_original, train_nodes.size(),
                                  InductiveRole::test);
    return split;
}

} // namespace robgc
