#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace mge {

// Weighted undirected simple graph. Vertex indices are dense in [0, n).
struct WeightedGraph {
    struct Edge {
        int u = 0;
        int v = 0;
        double w = 1.0;
    };

    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::string> labels;  // empty, or one label per vertex

    bool has_labels() const { return !labels.empty(); }
};

// adjacency()[v] lists (neighbor, edge index) pairs.
std::vector<std::vector<std::pair<int, int>>> adjacency(const WeightedGraph& g);

// Throws std::invalid_argument on self-loops, nonpositive weights or
// out-of-range indices.
void validate(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

// Connectivity of g restricted to the vertices where alive[v] is true.
bool is_connected_subset(const WeightedGraph& g, const std::vector<char>& alive);

int find_vertex_by_label(const WeightedGraph& g, const std::string& label);

// Lineage metadata for one subdiamond: the part of a diamond that evolved
// from a single edge. Node index == index of that edge in creation order.
struct Subdiamond {
    int bottom = -1;
    int top = -1;
    int level = 0;           // step at which the originating edge was created
    int height = 1;          // bottom-to-top path length, 2^(n - level)
    int parent = -1;
    std::array<int, 4> children{-1, -1, -1, -1};
    int vertex_a = -1;       // the +side vertex created when this edge split
    int vertex_b = -1;       // the -side vertex, -1 for leaves
    int diagonal_edge = -1;  // graph edge index of the originating edge, if retained
    std::vector<int> members;  // sorted vertex ids, including bottom and top

    bool is_leaf() const { return children[0] < 0; }
};

struct DiamondStructure {
    int level = 0;
    std::vector<int> edge_level;    // per graph edge, creation step 0..level
    std::vector<int> vertex_birth;  // per vertex; 0 for the two originals
    std::vector<int> generation;    // r in 1..level counted from the last step;
                                    // 0 for the two original vertices
    std::vector<Subdiamond> subdiamonds;  // node 0 is the whole diamond

    const Subdiamond& root() const { return subdiamonds.at(0); }
};

struct MetricSpace;  // metric.hpp

// One block of a glued space plus where it lives in the combined graph.
struct GluedSpace {
    struct Block {
        int base_point = 0;   // block-local index of O_n
        int offset = 0;       // combined index of block-local point 0
        int n_points = 0;
    };
    std::vector<Block> blocks;
    std::vector<int> path_lengths;
    std::vector<std::vector<int>> path_vertices;  // interior vertices of P_n, in order
    WeightedGraph combined;

    int combined_index(int block, int local) const {
        return blocks.at(block).offset + local;
    }
    int base_combined(int block) const {
        return combined_index(block, blocks.at(block).base_point);
    }
};

}  // namespace mge
