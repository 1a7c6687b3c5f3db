#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsym {

// Vertices and edges are numbered from 1 throughout the library and in every
// file format.
struct Edge {
    int id = 0;
    int source = 0;
    int target = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Finite directed multigraph. Immutable once built; construct through
// build_graph / loops_graph or the file parsers, which validate indices.
class DirectedMultigraph {
public:
    int num_vertices() const { return num_vertices_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const;  // throws InvalidArgument when id is unknown

    friend bool operator==(const DirectedMultigraph&, const DirectedMultigraph&) = default;

private:
    friend DirectedMultigraph build_graph(int, const std::vector<std::pair<int, int>>&);
    int num_vertices_ = 0;
    std::vector<Edge> edges_;
};

// Dense n x n matrix of edge counts, entry (i, j) = #edges v_{i+1} -> v_{j+1}.
// Storage and accessors are 0-based.
class VertexMatrix {
public:
    VertexMatrix() = default;
    explicit VertexMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {}
    VertexMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static VertexMatrix identity(int n);

    int size() const { return n_; }
    long long operator()(int i, int j) const { return entries_[index(i, j)]; }
    long long& operator()(int i, int j) { return entries_[index(i, j)]; }

    long long total() const;

    friend bool operator==(const VertexMatrix&, const VertexMatrix&) = default;

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
    int n_ = 0;
    std::vector<long long> entries_;
};

DirectedMultigraph build_graph(int num_vertices, const std::vector<std::pair<int, int>>& edge_list);
DirectedMultigraph loops_graph(int n);

VertexMatrix vertex_matrix(const DirectedMultigraph& g);
bool has_sink(const DirectedMultigraph& g);
bool is_connected(const DirectedMultigraph& g);
bool is_disjoint_loops(const DirectedMultigraph& g);

// Expands an adjacency matrix into edges, one per unit of multiplicity, row-major.
DirectedMultigraph graph_from_matrix(const VertexMatrix& d);

// "vertices <n>" then "edge <s> <t>" lines; blank lines and '#' comments ignored.
DirectedMultigraph parse_edge_list(std::string_view text);
// {"vertices": n, "adjacency": [[...], ...]}
DirectedMultigraph parse_adjacency_document(std::string_view text);
// Dispatches on content: a leading '{' selects the adjacency document.
DirectedMultigraph parse_graph(std::string_view text);
DirectedMultigraph load_graph(const std::string& path);

std::string to_edge_list(const DirectedMultigraph& g);

}  // namespace qsym
