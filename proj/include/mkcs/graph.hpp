#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mkcs {

/// Thrown by parse_dimacs; what() names the offending line.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Immutable simple undirected graph. Edges are stored canonically:
/// 0-indexed, i < j, sorted, no duplicates, no self-loops.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& neighbors() const { return adj_; }

    bool has_edge(int i, int j) const;
    std::vector<int> degrees() const;
    double density_percent() const;  // 100*2|E|/(n(n-1)); throws for n <= 1
    Eigen::MatrixXd adjacency() const;
    Eigen::MatrixXd laplacian() const;
    Graph complement() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// K_k square-product g: vertex (r,i) -> r*g.n()+i; edges within a copy of g
/// plus (r,i)~(l,i) for r != l.
Graph cartesian_product_complete(int k, const Graph& g);

Graph complete_graph(int n);
Graph cycle_graph(int n);

/// Vertices are d-subsets of [v] in lexicographic order; edge iff |S cap T| = q.
Graph johnson_graph(int v, int d, int q, int vertex_cap = 200000);
/// Kneser graph K(v,d) = J(v,d,0).
Graph kneser_graph(int v, int d, int vertex_cap = 200000);

/// Vertices are d-digit base-q strings (big-endian digit order);
/// edge iff Hamming distance is exactly j (hamming) or in [1, j] (hamming_le).
Graph hamming_graph(int d, int q, int j, int vertex_cap = 200000);
Graph hamming_le_graph(int d, int q, int j, int vertex_cap = 200000);

/// Squares of a rows x cols board; edge iff same row, column or diagonal.
Graph queen_graph(int rows, int cols);

/// Mycielski construction M(g): shadow vertex n+i per vertex i, apex 2n.
Graph mycielski(const Graph& g);
/// t-th iterate starting from K_2 (t=2 gives K_2, t=3 the 5-cycle, ...).
Graph mycielski_graph(int t);

/// Generalized Mycielskian with r+1 shadow levels, iterated t-1 times from K_2.
Graph insertions_graph(int r, int t);

/// Keller graph of dimension d restricted to the neighborhood of the zero word.
Graph keller_graph(int dim);

/// Ring of g cliques: vertices split into g consecutive groups (sizes as equal
/// as possible, remainder spread over the trailing groups); two vertices are
/// adjacent iff their groups coincide or are cyclically consecutive.
Graph fat_ring_graph(int n, int groups);

/// DIMACS .col: lines `c ...`, `p edge <n> <m>`, `e <i> <j>` (1-based).
/// Duplicate edges collapse; self-loops and bad indices raise ParseError.
/// A declared edge count that disagrees with the parsed count only warns.
Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string write_dimacs(const Graph& g);
Graph load_dimacs_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Resolve "family:<name>:<p1,p2,...>" into a graph; a "complement:" prefix
/// complements the result; anything else is treated as a DIMACS file path.
/// Throws std::invalid_argument for unknown families or bad parameters.
Graph graph_from_spec(const std::string& spec);
bool is_family_spec(const std::string& spec);

std::uint64_t binomial_u64(int a, int b);

}  // namespace mkcs
