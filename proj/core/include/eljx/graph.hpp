#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "eljx/common.hpp"
#include "eljx/fock_basis.hpp"

namespace eljx {

/// Undirected 0/1 adjacency with zero diagonal, produced by thresholding
/// |H_eff| entries against the cutoff.
struct AdjacencyMatrix {
  Eigen::Index nodes = 0;
  double cutoff = 0.0;
  std::vector<std::uint8_t> a; // row-major nodes x nodes

  bool at(Eigen::Index i, Eigen::Index j) const {
    return a[static_cast<std::size_t>(i * nodes + j)] != 0;
  }
};

/// Threshold rule: a_{l,l} = 0, a_{l,lt} = 1 iff |H_eff(l,lt)| > cutoff.
AdjacencyMatrix adjacency(const Eigen::MatrixXcd& h_eff, double cutoff);

std::vector<int> degrees(const AdjacencyMatrix& adj);
std::size_t edge_count(const AdjacencyMatrix& adj);

/// 2|E| / (|V| (|V|-1)); rejects single-node graphs.
double graph_density(const AdjacencyMatrix& adj);

struct DegreeDistribution {
  std::vector<double> pk; // probability of degree K, K = 0..nodes-1
  std::vector<std::size_t> counts;
  double mean = 0.0;
  double variance = 0.0;
  std::size_t nodes_total = 0;
};

/// P(K) pooled over all nodes of all realizations (same node count each).
DegreeDistribution degree_distribution(const std::vector<AdjacencyMatrix>& ensemble);

/// Same pooling from precomputed degree vectors.
DegreeDistribution degree_distribution_from_degrees(const std::vector<std::vector<int>>& degree_sets);

enum class GraphFormat { Dot, GraphML, EdgeCsv };

/// Write the graph with nodes labeled by 1-based configuration index and
/// edges weighted by |H_eff|. When `labels` is given, nodes carry the
/// occupation vector as an attribute.
void export_graph(const AdjacencyMatrix& adj, const Eigen::MatrixXcd& h_eff,
                  const FockBasis* labels, GraphFormat format, std::ostream& os);

/// Rebuild an adjacency matrix from an edge-CSV stream (l,ltilde,weight
/// header, 1-based indices); the lossless round trip of EdgeCsv exports.
AdjacencyMatrix import_edge_csv(std::istream& is, Eigen::Index nodes, double cutoff);

} // namespace eljx
