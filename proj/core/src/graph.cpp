#include "eljx/graph.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace eljx {

AdjacencyMatrix adjacency(const Eigen::MatrixXcd& h_eff, double cutoff) {
  if (h_eff.rows() != h_eff.cols()) throw validation_error("adjacency: matrix must be square");
  if (cutoff < 0.0) throw validation_error("adjacency: cutoff must be >= 0");
  const Eigen::Index n = h_eff.rows();
  AdjacencyMatrix adj;
  adj.nodes = n;
  adj.cutoff = cutoff;
  adj.a.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const std::uint8_t bit = std::abs(h_eff(i, j)) > cutoff ? 1 : 0;
      adj.a[static_cast<std::size_t>(i * n + j)] = bit;
      adj.a[static_cast<std::size_t>(j * n + i)] = bit;
    }
  }
  return adj;
}

std::vector<int> degrees(const AdjacencyMatrix& adj) {
  std::vector<int> deg(static_cast<std::size_t>(adj.nodes), 0);
  for (Eigen::Index i = 0; i < adj.nodes; ++i) {
    int d = 0;
    for (Eigen::Index j = 0; j < adj.nodes; ++j) d += adj.at(i, j) ? 1 : 0;
    deg[static_cast<std::size_t>(i)] = d;
  }
  return deg;
}

std::size_t edge_count(const AdjacencyMatrix& adj) {
  std::size_t e = 0;
  for (Eigen::Index i = 0; i < adj.nodes; ++i) {
    for (Eigen::Index j = i + 1; j < adj.nodes; ++j) e += adj.at(i, j) ? 1 : 0;
  }
  return e;
}

double graph_density(const AdjacencyMatrix& adj) {
  if (adj.nodes < 2) throw validation_error("graph_density: need at least 2 nodes");
  const double v = static_cast<double>(adj.nodes);
  return 2.0 * static_cast<double>(edge_count(adj)) / (v * (v - 1.0));
}

DegreeDistribution degree_distribution_from_degrees(const std::vector<std::vector<int>>& degree_sets) {
  if (degree_sets.empty()) throw validation_error("degree_distribution: empty ensemble");
  const std::size_t n = degree_sets.front().size();
  for (const auto& d : degree_sets) {
    if (d.size() != n) throw validation_error("degree_distribution: mixed node counts in ensemble");
  }
  DegreeDistribution dist;
  dist.counts.assign(n, 0);
  double sum = 0.0, sumsq = 0.0;
  for (const auto& d : degree_sets) {
    for (int k : d) {
      dist.counts[static_cast<std::size_t>(k)] += 1;
      sum += k;
      sumsq += static_cast<double>(k) * k;
      dist.nodes_total += 1;
    }
  }
  const auto total = static_cast<double>(dist.nodes_total);
  dist.pk.resize(n);
  for (std::size_t k = 0; k < dist.pk.size(); ++k) {
    dist.pk[k] = static_cast<double>(dist.counts[k]) / total;
  }
  dist.mean = sum / total;
  dist.variance = std::max(0.0, sumsq / total - dist.mean * dist.mean);
  return dist;
}

DegreeDistribution degree_distribution(const std::vector<AdjacencyMatrix>& ensemble) {
  if (ensemble.empty()) throw validation_error("degree_distribution: empty ensemble");
  std::vector<std::vector<int>> degree_sets;
  degree_sets.reserve(ensemble.size());
  for (const auto& g : ensemble) degree_sets.push_back(degrees(g));
  return degree_distribution_from_degrees(degree_sets);
}

namespace {

std::string occupation_label(const FockBasis& basis, Eigen::Index i) {
  const Occupation& occ = basis.state(static_cast<std::size_t>(i));
  std::string s;
  for (std::size_t j = 0; j < occ.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(occ[j]);
  }
  return s;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

void export_graph(const AdjacencyMatrix& adj, const Eigen::MatrixXcd& h_eff,
                  const FockBasis* labels, GraphFormat format, std::ostream& os) {
  if (h_eff.rows() != adj.nodes || h_eff.cols() != adj.nodes) {
    throw validation_error("export_graph: weight matrix does not match the adjacency size");
  }
  const Eigen::Index n = adj.nodes;
  switch (format) {
    case GraphFormat::Dot: {
      os << "graph heff {\n";
      for (Eigen::Index i = 0; i < n; ++i) {
        os << "  " << (i + 1);
        if (labels) os << " [occ=\"" << occupation_label(*labels, i) << "\"]";
        os << ";\n";
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          if (!adj.at(i, j)) continue;
          os << "  " << (i + 1) << " -- " << (j + 1) << " [weight=" << fmt17(std::abs(h_eff(i, j)))
             << "];\n";
        }
      }
      os << "}\n";
      break;
    }
    case GraphFormat::GraphML: {
      os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         << "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
         << "  <key id=\"occ\" for=\"node\" attr.name=\"occupation\" attr.type=\"string\"/>\n"
         << "  <graph id=\"heff\" edgedefault=\"undirected\">\n";
      for (Eigen::Index i = 0; i < n; ++i) {
        os << "    <node id=\"n" << (i + 1) << "\">";
        if (labels) os << "<data key=\"occ\">" << occupation_label(*labels, i) << "</data>";
        os << "</node>\n";
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          if (!adj.at(i, j)) continue;
          os << "    <edge source=\"n" << (i + 1) << "\" target=\"n" << (j + 1) << "\"><data key=\"w\">"
             << fmt17(std::abs(h_eff(i, j))) << "</data></edge>\n";
        }
      }
      os << "  </graph>\n</graphml>\n";
      break;
    }
    case GraphFormat::EdgeCsv: {
      os << "l,ltilde,weight\n";
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          if (!adj.at(i, j)) continue;
          os << (i + 1) << "," << (j + 1) << "," << fmt17(std::abs(h_eff(i, j))) << "\n";
        }
      }
      break;
    }
  }
}

AdjacencyMatrix import_edge_csv(std::istream& is, Eigen::Index nodes, double cutoff) {
  AdjacencyMatrix adj;
  adj.nodes = nodes;
  adj.cutoff = cutoff;
  adj.a.assign(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes), 0);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true; // "l,ltilde,weight"
      continue;
    }
    std::istringstream row(line);
    std::string li, lj;
    if (!std::getline(row, li, ',') || !std::getline(row, lj, ',')) {
      throw validation_error("import_edge_csv: malformed row '" + line + "'");
    }
    const long i = std::stol(li) - 1;
    const long j = std::stol(lj) - 1;
    if (i < 0 || j < 0 || i >= nodes || j >= nodes) {
      throw validation_error("import_edge_csv: node index out of range in '" + line + "'");
    }
    adj.a[static_cast<std::size_t>(i * nodes + j)] = 1;
    adj.a[static_cast<std::size_t>(j * nodes + i)] = 1;
  }
  return adj;
}

} // namespace eljx
