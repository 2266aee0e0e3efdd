#include <doctest.h>

#include <sstream>

#include "eljx/graph.hpp"
#include "test_helpers.hpp"

using namespace eljx;

namespace {

Eigen::MatrixXcd dense_symmetric(Eigen::Index n, unsigned seed) {
  const Eigen::MatrixXcd u = testing::random_unitary(n, seed);
  Eigen::MatrixXcd m = u + u.adjoint(); // Hermitian, generically no exact zeros
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 5.0; // large diagonal, must be ignored
  return m;
}

} // namespace

TEST_CASE("adjacency thresholding: empty, complete, diagonal exclusion") {
  const Eigen::MatrixXcd m = dense_symmetric(12, 5);

  const AdjacencyMatrix empty = adjacency(m, 1e9);
  CHECK(edge_count(empty) == 0);
  CHECK(graph_density(empty) == doctest::Approx(0.0));

  const AdjacencyMatrix complete = adjacency(m, 0.0);
  CHECK(edge_count(complete) == 12 * 11 / 2);
  CHECK(graph_density(complete) == doctest::Approx(1.0));
  for (Eigen::Index i = 0; i < 12; ++i) CHECK(!complete.at(i, i)); // despite |m_ii| = 5

  const auto deg = degrees(complete);
  for (int d : deg) CHECK(d == 11);
}

TEST_CASE("edge set shrinks monotonically with the cutoff") {
  const Eigen::MatrixXcd m = dense_symmetric(20, 9);
  std::size_t prev = edge_count(adjacency(m, 0.0));
  for (double c : {0.1, 0.3, 0.6, 1.0, 1.5, 2.5}) {
    const AdjacencyMatrix a = adjacency(m, c);
    const std::size_t e = edge_count(a);
    CHECK(e <= prev);
    prev = e;
    // handshake
    const auto deg = degrees(a);
    std::size_t sum = 0;
    for (int d : deg) sum += static_cast<std::size_t>(d);
    CHECK(sum == 2 * e);
    // symmetry, zero diagonal
    for (Eigen::Index i = 0; i < a.nodes; ++i) {
      CHECK(!a.at(i, i));
      for (Eigen::Index j = 0; j < a.nodes; ++j) CHECK(a.at(i, j) == a.at(j, i));
    }
  }
}

TEST_CASE("degree distribution point masses and pooling") {
  const Eigen::MatrixXcd m = dense_symmetric(8, 3);
  const std::vector<AdjacencyMatrix> complete_only{adjacency(m, 0.0)};
  const DegreeDistribution full = degree_distribution(complete_only);
  CHECK(full.pk[7] == doctest::Approx(1.0));
  CHECK(full.mean == doctest::Approx(7.0));
  CHECK(full.variance == doctest::Approx(0.0));

  const std::vector<AdjacencyMatrix> empty_only{adjacency(m, 1e9)};
  const DegreeDistribution none = degree_distribution(empty_only);
  CHECK(none.pk[0] == doctest::Approx(1.0));
  CHECK(none.mean == doctest::Approx(0.0));

  CHECK_THROWS_AS(degree_distribution({}), validation_error);
}

TEST_CASE("density formula and the single-node rejection") {
  Eigen::MatrixXcd two = Eigen::MatrixXcd::Zero(2, 2);
  two(0, 1) = two(1, 0) = 1.0;
  CHECK(graph_density(adjacency(two, 0.5)) == doctest::Approx(1.0));
  CHECK(graph_density(adjacency(two, 2.0)) == doctest::Approx(0.0));

  const Eigen::MatrixXcd one = Eigen::MatrixXcd::Zero(1, 1);
  CHECK_THROWS_AS(graph_density(adjacency(one, 0.1)), validation_error);
}

TEST_CASE("DOT export of a 2-node, 1-edge graph") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = m(1, 0) = 0.25;
  const AdjacencyMatrix a = adjacency(m, 0.1);
  std::ostringstream os;
  export_graph(a, m, nullptr, GraphFormat::Dot, os);
  const std::string dot = os.str();
  CHECK(dot.find("graph heff {") != std::string::npos);
  CHECK(dot.find("1 -- 2 [weight=0.25]") != std::string::npos);
  CHECK(dot.find("->") == std::string::npos); // undirected
}

TEST_CASE("edge-CSV round trip reproduces the adjacency exactly") {
  const Eigen::MatrixXcd m = dense_symmetric(15, 21);
  const AdjacencyMatrix a = adjacency(m, 0.8);
  std::ostringstream os;
  export_graph(a, m, nullptr, GraphFormat::EdgeCsv, os);
  std::istringstream is(os.str());
  const AdjacencyMatrix back = import_edge_csv(is, a.nodes, a.cutoff);
  CHECK(back.a == a.a);
}

TEST_CASE("GraphML export is well formed and carries the required elements") {
  const FockBasis basis = FockBasis::enumerate(1, 4);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = m(1, 0) = 0.5;
  m(2, 3) = m(3, 2) = 0.7;
  const AdjacencyMatrix a = adjacency(m, 0.1);
  std::ostringstream os;
  export_graph(a, m, &basis, GraphFormat::GraphML, os);
  const std::string xml = os.str();

  // Minimal schema validation: declaration, required elements, tag balance.
  CHECK(xml.rfind("<?xml", 0) == 0);
  CHECK(xml.find("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">") != std::string::npos);
  CHECK(xml.find("edgedefault=\"undirected\"") != std::string::npos);
  for (const char* tag : {"graphml", "graph", "node", "edge", "key", "data"}) {
    std::size_t open = 0, close = 0, self = 0, pos = 0;
    const std::string ot = "<" + std::string(tag);
    const std::string ct = "</" + std::string(tag) + ">";
    while ((pos = xml.find(ot, pos)) != std::string::npos) {
      const char next = xml[pos + ot.size()]; // word boundary: "<graph" vs "<graphml"
      if (next != ' ' && next != '>' && next != '/') {
        ++pos;
        continue;
      }
      const std::size_t end = xml.find('>', pos);
      REQUIRE(end != std::string::npos);
      if (xml[end - 1] == '/') ++self;
      else ++open;
      pos = end;
    }
    pos = 0;
    while ((pos = xml.find(ct, pos)) != std::string::npos) {
      ++close;
      pos += ct.size();
    }
    CHECK(open == close);
  }
  CHECK(xml.find("<node id=\"n1\">") != std::string::npos);
  CHECK(xml.find("occupation") != std::string::npos);
}
