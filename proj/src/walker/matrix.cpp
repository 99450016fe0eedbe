#include "reef/matrix.hpp"

#include <vector>

#include "reef/namespaces.hpp"

namespace reef {

namespace {

SparseMatrix withoutDiagonal(SparseMatrix m) {
  m.prune([](Eigen::Index row, Eigen::Index col, double) { return row != col; });
  return m;
}

}  // namespace

SparseMatrix adjacencyMatrix(const QuadStore& store, const std::string& p) {
  const auto n = static_cast<Eigen::Index>(store.termCount());
  SparseMatrix m(n, n);
  auto pid = store.lookup(Term::iri(p));
  if (!pid) return m;
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& q : store.matchIds(kNoTerm, *pid, kNoTerm, kNoTerm)) {
    triplets.emplace_back(q[0], q[2], 1.0);
  }
  // Quads repeated across graphs collapse to a single 1.
  m.setFromTriplets(triplets.begin(), triplets.end(),
                    [](double a, double) { return a; });
  return m;
}

SparseMatrix coauthorshipOracle(const QuadStore& store) {
  SparseMatrix a = adjacencyMatrix(store, ns::core("created"));
  SparseMatrix at = a.transpose();
  SparseMatrix product = a * at;
  return withoutDiagonal(product);
}

SparseMatrix normalizedCoauthorship(const QuadStore& store) {
  SparseMatrix a = adjacencyMatrix(store, ns::core("created"));
  const auto n = a.rows();
  Eigen::VectorXd outDeg = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd inDeg = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
      outDeg[it.row()] += 1.0;
      inDeg[it.col()] += 1.0;
    }
  }
  Eigen::VectorXd rowScale(n), itemScale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rowScale[i] = outDeg[i] > 0 ? 1.0 / outDeg[i] : 0.0;
    itemScale[i] = inDeg[i] > 1 ? 1.0 / (inDeg[i] - 1.0) : 0.0;
  }
  SparseMatrix first = rowScale.asDiagonal() * a;
  SparseMatrix second = itemScale.asDiagonal() * SparseMatrix(a.transpose());
  SparseMatrix product = first * second;
  return withoutDiagonal(product);
}

}  // namespace reef
