#pragma once

#include <string>

#include <Eigen/SparseCore>

#include "reef/quad_store.hpp"

namespace reef {

// Square matrices indexed by TermId, of size store.termCount().
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// A[s,o] = 1 iff <s,p,o,*> is in the store.
SparseMatrix adjacencyMatrix(const QuadStore& store, const std::string& p);

// (A·Aᵀ) ∘ (1 − I) for A = A^core:created: shared items between distinct
// agents.
SparseMatrix coauthorshipOracle(const QuadStore& store);

// The same composite with the walker's equal splitting: row-normalized A
// times Aᵀ whose item rows are scaled by 1/(in-degree − 1), diagonal removed.
// Row a holds the coauthorship diffusion scores seeded at a, divided by ε0·δ².
SparseMatrix normalizedCoauthorship(const QuadStore& store);

}  // namespace reef
