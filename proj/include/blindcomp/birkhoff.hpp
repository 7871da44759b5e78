#pragma once

// Birkhoff-von Neumann decomposition of doubly stochastic matrices into
// convex combinations of permutation matrices.

#include <vector>

#include "blindcomp/stochastic.hpp"

namespace blindcomp {

struct BirkhoffDecomposition {
    std::vector<double> weights;          // non-negative, sums to 1
    std::vector<std::vector<int>> perms;  // perm[r] = column of the 1 in row r

    int dim() const { return perms.empty() ? 0 : static_cast<int>(perms.front().size()); }
    StochasticMatrix reconstruct() const;
};

// Greedy matching extraction with deterministic lexicographic tie-breaking;
// at most (d-1)^2 + 1 permutations, reconstruction within 1e-9.
// Input must be doubly stochastic within 1e-10.
BirkhoffDecomposition birkhoff_decompose(const StochasticMatrix& m);

}  // namespace blindcomp
