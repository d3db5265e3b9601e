#pragma once

#include <cstddef>
#include <vector>

#include "commcalc/integer.hpp"

namespace commcalc {

/// Row-style Hermite normal form: nonzero rows only, echelon with strictly
/// increasing pivot columns, positive pivots, and entries above each pivot
/// reduced into [0, pivot).
IntMatrix hermiteNormalForm(IntMatrix rows, std::size_t columns);

/// Pivot column of each HNF row.
std::vector<std::size_t> pivotColumns(const IntMatrix& hnf);

/// Index of the row lattice in Z^columns, or 0 when the rank is deficient.
Integer latticeIndex(const IntMatrix& hnf, std::size_t columns);

/// Membership of v in the row lattice spanned by an HNF.
bool latticeContains(const IntMatrix& hnf, std::vector<Integer> v);

/// Equality of two lattices given by HNFs.
bool latticeEqual(const IntMatrix& a, const IntMatrix& b);

}  // namespace commcalc
