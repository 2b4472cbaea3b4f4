#pragma once

#include <gmpxx.h>

#include <vector>

namespace qe::detail {

/// Textbook LLL reduction (delta = 3/4) with exact rational Gram-Schmidt.
/// Rows of basis are integer lattice vectors; reduced in place. Zero rows are
/// tolerated and sink to the front. Intended for the small dimensions used by
/// the relation finders (<= ~10 rows).
void lll_reduce(std::vector<std::vector<mpz_class>> &basis);

} // namespace qe::detail
