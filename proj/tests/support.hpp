#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fda/catalog.hpp"
#include "fda/graded.hpp"

namespace fdatest {

/// One catalog per test process so the d = 11 objects are built once.
fda::Catalog& catalog();

/// Sign of sorting `ids` by bubble sort, counting each adjacent swap with the
/// Koszul rule; 0 when a square-zero generator repeats.
int transposition_sign(const fda::AlgebraSignature& sig, std::vector<fda::GenId> ids);

/// Rank by dense Gaussian elimination over mpq, pivoting on rows in the
/// given order.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> rows);

/// Random element: `terms` random monomials of up to `length` factors with
/// small integer coefficients.
fda::Element random_element(const fda::SignaturePtr& sig, std::mt19937_64& rng, int terms, int length);

/// Random homogeneous element of the given degree (zero if none was hit).
fda::Element random_homogeneous(const fda::SignaturePtr& sig, std::mt19937_64& rng, fda::Bidegree b, int terms);

} // namespace fdatest
