#ifndef LIPSAT_LINALG_HPP
#define LIPSAT_LINALG_HPP

#include <optional>
#include <vector>

#include "lipsat/cyclotomic.hpp"

namespace lipsat {

using CycMatrix = std::vector<std::vector<CycRat>>;

// Row rank by Gaussian elimination over the field.
int cyc_rank(CycMatrix A);

// One solution of A x = b, or nullopt if inconsistent.
std::optional<std::vector<CycRat>> cyc_solve(CycMatrix A, std::vector<CycRat> b);

} // namespace lipsat

#endif
