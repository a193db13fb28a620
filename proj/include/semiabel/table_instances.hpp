#pragma once

#include <string>
#include <vector>

#include "semiabel/classifier.hpp"

namespace semiabel {

/// Motive with one point and one extension parameter, the point built as
/// exp_G(z, t) (or (O, fiber) when base_identity is set).
OneMotiveElliptic single_motive(const Lattice& L, cplx q, cplx z, cplx t,
                                bool base_identity = false, cplx fiber = 1.0);

struct TableInstance {
  std::string label;
  int expected_row;  // 1..8
  OneMotiveElliptic motive;
};

/// One constructed instance per reachable row of the dimension table. Row 6
/// needs complex multiplication and is skipped when L has none.
std::vector<TableInstance> dimension_table_instances(const Lattice& L);

/// (dim UR, dim Gal with CM, dim Gal without CM); the last is -1 for the
/// deficient row, which cannot occur without CM.
struct TableTriple {
  int ur, gal_cm, gal_non_cm;
};
TableTriple dimension_table_triple(int row);

}  // namespace semiabel
