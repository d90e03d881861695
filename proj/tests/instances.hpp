// Shared fixtures for the test binaries.
#pragma once

#include <string>

#include "gmtk/problem.hpp"

namespace fixtures {

/// Two nodes, two labels, two pairwise terms; optimum {0->0, 1->1} = -7.
inline gmtk::Problem t1() {
  return gmtk::Problem(2, 2,
                       {{0, 0, -1.0}, {0, 1, -2.0}, {1, 0, -3.0}, {1, 1, -1.0}},
                       {{0, 3, -5.0}, {1, 2, -1.0}});
}

inline std::string data_path(const std::string& name) {
  return std::string(GMTK_TEST_DATA) + "/" + name;
}

}  // namespace fixtures
