#pragma once

#include "sdea/types.hpp"

namespace sdea {

// The ten school sites (5 inputs, 3 outputs) bundled as data/table1.csv,
// with zero covariances.
Dataset table1_fixture();

}  // namespace sdea
