#ifndef ARRTOWER_ARRTOWER_HPP
#define ARRTOWER_ARRTOWER_HPP

#include "arrtower/arrangement.hpp"
#include "arrtower/connectivity.hpp"
#include "arrtower/cube.hpp"
#include "arrtower/error.hpp"
#include "arrtower/graded_group.hpp"
#include "arrtower/guard.hpp"
#include "arrtower/homology.hpp"
#include "arrtower/interval_homology.hpp"
#include "arrtower/lattice.hpp"
#include "arrtower/partition.hpp"
#include "arrtower/simplicial_complex.hpp"
#include "arrtower/smith.hpp"
#include "arrtower/sparse_matrix.hpp"

#endif  // ARRTOWER_ARRTOWER_HPP
