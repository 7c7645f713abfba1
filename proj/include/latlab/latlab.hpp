#pragma once

#include "latlab/discriminant.hpp"
#include "latlab/errors.hpp"
#include "latlab/glue.hpp"
#include "latlab/integer.hpp"
#include "latlab/k3.hpp"
#include "latlab/lattice.hpp"
#include "latlab/linalg.hpp"
#include "latlab/matrix.hpp"
#include "latlab/oracle.hpp"
#include "latlab/standard.hpp"
#include "latlab/sublattice.hpp"
