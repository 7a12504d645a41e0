#pragma once

#include "pfsolve/errors.hpp"
#include "pfsolve/bitset.hpp"
#include "pfsolve/weyl.hpp"
#include "pfsolve/graph.hpp"
#include "pfsolve/graph_algorithms.hpp"
#include "pfsolve/switching.hpp"
#include "pfsolve/hamiltonian.hpp"
#include "pfsolve/indpoly.hpp"
#include "pfsolve/linalg.hpp"
#include "pfsolve/spectrum.hpp"
#include "pfsolve/oracle.hpp"
#include "pfsolve/models.hpp"
#include "pfsolve/io.hpp"
