#pragma once

#include "qhj/errors.hpp"
#include "qhj/laurent.hpp"
#include "qhj/moving_poles.hpp"
#include "qhj/oracle/schrodinger.hpp"
#include "qhj/oracle/tridiagonal.hpp"
#include "qhj/paper_tables.hpp"
#include "qhj/pencil.hpp"
#include "qhj/potential.hpp"
#include "qhj/qes_sets.hpp"
#include "qhj/rational.hpp"
#include "qhj/riccati.hpp"
#include "qhj/symmetry.hpp"
#include "qhj/wavefunction.hpp"
