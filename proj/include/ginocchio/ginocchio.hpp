#pragma once

#include "ginocchio/errors.hpp"
#include "ginocchio/params.hpp"
#include "ginocchio/jacobi.hpp"
#include "ginocchio/coordinate_map.hpp"
#include "ginocchio/potential.hpp"
#include "ginocchio/spectrum.hpp"
#include "ginocchio/wavefunction.hpp"
#include "ginocchio/susy.hpp"
#include "ginocchio/shooting.hpp"
#include "ginocchio/io.hpp"
#include "ginocchio/golden.hpp"
