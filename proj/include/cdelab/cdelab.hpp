#pragma once

#include "cdelab/dynamics.hpp"
#include "cdelab/errors.hpp"
#include "cdelab/functional.hpp"
#include "cdelab/geometry.hpp"
#include "cdelab/ground_state.hpp"
#include "cdelab/homoclinic.hpp"
#include "cdelab/integrate.hpp"
#include "cdelab/io.hpp"
#include "cdelab/linear_analysis.hpp"
#include "cdelab/orbits.hpp"
#include "cdelab/spectral.hpp"
