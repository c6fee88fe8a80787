#pragma once

#include "efinv/catalog.hpp"
#include "efinv/classical.hpp"
#include "efinv/dense_core.hpp"
#include "efinv/ef_inverse.hpp"
#include "efinv/errors.hpp"
#include "efinv/matrix_equations.hpp"
#include "efinv/matrix_io.hpp"
#include "efinv/subspace.hpp"
#include "efinv/version.hpp"
