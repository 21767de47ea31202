#pragma once

#include "qinfo/complex_matrix.hpp"
#include "qinfo/density_matrix.hpp"
#include "qinfo/eigen.hpp"
#include "qinfo/info_metrics.hpp"
#include "qinfo/measurement.hpp"
#include "qinfo/scenarios.hpp"
#include "qinfo/state_vector.hpp"
#include "qinfo/table.hpp"
