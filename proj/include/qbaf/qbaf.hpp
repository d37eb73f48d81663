#pragma once

#include "qbaf/analysis.hpp"
#include "qbaf/continuous.hpp"
#include "qbaf/core.hpp"
#include "qbaf/discrete.hpp"
#include "qbaf/generators.hpp"
#include "qbaf/io.hpp"
#include "qbaf/mlp.hpp"
#include "qbaf/properties.hpp"
