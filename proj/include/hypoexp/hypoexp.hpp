#pragma once

#include "hypoexp/characterization.hpp"
#include "hypoexp/distribution.hpp"
#include "hypoexp/error.hpp"
#include "hypoexp/io.hpp"
#include "hypoexp/kernels.hpp"
#include "hypoexp/oracle.hpp"
#include "hypoexp/rates.hpp"
#include "hypoexp/sampling.hpp"
#include "hypoexp/series.hpp"
#include "hypoexp/summation.hpp"
