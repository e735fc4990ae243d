#pragma once

#include "qkernel/data.hpp"
#include "qkernel/error.hpp"
#include "qkernel/feature_map.hpp"
#include "qkernel/plot.hpp"
#include "qkernel/quantum_kernel.hpp"
#include "qkernel/statevector.hpp"
#include "qkernel/svm.hpp"
