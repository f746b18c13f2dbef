#pragma once

#include "qgz3/dense.hpp"
#include "qgz3/gzbasis.hpp"
#include "qgz3/json_out.hpp"
#include "qgz3/limit_series.hpp"
#include "qgz3/operators.hpp"
#include "qgz3/parallel.hpp"
#include "qgz3/qnum.hpp"
#include "qgz3/rootlimit.hpp"
#include "qgz3/structure.hpp"
