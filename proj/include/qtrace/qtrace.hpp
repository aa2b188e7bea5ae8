#pragma once

#include "qtrace/bench.hpp"
#include "qtrace/bipartite.hpp"
#include "qtrace/bloch.hpp"
#include "qtrace/cost_model.hpp"
#include "qtrace/errors.hpp"
#include "qtrace/ising.hpp"
#include "qtrace/matrix.hpp"
#include "qtrace/multipartite.hpp"
#include "qtrace/op_counter.hpp"
#include "qtrace/qmat_io.hpp"
#include "qtrace/random.hpp"
