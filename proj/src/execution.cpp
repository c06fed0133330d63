#include "gtsp/execution.hpp"

#include <omp.h>

namespace gtsp {

int max_threads() { return omp_get_max_threads(); }

}  // namespace gtsp
