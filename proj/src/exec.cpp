#include "spnav/exec.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace spnav {

void configure_threads_from_env() {
    if (const char* env = std::getenv("SPNAV_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
}

}  // namespace spnav
