#pragma once

namespace spnav {

/// Selects the serial reference kernels or the OpenMP ones. Both produce
/// bit-identical results.
enum class Exec { Serial, Parallel };

/// Applies the SPNAV_THREADS environment variable to the OpenMP runtime, if set.
void configure_threads_from_env();

}  // namespace spnav
