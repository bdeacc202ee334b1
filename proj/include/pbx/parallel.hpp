#pragma once

namespace pbx {

/// Selects between the OpenMP kernel and its serial reference. Both paths
/// produce identical (sorted, deduplicated) results; the serial one is kept
/// for testing and benchmarking.
enum class Exec { Serial, Parallel };

/// Caps the OpenMP team size (<= 0 restores the runtime default).
void set_jobs(int jobs);
int max_jobs();

}  // namespace pbx
