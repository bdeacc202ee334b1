#include "pbx/parallel.hpp"

#include <omp.h>

namespace pbx {

namespace {
int default_jobs() {
  static const int jobs = omp_get_max_threads();
  return jobs;
}
}  // namespace

void set_jobs(int jobs) { omp_set_num_threads(jobs > 0 ? jobs : default_jobs()); }

int max_jobs() { return omp_get_max_threads(); }

}  // namespace pbx
