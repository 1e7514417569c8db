#include "frackappa/blas_guard.hpp"

#include <unistd.h>

#include <cstdlib>
#include <cstring>

extern "C" char* openblas_get_corename();

namespace frackappa {

const char* blas_kernel_name() { return openblas_get_corename(); }

void select_blas_kernel(char** argv) {
  if (std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
  const char* core = openblas_get_corename();
  if (core == nullptr || std::strcmp(core, "Cooperlake") != 0) return;
  setenv("OPENBLAS_CORETYPE", "SkylakeX", 1);
  execv("/proc/self/exe", argv);
  // exec failed: carry on; the eigensolver rejects NaN output with a diagnostic.
}

}  // namespace frackappa
