#pragma once

namespace frackappa {

/// OpenBLAS picks its kernels when the library loads, and its Cooperlake
/// kernels return NaN eigenvectors for the dense Hamiltonians built here.
/// When that kernel set is active and OPENBLAS_CORETYPE is unset, restart the
/// current process with OPENBLAS_CORETYPE=SkylakeX. Call first thing in main().
void select_blas_kernel(char** argv);

/// Name of the active OpenBLAS kernel set.
const char* blas_kernel_name();

}  // namespace frackappa
