#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ssrent/hilbert.hpp"

namespace ssrent::kernels {

// Operators are supplied by index so large element sets never have to be
// resident at once; the generator must write element `index` into `out` and
// must be safe to call from several threads on distinct `out` objects.
using MatrixGenerator = std::function<void(std::size_t index, Matrix& out)>;

// Elements per partial sum in the parallel reductions. The chunking is fixed
// ahead of time, so the combination order of partial results depends only on
// the element count, never on the thread count: outputs are bitwise
// reproducible under any OMP_NUM_THREADS.
inline constexpr std::size_t kChunk = 8;

// scale * sum_k op_k * m * op_k^dag, accumulated in index order.
Matrix conjugation_sum_serial(const Matrix& m, std::size_t count, const MatrixGenerator& gen, double scale);
Matrix conjugation_sum_parallel(const Matrix& m, std::size_t count, const MatrixGenerator& gen, double scale);
// Dispatches on problem size; small workloads stay on the serial path.
Matrix conjugation_sum(const Matrix& m, std::size_t count, const MatrixGenerator& gen, double scale);

// (1/count) * sum_k u_k * m * u_k^dag over explicit element lists.
Matrix conjugation_average(const Matrix& m, const std::vector<Matrix>& ops);
Matrix conjugation_average(const Matrix& m, std::size_t count, const MatrixGenerator& gen);

// sum_k k_k * m * k_k^dag (no averaging).
Matrix kraus_apply(const Matrix& m, const std::vector<Matrix>& ops);

// max_k || u_k * m * u_k^dag - m ||_max. The reduction is a pure max, so the
// parallel result is exactly the serial one.
double max_conjugation_residual(const Matrix& m, std::size_t count, const MatrixGenerator& gen);

}  // namespace ssrent::kernels
