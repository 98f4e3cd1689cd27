#include "ssrent/kernels.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssrent::kernels {

namespace {

void check_dims(const Matrix& m, std::size_t count) {
    if (m.rows() != m.cols()) throw std::invalid_argument("kernel input not square");
    if (count == 0) throw std::invalid_argument("kernel needs at least one operator");
}

}  // namespace

Matrix conjugation_sum_serial(const Matrix& m, std::size_t count, const MatrixGenerator& gen, double scale) {
    check_dims(m, count);
    const auto d = m.rows();
    Matrix acc = Matrix::Zero(d, d);
    Matrix op(d, d);
    for (std::size_t k = 0; k < count; ++k) {
        gen(k, op);
        acc += op * m * op.adjoint();
    }
    return scale * acc;
}

Matrix conjugation_sum_parallel(const Matrix& m, std::size_t count, const MatrixGenerator& gen, double scale) {
    check_dims(m, count);
    const auto d = m.rows();
    const std::size_t n_chunks = (count + kChunk - 1) / kChunk;
    std::vector<Matrix> partial(n_chunks);

#pragma omp parallel
    {
        Matrix op(d, d);
#pragma omp for schedule(static)
        for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
            const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
            const std::size_t end = std::min(begin + kChunk, count);
            Matrix acc = Matrix::Zero(d, d);
            for (std::size_t k = begin; k < end; ++k) {
                gen(k, op);
                acc += op * m * op.adjoint();
            }
            partial[static_cast<std::size_t>(c)] = std::move(acc);
        }
    }

    // Chunk partials are combined in ascending chunk order; together with the
    // fixed kChunk this pins the floating point summation tree.
    Matrix total = Matrix::Zero(d, d);
    for (const auto& p : partial) total += p;
    return scale * total;
}

Matrix conjugation_sum(const Matrix& m, std::size_t count, const MatrixGenerator& gen, double scale) {
    // Material work per element grows cubically with dimension; tiny problems
    // are not worth the thread fan-out.
    const bool small = count < 2 * kChunk || m.rows() < 8;
    return small ? conjugation_sum_serial(m, count, gen, scale)
                 : conjugation_sum_parallel(m, count, gen, scale);
}

Matrix conjugation_average(const Matrix& m, const std::vector<Matrix>& ops) {
    return conjugation_average(
        m, ops.size(), [&ops](std::size_t k, Matrix& out) { out = ops[k]; });
}

Matrix conjugation_average(const Matrix& m, std::size_t count, const MatrixGenerator& gen) {
    check_dims(m, count);
    return conjugation_sum(m, count, gen, 1.0 / static_cast<double>(count));
}

Matrix kraus_apply(const Matrix& m, const std::vector<Matrix>& ops) {
    return conjugation_sum(
        m, ops.size(), [&ops](std::size_t k, Matrix& out) { out = ops[k]; }, 1.0);
}

double max_conjugation_residual(const Matrix& m, std::size_t count, const MatrixGenerator& gen) {
    check_dims(m, count);
    const auto d = m.rows();
    double worst = 0.0;

#pragma omp parallel
    {
        Matrix op(d, d);
        double local = 0.0;
#pragma omp for schedule(static)
        for (long long k = 0; k < static_cast<long long>(count); ++k) {
            gen(static_cast<std::size_t>(k), op);
            const double dev = (op * m * op.adjoint() - m).cwiseAbs().maxCoeff();
            if (dev > local) local = dev;
        }
#pragma omp critical
        {
            if (local > worst) worst = local;
        }
    }
    return worst;
}

}  // namespace ssrent::kernels
