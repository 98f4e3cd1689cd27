#include "ssrent/ssr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "ssrent/kernels.hpp"

namespace ssrent {

namespace {

void check_sorted_basis(const std::vector<OccupationBasisVector>& basis) {
    if (basis.empty()) throw std::invalid_argument("empty basis");
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) {
        if (!(basis[i] < basis[i + 1])) throw std::invalid_argument("basis not sorted and unique");
    }
}

// n! with an early exit against the element budget; the error wording is the
// caller-facing contract for oversized twirls.
std::size_t checked_factorial(int n, std::size_t max_elements) {
    if (n > 20) throw std::invalid_argument("twirl too large; use closed form");
    std::size_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= static_cast<std::size_t>(i);
        if (f > max_elements) throw std::invalid_argument("twirl too large; use closed form");
    }
    return f;
}

// Lexicographic unranking: index 0 is the identity, the order matches
// repeated std::next_permutation from the sorted sequence.
std::vector<int> unrank_permutation(std::size_t index, int n) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> fact(n, 1);
    for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * static_cast<std::size_t>(i);
    std::vector<int> perm;
    perm.reserve(n);
    for (int i = n - 1; i >= 0; --i) {
        const std::size_t f = fact[i];
        const std::size_t pick = index / f;
        index %= f;
        perm.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return perm;
}

// Destination block b receives source block perm[b]; the other party's
// occupations pass through unchanged.
OccupationBasisVector permute_blocks(const OccupationBasisVector& label, Party party,
                                     const std::vector<int>& perm, int block_size) {
    OccupationBasisVector out = label;
    auto& occ = out.occ(party);
    const auto& src = label.occ(party);
    for (std::size_t b = 0; b < perm.size(); ++b) {
        for (int j = 0; j < block_size; ++j) {
            occ[b * static_cast<std::size_t>(block_size) + static_cast<std::size_t>(j)] =
                src[static_cast<std::size_t>(perm[b]) * static_cast<std::size_t>(block_size) +
                    static_cast<std::size_t>(j)];
        }
    }
    return out;
}

int block_size_for(const OccupationBasisVector& sample, Party party, int n_molecules) {
    if (n_molecules < 1) throw std::invalid_argument("molecule count must be positive");
    const int modes = static_cast<int>(sample.occ(party).size());
    if (modes == 0 || modes % n_molecules != 0) {
        throw std::invalid_argument("mode count is not divisible into molecules");
    }
    return modes / n_molecules;
}

// Smallest basis containing the input and closed under block permutations.
// Adjacent transpositions generate the full symmetric group, so a fixpoint
// under them is a fixpoint under every permutation.
std::vector<OccupationBasisVector> permutation_closure(const std::vector<OccupationBasisVector>& basis,
                                                       Party party, int n_molecules, int block_size) {
    std::set<OccupationBasisVector> closed(basis.begin(), basis.end());
    std::vector<OccupationBasisVector> work(basis.begin(), basis.end());
    std::vector<int> swap_perm(n_molecules);
    while (!work.empty()) {
        const OccupationBasisVector label = std::move(work.back());
        work.pop_back();
        for (int t = 0; t + 1 < n_molecules; ++t) {
            for (int i = 0; i < n_molecules; ++i) swap_perm[i] = i;
            std::swap(swap_perm[t], swap_perm[t + 1]);
            OccupationBasisVector next = permute_blocks(label, party, swap_perm, block_size);
            if (closed.insert(next).second) work.push_back(std::move(next));
        }
    }
    return {closed.begin(), closed.end()};
}

Matrix permutation_unitary(const std::vector<OccupationBasisVector>& basis,
                           const std::map<OccupationBasisVector, int>& index_of, Party party,
                           const std::vector<int>& perm, int block_size) {
    const auto d = static_cast<Eigen::Index>(basis.size());
    Matrix u = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const auto target = permute_blocks(basis[static_cast<std::size_t>(j)], party, perm, block_size);
        const auto it = index_of.find(target);
        if (it == index_of.end()) throw std::invalid_argument("basis not closed under molecule permutations");
        u(it->second, j) = 1.0;
    }
    return u;
}

Matrix kraus_sum_serial(const Matrix& x, const std::vector<Matrix>& ops) {
    Matrix acc = Matrix::Zero(x.rows(), x.cols());
    for (const auto& k : ops) acc += k * x * k.adjoint();
    return acc;
}

std::vector<Matrix> covariance_probes(int d, int n_probe) {
    std::vector<Matrix> probes;
    if (n_probe <= 0 || n_probe >= d * d) {
        // Full Hermitian spanning set: diagonal units, then symmetric and
        // antisymmetric combinations of each off-diagonal pair.
        probes.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            Matrix p = Matrix::Zero(d, d);
            p(i, i) = 1.0;
            probes.push_back(std::move(p));
        }
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) {
                Matrix sym = Matrix::Zero(d, d);
                sym(i, j) = 0.5;
                sym(j, i) = 0.5;
                probes.push_back(std::move(sym));
                Matrix anti = Matrix::Zero(d, d);
                anti(i, j) = Complex(0.0, -0.5);
                anti(j, i) = Complex(0.0, 0.5);
                probes.push_back(std::move(anti));
            }
        }
        return probes;
    }
    std::mt19937_64 rng(0xC0FFEEULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    probes.reserve(static_cast<std::size_t>(n_probe));
    for (int k = 0; k < n_probe; ++k) {
        Matrix a(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
        }
        Matrix h = 0.5 * (a + a.adjoint());
        h /= h.cwiseAbs().maxCoeff();
        probes.push_back(std::move(h));
    }
    return probes;
}

}  // namespace

DensityOperator group_twirl(const DensityOperator& rho, const GroupAction& action) {
    rho.check_shape();
    action.validate();
    if (action.dim() != rho.dim()) throw std::invalid_argument("group action dimension does not match operator");
    const auto gen = [&action](std::size_t k, Matrix& out) { out = action.elements[k].second; };
    DensityOperator out;
    out.basis = rho.basis;
    out.matrix = kernels::conjugation_average(rho.matrix, action.elements.size(), gen);
    const double residual = kernels::max_conjugation_residual(out.matrix, action.elements.size(), gen);
    if (residual > kTwirlInvarianceTol) {
        throw std::invalid_argument("twirl output not invariant; the element set is not a closed group");
    }
    return out;
}

DensityOperator number_twirl(const DensityOperator& rho, Party party) {
    rho.check_shape();
    DensityOperator out;
    out.basis = rho.basis;
    out.matrix = rho.matrix;
    const int d = rho.dim();
    for (int i = 0; i < d; ++i) {
        const int ni = rho.basis[static_cast<std::size_t>(i)].total(party);
        for (int j = 0; j < d; ++j) {
            if (rho.basis[static_cast<std::size_t>(j)].total(party) != ni) out.matrix(i, j) = 0.0;
        }
    }
    return out;
}

DensityOperator permutation_twirl(const DensityOperator& rho, Party party, int n_molecules,
                                  std::size_t max_elements) {
    rho.check_shape();
    const int block = block_size_for(rho.basis.front(), party, n_molecules);
    const std::size_t count = checked_factorial(n_molecules, max_elements);

    const auto closed = permutation_closure(rho.basis, party, n_molecules, block);
    std::map<OccupationBasisVector, int> index_of;
    for (std::size_t i = 0; i < closed.size(); ++i) index_of.emplace(closed[i], static_cast<int>(i));
    const DensityOperator lifted = embed(rho, closed);

    const auto gen = [&](std::size_t k, Matrix& out) {
        out = permutation_unitary(closed, index_of, party, unrank_permutation(k, n_molecules), block);
    };
    DensityOperator out;
    out.basis = closed;
    out.matrix = kernels::conjugation_average(lifted.matrix, count, gen);
    const double residual = kernels::max_conjugation_residual(out.matrix, count, gen);
    if (residual > kTwirlInvarianceTol) {
        throw std::runtime_error("twirl output not invariant within tolerance");
    }
    return out;
}

DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& channel) {
    rho.check_shape();
    channel.validate();
    if (channel.dim() != rho.dim()) throw std::invalid_argument("channel dimension does not match operator");
    DensityOperator out;
    out.basis = rho.basis;
    out.matrix = kernels::kraus_apply(rho.matrix, channel.kraus_ops);
    return out;
}

CovarianceReport is_covariant(const KrausChannel& channel, const GroupAction& action, int n_probe) {
    channel.validate();
    action.validate();
    if (channel.dim() != action.dim()) {
        throw std::invalid_argument("channel and group action dimensions differ");
    }
    const int d = channel.dim();
    const auto probes = covariance_probes(d, n_probe);

    double worst = 0.0;
#pragma omp parallel
    {
        double local = 0.0;
#pragma omp for schedule(static)
        for (long long p = 0; p < static_cast<long long>(probes.size()); ++p) {
            const Matrix& probe = probes[static_cast<std::size_t>(p)];
            const Matrix mapped = kraus_sum_serial(probe, channel.kraus_ops);
            for (const auto& [label, u] : action.elements) {
                const Matrix lhs = kraus_sum_serial(u * probe * u.adjoint(), channel.kraus_ops);
                const Matrix rhs = u * mapped * u.adjoint();
                const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
                if (dev > local) local = dev;
            }
        }
#pragma omp critical
        {
            if (local > worst) worst = local;
        }
    }
    return CovarianceReport{worst < kCovariantTol, worst};
}

GroupAction u1_phase_action(const std::vector<OccupationBasisVector>& basis, Party party, int n_samples) {
    check_sorted_basis(basis);
    int max_total = 0;
    for (const auto& label : basis) max_total = std::max(max_total, label.total(party));
    const int n = n_samples > 0 ? n_samples : max_total + 1;

    GroupAction action;
    action.elements.reserve(static_cast<std::size_t>(n));
    const auto d = static_cast<Eigen::Index>(basis.size());
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        Matrix u = Matrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const double phase = -theta * static_cast<double>(basis[static_cast<std::size_t>(i)].total(party));
            u(i, i) = std::polar(1.0, phase);
        }
        action.elements.emplace_back("phase_" + std::to_string(k), std::move(u));
    }
    return action;
}

KrausChannel number_sector_channel(const std::vector<OccupationBasisVector>& basis, Party party) {
    check_sorted_basis(basis);
    std::set<int> totals;
    for (const auto& label : basis) totals.insert(label.total(party));

    KrausChannel channel;
    const auto d = static_cast<Eigen::Index>(basis.size());
    for (int n : totals) {
        Matrix proj = Matrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            if (basis[static_cast<std::size_t>(i)].total(party) == n) proj(i, i) = 1.0;
        }
        channel.kraus_ops.push_back(std::move(proj));
    }
    return channel;
}

GroupAction permutation_action(const std::vector<OccupationBasisVector>& basis, Party party, int n_molecules,
                               std::size_t max_elements) {
    check_sorted_basis(basis);
    const int block = block_size_for(basis.front(), party, n_molecules);
    const std::size_t count = checked_factorial(n_molecules, max_elements);
    std::map<OccupationBasisVector, int> index_of;
    for (std::size_t i = 0; i < basis.size(); ++i) index_of.emplace(basis[i], static_cast<int>(i));

    GroupAction action;
    action.elements.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto perm = unrank_permutation(k, n_molecules);
        std::string label = "perm";
        for (int v : perm) label += "_" + std::to_string(v);
        action.elements.emplace_back(std::move(label),
                                     permutation_unitary(basis, index_of, party, perm, block));
    }
    return action;
}

DensityOperator ssr_twirl(const DensityOperator& rho, const SsrSpec& spec) {
    return std::visit(
        [&rho](const auto& s) -> DensityOperator {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NumberSsr>) {
                return number_twirl(rho, s.party);
            } else if constexpr (std::is_same_v<T, PermutationSsr>) {
                rho.check_shape();
                const auto modes = rho.basis.front().occ(s.party).size();
                if (s.qubits_per_molecule < 1 ||
                    modes != static_cast<std::size_t>(s.n_molecules) *
                                 static_cast<std::size_t>(s.qubits_per_molecule)) {
                    throw std::invalid_argument("mode count does not match molecule layout");
                }
                return permutation_twirl(rho, s.party, s.n_molecules);
            } else {
                return group_twirl(rho, s.action);
            }
        },
        spec);
}

}  // namespace ssrent
