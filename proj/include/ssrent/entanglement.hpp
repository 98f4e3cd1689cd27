#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssrent/hilbert.hpp"

namespace ssrent {

// A state counts as sector diagonal when every entry between differing local
// totals stays below this.
inline constexpr double kSectorDiagonalTol = 1e-10;
// Conditionals count as pure when the top eigenvalue reaches 1 minus this.
inline constexpr double kPurityTol = 1e-9;
// Ambient term budget for copies computations without a dedicated path.
inline constexpr std::size_t kCopiesTermBudget = 4096;

// All entropies are base 2. Eigenvalues below kEntropyFloor contribute
// nothing (the 0 * log 0 = 0 convention); the spectrum is normalized by the
// trace first, so unnormalized operators are accepted.
double von_neumann_entropy(const DensityOperator& rho);

// Entropy of Alice's reduced state of the normalized pure state; equal to
// Bob's for any pure state. Throws "zero state" on zero norm.
double entanglement_entropy(const PureState& psi);

// Weighted sector sum: the state is split by one party's total particle
// number, and each sector contributes (weight) x (entanglement entropy of
// the normalized sector state). Never exceeds entanglement_entropy(psi)
// beyond round-off, and the two parties agree whenever the total particle
// number is sharp.
double constrained_entanglement_number(const PureState& psi, Party party = Party::alice);

// One block of a sector-diagonal mixture. The conditional keeps the parent
// operator's basis and has unit trace.
struct Sector {
    std::string label;
    double weight = 0.0;
    DensityOperator conditional;
};

struct SectorDecomposition {
    Party party = Party::alice;
    std::vector<Sector> sectors;

    // Weights in [0,1] summing to 1 within 1e-10; unit-trace Hermitian
    // conditionals on one shared basis; pairwise orthogonal supports of the
    // conditionals reduced to `party` (projector overlap below 1e-10).
    void validate() const;
};

// Splits a sector-diagonal operator by one party's total particle number.
// Zero-weight totals are dropped. Throws "state not sector-diagonal" when
// any cross-sector entry reaches kSectorDiagonalTol.
SectorDecomposition decompose_by_local_number(const DensityOperator& rho, Party party);

// Distillable entanglement of a sector-diagonal mixture whose blocks are
// locally distinguishable: sum of weight x (sector entanglement). Each
// conditional must be pure, or must be recognized as a mixture of pure
// states carrying local orthogonal flags (see locally_flagged_distillable);
// anything else throws "E_D not computable for this structure".
double sector_diagonal_distillable_entanglement(const SectorDecomposition& dec);

// Structure check behind the mixed-conditional path. Recognizes states of
// the form sum_k q_k |v_k><v_k| where the v_k carry pairwise distinguishing
// local flags: every pair of eigenvectors is separated on Alice's side or on
// Bob's side, and the separation pattern is consistent enough that local
// projective measurements isolate each v_k without disturbing the state.
// For such states the distillable entanglement is exactly sum_k q_k E(v_k):
// the flags give a distillation protocol meeting that rate, and convexity of
// the relative entropy of entanglement gives the matching upper bound.
// Returns nullopt when the structure is not recognized.
std::optional<double> locally_flagged_distillable(const DensityOperator& rho);

// Variance of Alice's total particle number under the normalized state's
// Born weights.
double alice_number_variance(const PureState& psi);

// c * e_single - log2(variance * c) / 2. Throws when variance <= 0 or c < 1.
double asymptotic_copies_estimate(double e_single, double variance, long long c);

// True for the two-term single-mode state with labels (0|1) and (1|0) and
// equal amplitude magnitudes, which admits a closed-form copies path.
bool has_split_particle_form(const PureState& psi);

// sum_n 2^-c C(c,n) log2 C(c,n): the number-constrained entanglement of c
// copies of the split particle. Each sector of the tensor power is maximally
// entangled of dimension C(c,n), which makes the sum exact. Binomials move
// to log space above c = 60.
double split_particle_copies_entanglement(int c);

// Number-constrained entanglement of psi^(tensor c). Uses the split-particle
// closed form when it applies; otherwise expands the tensor power, which is
// only allowed while the term count stays within kCopiesTermBudget. Throws
// "dimension budget exceeded without a dedicated path" beyond that.
double constrained_entanglement_copies(const PureState& psi, int c);

struct CopiesScanRow {
    int c = 0;
    double e_exact = 0.0;
    double e_asymptotic = 0.0;
    double ratio = 0.0;
};

// Rows c = 1..max_c for the split particle: closed-form exact value, the
// rate estimate with e_single = 1 and variance 1/4, and ratio = e_exact / c.
std::vector<CopiesScanRow> split_particle_copies_scan(int max_c);

// Sector weights (j, w_j) of the permutation-twirled n-molecule Bell
// ensemble, ascending in j, summing to 1:
//   w_j = (2j+1)^2 C(2J, J-j) / (2^2J (J+j+1)),  J = n/2.
// j runs over half-integers when n is odd. Log-space binomials above n = 60.
std::vector<std::pair<double, double>> ensemble_bell_sector_weights(long long n_molecules);

// sum_j w_j log2(2j+1): the constrained entanglement of the twirled
// n-molecule Bell ensemble; grows like log2(n)/2. Large n is summed by a
// peak-anchored weight recurrence, never materializing all n/2+1 sectors.
double ensemble_bell_closed_form(long long n_molecules);

}  // namespace ssrent
