#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "ssrent/hilbert.hpp"

namespace ssrent {

// Twirl outputs must commute with every group element to this entrywise
// residual; group_twirl and permutation_twirl verify it before returning.
inline constexpr double kTwirlInvarianceTol = 1e-10;
// A channel counts as covariant when no probe detects a larger deviation.
inline constexpr double kCovariantTol = 1e-9;
// Hard cap on twirl element counts (8 factorial). Larger averages must use a
// closed form instead of dense enumeration.
inline constexpr std::size_t kTwirlElementBudget = 40320;

// Uniform average of u rho u^dag over the action's elements. The element set
// must be conjugation closed; this is not checked up front, but a non-closed
// set leaves the output non-invariant and the internal post-check throws.
DensityOperator group_twirl(const DensityOperator& rho, const GroupAction& action);

// Projects onto the charge sectors of one party's total particle number:
// entries between labels of different totals are zeroed, the basis is kept.
// Exactly the uniform phase average over that party's number operator.
DensityOperator number_twirl(const DensityOperator& rho, Party party);

// Uniform average over all molecule permutations on one side. The party's
// modes split into n_molecules equal contiguous blocks which the permutation
// unitaries shuffle wholesale. The basis is first closed under the orbit of
// the action, so the result may live on a superset of rho's basis. Throws
// "twirl too large; use closed form" when n_molecules! exceeds max_elements.
DensityOperator permutation_twirl(const DensityOperator& rho, Party party, int n_molecules,
                                  std::size_t max_elements = kTwirlElementBudget);

// sum_k K rho K^dag on rho's basis.
DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& channel);

struct CovarianceReport {
    bool covariant = false;
    double max_deviation = 0.0;
};

// Tests whether the channel commutes with conjugation by every group element,
// probing with a spanning set of Hermitian operators. n_probe <= 0 (or any
// value at least dim^2) selects the full dim^2 spanning set, which makes the
// verdict exact up to arithmetic; a smaller n_probe uses that many fixed-seed
// pseudorandom Hermitian probes.
CovarianceReport is_covariant(const KrausChannel& channel, const GroupAction& action, int n_probe = 0);

// Phase representation of one party's number operator, sampled uniformly.
// n_samples = 0 picks (max local total + 1) samples, which reproduces the
// continuous phase average exactly for any operator on this basis.
GroupAction u1_phase_action(const std::vector<OccupationBasisVector>& basis, Party party, int n_samples = 0);

// The projectors onto one party's number sectors, packaged as a channel.
// Applying it equals number_twirl on the same basis.
KrausChannel number_sector_channel(const std::vector<OccupationBasisVector>& basis, Party party);

// All molecule-permutation unitaries on a basis that is already closed under
// them. Throws when the basis is not closed or the element budget is hit.
GroupAction permutation_action(const std::vector<OccupationBasisVector>& basis, Party party, int n_molecules,
                               std::size_t max_elements = kTwirlElementBudget);

// Dispatch tag for the supported superselection rules. The permutation kind
// pins the named party's mode count to n_molecules * qubits_per_molecule.
struct NumberSsr {
    Party party;
};
struct PermutationSsr {
    Party party;
    int n_molecules;
    int qubits_per_molecule = 1;
};
struct FiniteGroupSsr {
    GroupAction action;
};
using SsrSpec = std::variant<NumberSsr, PermutationSsr, FiniteGroupSsr>;

DensityOperator ssr_twirl(const DensityOperator& rho, const SsrSpec& spec);

}  // namespace ssrent
