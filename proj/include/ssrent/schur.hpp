#pragma once

#include <vector>

#include "ssrent/hilbert.hpp"

namespace ssrent {

// Dense spin machinery stops at 8 qubits (dimension 256).
inline constexpr int kMaxSpinQubits = 8;
// The full twirl-project-measure pipeline stops at 3 molecules.
inline constexpr int kMaxOracleMolecules = 3;

// J^2 for n qubits: the square of the summed spin-1/2 operators, with qubit 0
// as the most significant tensor factor. Eigenvalues are j(j+1).
Matrix total_spin_squared(int n_qubits);

// One total-spin sector of n qubits: the eigenspace of J^2 with eigenvalue
// j(j+1), of dimension multiplicity * (2j+1).
struct SpinSector {
    double j = 0.0;
    int multiplicity = 0;
    Matrix projector;
};

struct SpinSectorTable {
    int n_qubits = 0;
    std::vector<SpinSector> sectors;  // ascending in j
};

// Sectors from the eigendecomposition of total_spin_squared. Multiplicities
// are cross-checked against the counting formula and the projectors resolve
// the identity; an inconsistency throws, it is never papered over.
SpinSectorTable spin_sector_table(int n_qubits);

// (2j+1)/(J+j+1) * C(2J, J-j) with J = n/2: how many times the spin-j irrep
// appears in n coupled qubits. Throws when j is not reachable from n qubits.
long long spin_multiplicity(int n_qubits, double j);

struct EnsembleSectorReport {
    double j = 0.0;
    double weight = 0.0;             // measured on the twirled state
    double closed_form_weight = 0.0;
    bool pure = false;
    bool recognized = false;  // pure, or the flagged-mixture structure was detected
    double entanglement = 0.0;       // meaningful only when recognized
};

struct EnsembleReport {
    int n_molecules = 0;
    double off_sector_mass = 0.0;  // largest entry outside matching (j_A = j_B) blocks
    bool block_diagonal = false;
    bool all_recognized = false;
    double total_entanglement = 0.0;     // sum over recognized sectors
    double max_weight_deviation = 0.0;   // measured vs closed-form weights
    std::vector<EnsembleSectorReport> sectors;
};

// Measures the twirled n-molecule Bell ensemble from first principles: build
// the product state, average over explicit molecule permutations on Alice's
// side, cut the result along the spin sectors of both sides, and report per
// sector weight, purity, and (where the structure is recognized)
// entanglement. Everything here goes through dense matrices and explicit
// projectors, independent of the closed-form expressions it is used to
// validate. Throws "brute-force budget exceeded" above kMaxOracleMolecules.
EnsembleReport brute_force_ensemble_entanglement(int n_molecules);

}  // namespace ssrent
