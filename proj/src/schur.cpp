#include "ssrent/schur.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "ssrent/entanglement.hpp"
#include "ssrent/ssr.hpp"

namespace ssrent {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// sum over qubits of (single-site operator / basis: qubit 0 most significant)
Matrix site_sum(int n_qubits, const Matrix& site) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix total = Matrix::Zero(dim, dim);
    for (int q = 0; q < n_qubits; ++q) {
        Matrix term = Matrix::Identity(1, 1);
        for (int i = 0; i < n_qubits; ++i) {
            term = kron(term, i == q ? site : Matrix::Identity(2, 2));
        }
        total += term;
    }
    return total;
}

void check_qubit_budget(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("qubit count must be positive");
    if (n_qubits > kMaxSpinQubits) throw std::invalid_argument("qubit count out of budget");
}

// Index of an occupation pattern in the qubit tensor basis; entry 0 of the
// pattern is the most significant bit, matching site_sum's ordering.
int qubit_index(const std::vector<int>& occ) {
    int idx = 0;
    for (int bit : occ) idx = (idx << 1) | bit;
    return idx;
}

// Lifts a projector on one party's qubit space to the bipartite basis: it
// acts on that party's pattern and is the identity on the other party's.
Matrix lift_to_bipartite(const Matrix& projector, const std::vector<OccupationBasisVector>& basis,
                         Party party) {
    const auto d = static_cast<Eigen::Index>(basis.size());
    const Party other = other_party(party);
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const auto& bi = basis[static_cast<std::size_t>(i)];
            const auto& bj = basis[static_cast<std::size_t>(j)];
            if (bi.occ(other) != bj.occ(other)) continue;
            out(i, j) = projector(qubit_index(bi.occ(party)), qubit_index(bj.occ(party)));
        }
    }
    return out;
}

}  // namespace

Matrix total_spin_squared(int n_qubits) {
    check_qubit_budget(n_qubits);
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 0.5, 0.5, 0;
    sy << 0, Complex(0, -0.5), Complex(0, 0.5), 0;
    sz << 0.5, 0, 0, -0.5;
    const Matrix jx = site_sum(n_qubits, sx);
    const Matrix jy = site_sum(n_qubits, sy);
    const Matrix jz = site_sum(n_qubits, sz);
    return jx * jx + jy * jy + jz * jz;
}

long long spin_multiplicity(int n_qubits, double j) {
    check_qubit_budget(n_qubits);
    const long long t = std::llround(2.0 * j);
    if (std::abs(2.0 * j - static_cast<double>(t)) > 1e-9 || t < 0 || t > n_qubits ||
        (n_qubits - t) % 2 != 0) {
        throw std::invalid_argument("spin j not reachable from this qubit count");
    }
    // (2j+1)/(J+j+1) * C(2J, J-j) with everything doubled to stay integral
    const long long k = (n_qubits - t) / 2;
    long long binom = 1;
    for (long long i = 1; i <= k; ++i) binom = binom * (n_qubits - k + i) / i;
    return (t + 1) * binom * 2 / (n_qubits + t + 2);
}

SpinSectorTable spin_sector_table(int n_qubits) {
    check_qubit_budget(n_qubits);
    const auto es = hermitian_eigensystem(total_spin_squared(n_qubits));

    SpinSectorTable table;
    table.n_qubits = n_qubits;
    const Eigen::Index dim = es.values.size();
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= dim; ++i) {
        if (i < dim && es.values(i) - es.values(begin) < 0.5) continue;

        const double mean = es.values.segment(begin, i - begin).mean();
        const double j_raw = 0.5 * (std::sqrt(1.0 + 4.0 * mean) - 1.0);
        const double j = 0.5 * std::round(2.0 * j_raw);
        if (std::abs(j - j_raw) > 1e-6) throw std::runtime_error("spin spectrum off the j(j+1) grid");

        const auto block_dim = i - begin;
        const auto irrep_dim = static_cast<Eigen::Index>(std::llround(2.0 * j + 1.0));
        if (block_dim % irrep_dim != 0) throw std::runtime_error("spin sector dimension inconsistent");
        SpinSector sector;
        sector.j = j;
        sector.multiplicity = static_cast<int>(block_dim / irrep_dim);
        if (sector.multiplicity != spin_multiplicity(n_qubits, j)) {
            throw std::runtime_error("spin multiplicity does not match the counting formula");
        }
        const Matrix block = es.vectors.middleCols(begin, block_dim);
        sector.projector = block * block.adjoint();
        table.sectors.push_back(std::move(sector));
        begin = i;
    }
    return table;
}

EnsembleReport brute_force_ensemble_entanglement(int n_molecules) {
    if (n_molecules < 1) throw std::invalid_argument("molecule count must be positive");
    if (n_molecules > kMaxOracleMolecules) throw std::invalid_argument("brute-force budget exceeded");

    // One maximally correlated pair per molecule, Alice holding one qubit and
    // Bob the other; the power state pairs up equal patterns on both sides.
    PureState pair;
    pair.add_term(OccupationBasisVector{{0}, {0}}, 1.0);
    pair.add_term(OccupationBasisVector{{1}, {1}}, 1.0);
    PureState power = pair;
    for (int i = 1; i < n_molecules; ++i) power = tensor_pure(power, pair);

    const DensityOperator twirled = permutation_twirl(to_density(power), Party::alice, n_molecules);
    const auto& basis = twirled.basis;
    const auto d = static_cast<Eigen::Index>(basis.size());

    const SpinSectorTable table = spin_sector_table(n_molecules);
    const auto closed_weights = ensemble_bell_sector_weights(n_molecules);

    EnsembleReport report;
    report.n_molecules = n_molecules;

    // Joint projectors onto matching spin sectors of the two sides.
    std::vector<Matrix> joint;
    joint.reserve(table.sectors.size());
    for (const auto& sector : table.sectors) {
        const Matrix pa = lift_to_bipartite(sector.projector, basis, Party::alice);
        const Matrix pb = lift_to_bipartite(sector.projector, basis, Party::bob);
        joint.push_back(pa * pb);
    }

    Matrix matched = Matrix::Zero(d, d);
    for (const auto& q : joint) matched += q * twirled.matrix * q;
    report.off_sector_mass = (twirled.matrix - matched).cwiseAbs().maxCoeff();
    report.block_diagonal = report.off_sector_mass < 1e-9;

    report.all_recognized = true;
    for (std::size_t s = 0; s < table.sectors.size(); ++s) {
        EnsembleSectorReport row;
        row.j = table.sectors[s].j;
        row.closed_form_weight = closed_weights[s].second;
        row.weight = (joint[s] * twirled.matrix).trace().real();
        report.max_weight_deviation =
            std::max(report.max_weight_deviation, std::abs(row.weight - row.closed_form_weight));

        DensityOperator conditional;
        conditional.basis = basis;
        conditional.matrix = joint[s] * twirled.matrix * joint[s] / row.weight;

        const auto spectrum = hermitian_eigensystem(conditional.matrix).values;
        if (spectrum.maxCoeff() >= 1.0 - kPurityTol) {
            row.pure = true;
            row.recognized = true;
            row.entanglement = von_neumann_entropy(partial_trace(conditional, Party::alice));
        } else if (const auto flagged = locally_flagged_distillable(conditional)) {
            row.recognized = true;
            row.entanglement = *flagged;
        } else {
            report.all_recognized = false;
        }
        if (row.recognized) report.total_entanglement += row.weight * row.entanglement;
        report.sectors.push_back(row);
    }
    return report;
}

}  // namespace ssrent
