#include "ssrent/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ssrent {

Party other_party(Party p) { return p == Party::alice ? Party::bob : Party::alice; }

std::string party_name(Party p) { return p == Party::alice ? "alice" : "bob"; }

int OccupationBasisVector::total(Party p) const {
    const auto& o = occ(p);
    return std::accumulate(o.begin(), o.end(), 0);
}

std::string to_string(const OccupationBasisVector& v) {
    std::ostringstream out;
    out << '|';
    for (std::size_t i = 0; i < v.alice_occ.size(); ++i) {
        if (i) out << ' ';
        out << v.alice_occ[i];
    }
    out << " , ";
    for (std::size_t i = 0; i < v.bob_occ.size(); ++i) {
        if (i) out << ' ';
        out << v.bob_occ[i];
    }
    out << '>';
    return out.str();
}

void PureState::add_term(OccupationBasisVector label, Complex amp) {
    for (Party p : {Party::alice, Party::bob}) {
        for (int n : label.occ(p)) {
            if (n < 0) throw std::invalid_argument("negative occupation number");
        }
    }
    const int la = static_cast<int>(label.alice_occ.size());
    const int lb = static_cast<int>(label.bob_occ.size());
    if (alice_modes_ < 0) {
        alice_modes_ = la;
        bob_modes_ = lb;
    } else if (la != alice_modes_ || lb != bob_modes_) {
        throw std::invalid_argument("mode count mismatch between terms");
    }
    auto it = terms_.find(label);
    if (it == terms_.end()) {
        if (std::abs(amp) >= kAmplitudePrune) terms_.emplace(std::move(label), amp);
        return;
    }
    it->second += amp;
    if (std::abs(it->second) < kAmplitudePrune) terms_.erase(it);
}

double PureState::norm2() const {
    double s = 0.0;
    for (const auto& [label, amp] : terms_) s += std::norm(amp);
    return s;
}

PureState PureState::normalized() const {
    const double n2 = norm2();
    if (n2 <= 0.0) throw std::invalid_argument("zero state");
    const double inv = 1.0 / std::sqrt(n2);
    PureState out;
    for (const auto& [label, amp] : terms_) out.add_term(label, amp * inv);
    return out;
}

PureState tensor_pure(const PureState& a, const PureState& b) {
    PureState out;
    for (const auto& [la, va] : a.terms()) {
        for (const auto& [lb, vb] : b.terms()) {
            OccupationBasisVector label;
            label.alice_occ = la.alice_occ;
            label.alice_occ.insert(label.alice_occ.end(), lb.alice_occ.begin(), lb.alice_occ.end());
            label.bob_occ = la.bob_occ;
            label.bob_occ.insert(label.bob_occ.end(), lb.bob_occ.begin(), lb.bob_occ.end());
            out.add_term(std::move(label), va * vb);
        }
    }
    return out;
}

double DensityOperator::trace_real() const { return matrix.trace().real(); }

void DensityOperator::check_shape() const {
    const auto d = static_cast<Eigen::Index>(basis.size());
    if (matrix.rows() != d || matrix.cols() != d) {
        throw std::invalid_argument("matrix shape does not match basis size");
    }
    if (basis.empty()) throw std::invalid_argument("empty basis");
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) {
        if (!(basis[i] < basis[i + 1])) throw std::invalid_argument("basis not sorted and unique");
    }
    for (std::size_t i = 1; i < basis.size(); ++i) {
        if (basis[i].alice_occ.size() != basis[0].alice_occ.size() ||
            basis[i].bob_occ.size() != basis[0].bob_occ.size()) {
            throw std::invalid_argument("mode count mismatch within basis");
        }
    }
}

void DensityOperator::validate() const {
    check_shape();
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol) throw std::invalid_argument("density operator not Hermitian within tolerance");
    if (!(trace_real() > 0.0)) throw std::invalid_argument("density operator trace not positive");
    const auto es = hermitian_eigensystem(matrix);
    if (es.values.minCoeff() < -kPsdTol) {
        throw std::invalid_argument("density operator has a negative eigenvalue beyond tolerance");
    }
}

DensityOperator to_density(const PureState& psi) {
    const PureState unit = psi.normalized();
    DensityOperator rho;
    rho.basis.reserve(unit.terms().size());
    for (const auto& [label, amp] : unit.terms()) rho.basis.push_back(label);
    const int d = static_cast<int>(rho.basis.size());
    Eigen::VectorXcd v(d);
    int i = 0;
    for (const auto& [label, amp] : unit.terms()) v(i++) = amp;
    rho.matrix = v * v.adjoint();
    return rho;
}

DensityOperator partial_trace(const DensityOperator& rho, Party keep) {
    rho.check_shape();
    const Party traced = other_party(keep);

    std::vector<OccupationBasisVector> kept;
    kept.reserve(rho.basis.size());
    for (const auto& label : rho.basis) {
        OccupationBasisVector k;
        k.occ(keep) = label.occ(keep);
        kept.push_back(std::move(k));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    std::map<OccupationBasisVector, int> kept_index;
    for (std::size_t i = 0; i < kept.size(); ++i) kept_index.emplace(kept[i], static_cast<int>(i));

    // Group source indices by the traced party's occupation; only pairs within
    // one group contribute to the sum over the traced subsystem.
    std::map<std::vector<int>, std::vector<int>> by_traced;
    std::vector<int> row_of(rho.basis.size());
    for (std::size_t i = 0; i < rho.basis.size(); ++i) {
        OccupationBasisVector k;
        k.occ(keep) = rho.basis[i].occ(keep);
        row_of[i] = kept_index.at(k);
        by_traced[rho.basis[i].occ(traced)].push_back(static_cast<int>(i));
    }

    DensityOperator out;
    out.basis = std::move(kept);
    out.matrix = Matrix::Zero(static_cast<Eigen::Index>(out.basis.size()),
                              static_cast<Eigen::Index>(out.basis.size()));
    for (const auto& [tocc, idx] : by_traced) {
        for (int i : idx) {
            for (int j : idx) out.matrix(row_of[i], row_of[j]) += rho.matrix(i, j);
        }
    }
    return out;
}

EigenSystem hermitian_eigensystem(const Matrix& m, double herm_tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) throw std::invalid_argument("matrix not Hermitian within tolerance");
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> hermitian_eigenvalues(const DensityOperator& rho) {
    rho.check_shape();
    return hermitian_eigenvalues(rho.matrix);
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    const auto es = hermitian_eigensystem(m);
    std::vector<double> vals(es.values.data(), es.values.data() + es.values.size());
    std::reverse(vals.begin(), vals.end());
    return vals;
}

DensityOperator embed(const DensityOperator& rho, const std::vector<OccupationBasisVector>& superset) {
    rho.check_shape();
    for (std::size_t i = 0; i + 1 < superset.size(); ++i) {
        if (!(superset[i] < superset[i + 1])) throw std::invalid_argument("superset basis not sorted and unique");
    }
    std::map<OccupationBasisVector, int> pos;
    for (std::size_t i = 0; i < superset.size(); ++i) pos.emplace(superset[i], static_cast<int>(i));
    std::vector<int> where(rho.basis.size());
    for (std::size_t i = 0; i < rho.basis.size(); ++i) {
        auto it = pos.find(rho.basis[i]);
        if (it == pos.end()) throw std::invalid_argument("superset basis misses a label of the operator");
        where[i] = it->second;
    }
    DensityOperator out;
    out.basis = superset;
    out.matrix = Matrix::Zero(static_cast<Eigen::Index>(superset.size()),
                              static_cast<Eigen::Index>(superset.size()));
    for (std::size_t i = 0; i < rho.basis.size(); ++i) {
        for (std::size_t j = 0; j < rho.basis.size(); ++j) {
            out.matrix(where[i], where[j]) = rho.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

double max_abs_diff(const DensityOperator& a, const DensityOperator& b) {
    if (a.basis != b.basis) throw std::invalid_argument("operands have different bases");
    return max_abs_diff(a.matrix, b.matrix);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("operands have different shapes");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

int GroupAction::dim() const {
    return elements.empty() ? 0 : static_cast<int>(elements.front().second.rows());
}

void GroupAction::validate() const {
    if (elements.empty()) throw std::invalid_argument("group action has no elements");
    const auto d = elements.front().second.rows();
    if (d <= 0) throw std::invalid_argument("group action has empty matrices");
    for (const auto& [label, u] : elements) {
        if (u.rows() != d || u.cols() != d) {
            throw std::invalid_argument("group element '" + label + "' has mismatched dimension");
        }
        const double dev = (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (dev > kHermTol) {
            throw std::invalid_argument("group element '" + label + "' is not unitary within tolerance");
        }
    }
}

int KrausChannel::dim() const {
    return kraus_ops.empty() ? 0 : static_cast<int>(kraus_ops.front().rows());
}

void KrausChannel::validate() const {
    if (kraus_ops.empty()) throw std::invalid_argument("channel has no Kraus operators");
    const auto d = kraus_ops.front().rows();
    if (d <= 0) throw std::invalid_argument("channel has empty matrices");
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& k : kraus_ops) {
        if (k.rows() != d || k.cols() != d) throw std::invalid_argument("Kraus operator dimension mismatch");
        sum += k.adjoint() * k;
    }
    const double dev = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kHermTol) throw std::invalid_argument("channel is not trace preserving within tolerance");
}

}  // namespace ssrent
