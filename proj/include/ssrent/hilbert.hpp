#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ssrent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Shared numeric tolerances. Amplitudes below kAmplitudePrune are treated as
// exact zeros when states are assembled; kHermTol bounds acceptable
// non-Hermiticity and non-unitarity of inputs; kPsdTol is the negative
// eigenvalue budget for density operators; eigenvalues below kEntropyFloor
// contribute nothing to entropies.
inline constexpr double kAmplitudePrune = 1e-14;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEntropyFloor = 1e-12;

enum class Party { alice, bob };

Party other_party(Party p);
std::string party_name(Party p);

// Occupation label of one bipartite basis vector: particle counts per mode,
// Alice's modes first. Ordering is lexicographic on (alice_occ, bob_occ),
// which fixes every matrix layout in the library.
struct OccupationBasisVector {
    std::vector<int> alice_occ;
    std::vector<int> bob_occ;

    const std::vector<int>& occ(Party p) const { return p == Party::alice ? alice_occ : bob_occ; }
    std::vector<int>& occ(Party p) { return p == Party::alice ? alice_occ : bob_occ; }

    // Total particle number on one side.
    int total(Party p) const;

    friend auto operator<=>(const OccupationBasisVector&, const OccupationBasisVector&) = default;
};

std::string to_string(const OccupationBasisVector& v);

// Sparse complex amplitudes over occupation labels. Terms are keyed by label
// in lexicographic order; amplitudes whose accumulated value falls below
// kAmplitudePrune are dropped. The first stored term fixes the per-party mode
// counts and every later term must match them. States need not be normalized;
// operations that require a unit vector normalize internally and reject the
// zero state.
class PureState {
  public:
    using TermMap = std::map<OccupationBasisVector, Complex>;

    PureState() = default;

    // Accumulates amp onto label. Throws std::invalid_argument on a negative
    // occupation or a mode count mismatch with previously added terms.
    void add_term(OccupationBasisVector label, Complex amp);

    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Mode counts are -1 until the first term is stored.
    int modes(Party p) const { return p == Party::alice ? alice_modes_ : bob_modes_; }

    double norm2() const;
    // Throws std::invalid_argument("zero state") when norm2() == 0.
    PureState normalized() const;

  private:
    TermMap terms_;
    int alice_modes_ = -1;
    int bob_modes_ = -1;
};

// Kronecker product of two pure states: occupations concatenate per party,
// amplitudes multiply. Mode counts of the result are the per-party sums.
PureState tensor_pure(const PureState& a, const PureState& b);

// Dense Hermitian operator bound to an explicit basis. The basis is sorted,
// duplicate free, and indexes the matrix rows and columns directly.
struct DensityOperator {
    std::vector<OccupationBasisVector> basis;
    Matrix matrix;

    int dim() const { return static_cast<int>(basis.size()); }
    double trace_real() const;

    // Cheap structural check: square matrix matching the basis size, sorted
    // unique basis, consistent per-party mode counts. Throws on violation.
    void check_shape() const;
    // Full density operator contract: check_shape, Hermitian within kHermTol,
    // positive trace, eigenvalues >= -kPsdTol. Costs an eigensolve; intended
    // for API boundaries and tests, not inner loops.
    void validate() const;
};

// |psi><psi| / <psi|psi> on the basis of psi's support.
// Throws std::invalid_argument("zero state") for the zero state.
DensityOperator to_density(const PureState& psi);

// Traces out the complement of `keep`. The result's basis carries the kept
// party's occupations; the traced party's occupation list is empty.
DensityOperator partial_trace(const DensityOperator& rho, Party keep);

// Eigenvalues of a Hermitian operator, descending. Throws
// std::invalid_argument when the matrix deviates from Hermiticity by more
// than kHermTol entrywise.
std::vector<double> hermitian_eigenvalues(const DensityOperator& rho);
std::vector<double> hermitian_eigenvalues(const Matrix& m);

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending as columns
// of `vectors` match `values`. Same Hermiticity gate as above.
struct EigenSystem {
    Eigen::VectorXd values;
    Matrix vectors;
};
EigenSystem hermitian_eigensystem(const Matrix& m, double herm_tol = kHermTol);

// Re-expresses rho on a superset basis (entries off the original basis are
// zero). Throws if `superset` is not sorted/unique or misses a basis label.
DensityOperator embed(const DensityOperator& rho, const std::vector<OccupationBasisVector>& superset);

// Largest entrywise absolute difference; the operands must share a basis
// (the raw matrix overload only requires matching shapes).
double max_abs_diff(const DensityOperator& a, const DensityOperator& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Finite set of labeled unitaries sharing one dimension, acting on a matrix
// by conjugation. Closure under products is the caller's concern; twirls
// verify invariance of their output instead of checking group axioms.
struct GroupAction {
    std::vector<std::pair<std::string, Matrix>> elements;

    int dim() const;
    // Nonempty, square matrices of one shared dimension, each unitary within
    // kHermTol entrywise. Throws on violation.
    void validate() const;
};

// Kraus operators of a completely positive trace preserving map.
struct KrausChannel {
    std::vector<Matrix> kraus_ops;

    int dim() const;
    // Nonempty, shared square dimension, sum K^dag K = I within kHermTol.
    void validate() const;
};

}  // namespace ssrent
