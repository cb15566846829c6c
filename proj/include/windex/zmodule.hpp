#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "windex/centre.hpp"

namespace windex::zlab {

// Finite-dimensional Z-Hilbert-algebra laboratory: the algebra C(X, M_d)
// with X a k-point set, centre C(X) embedded as pointwise scalars, and the
// Z-trace tau(a)(x) = tr(a(x))/d.  Everything ultraweak collapses to linear
// algebra at this scale.

using Matrix = Eigen::MatrixXcd;

struct FiniteZAlgebra {
    int k = 1;  // points of X
    int d = 1;  // matrix size

    int dim() const { return k * d * d; }  // complex dimension of the algebra/module
};

// An element of C(X, M_d): one d x d block per point.
using AlgElement = std::vector<Matrix>;

AlgElement zero_element(const FiniteZAlgebra& alg);
AlgElement identity_element(const FiniteZAlgebra& alg);
AlgElement random_element(const FiniteZAlgebra& alg, std::mt19937_64& rng);
AlgElement random_positive(const FiniteZAlgebra& alg, std::mt19937_64& rng,
                           double floor_eps = 0.0);
AlgElement random_unitary(const FiniteZAlgebra& alg, std::mt19937_64& rng);
// Central element from FinitePoints values: x -> values[x] * I_d.
AlgElement central_element(const FiniteZAlgebra& alg, const std::vector<cplx>& values);

AlgElement add(const AlgElement& a, const AlgElement& b);
AlgElement sub(const AlgElement& a, const AlgElement& b);
AlgElement mul(const AlgElement& a, const AlgElement& b);
AlgElement scale(const AlgElement& a, cplx s);
AlgElement star(const AlgElement& a);  // J: pointwise conjugate transpose
double norm_inf(const AlgElement& a);  // max operator norm over points

// tau(a)(x) = tr(a(x))/d, a FinitePoints centre element.
CentreElement ztrace(const FiniteZAlgebra& alg, const AlgElement& a);
// <a,b> = tau(a* b).
CentreElement inner(const FiniteZAlgebra& alg, const AlgElement& a, const AlgElement& b);

// A Z-linear operator on the k*d^2-dimensional module, stored blockwise per
// point as a d^2 x d^2 matrix acting on vec(element at that point).
struct ModuleOperator {
    std::vector<Matrix> blocks;  // k blocks, each d^2 x d^2

    ModuleOperator adjoint() const;
    ModuleOperator compose(const ModuleOperator& other) const;
    ModuleOperator sub(const ModuleOperator& other) const;
    AlgElement apply(const FiniteZAlgebra& alg, const AlgElement& xi) const;
    double frobenius_norm() const;
};

ModuleOperator identity_operator(const FiniteZAlgebra& alg);
// pi(a): left multiplication.
ModuleOperator left_op(const FiniteZAlgebra& alg, const AlgElement& a);
// pi'(a): right multiplication.
ModuleOperator right_op(const FiniteZAlgebra& alg, const AlgElement& a);

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
};

struct CheckReport {
    std::vector<CheckResult> results;

    void record(const std::string& name, double residual, double tol);
    void record_bool(const std::string& name, bool ok);
    bool all_pass() const;
    double worst() const;
};

// Randomized verification of the eight Z-Hilbert-algebra axioms; density
// axioms become span-equality checks in finite dimension.
CheckReport check_axioms(const FiniteZAlgebra& alg, int trials, std::uint64_t seed);

// Commutant of a set of blockwise operators within the blockwise algebra,
// via per-point SVD null spaces.  Returns an orthonormal basis.
std::vector<ModuleOperator> commutant(const FiniteZAlgebra& alg,
                                      const std::vector<ModuleOperator>& ops);

// Basis of pi(A) (resp. pi'(A)) over the matrix-unit basis of the algebra.
std::vector<ModuleOperator> left_regular_basis(const FiniteZAlgebra& alg);
std::vector<ModuleOperator> right_regular_basis(const FiniteZAlgebra& alg);
// Full blockwise endomorphism basis (k*d^4 operators).
std::vector<ModuleOperator> full_blockwise_basis(const FiniteZAlgebra& alg);

// Max residual of projecting each candidate onto span(space).
double span_membership_residual(const std::vector<ModuleOperator>& candidates,
                                const std::vector<ModuleOperator>& space);

// Centre of the blockwise endomorphism algebra; asserts dimension k and the
// action xi -> xi z in the report.
CheckReport centre_of_L(const FiniteZAlgebra& alg);

// Commutation Theorem and double-commutant checks.
CheckReport commutation_checks(const FiniteZAlgebra& alg, int trials, std::uint64_t seed);

// sigma(sum pi(xi_i) pi(eta_i)) = sum <xi_i*, eta_i>, with well-definedness
// verified against a second random decomposition.
CentreElement canonical_trace(const FiniteZAlgebra& alg,
                              const std::vector<std::pair<AlgElement, AlgElement>>& decomp,
                              std::mt19937_64& rng, double tol = 1e-10);

CheckReport canonical_trace_checks(const FiniteZAlgebra& alg, int trials, std::uint64_t seed);

// Dixmier Z-trace properties of phi = ztrace on positives: additivity,
// Z_+-homogeneity, unitary invariance, faithfulness, sequential normality.
CheckReport dixmier_checks(const FiniteZAlgebra& alg, int trials, std::uint64_t seed);

// Paschke-dual tensor module demo on (C^N) tensor C^k.
CheckReport paschke_tensor_demo(int N, int k, std::uint64_t seed);

// The full laboratory battery for the CLI and acceptance suite.
CheckReport run_lab(const FiniteZAlgebra& alg, int trials, std::uint64_t seed);

}  // namespace windex::zlab
