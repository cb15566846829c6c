#include "windex/zmodule.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace windex::zlab {

namespace {

Eigen::VectorXcd vec(const Matrix& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Matrix unvec(const Eigen::VectorXcd& v, int d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix random_matrix(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

// Stacked vec of all blocks of an operator.
Eigen::VectorXcd op_vec(const ModuleOperator& op) {
    Eigen::Index total = 0;
    for (const auto& b : op.blocks) total += b.size();
    Eigen::VectorXcd v(total);
    Eigen::Index at = 0;
    for (const auto& b : op.blocks) {
        v.segment(at, b.size()) = vec(b);
        at += b.size();
    }
    return v;
}

}  // namespace

AlgElement zero_element(const FiniteZAlgebra& alg) {
    return AlgElement(alg.k, Matrix::Zero(alg.d, alg.d));
}

AlgElement identity_element(const FiniteZAlgebra& alg) {
    return AlgElement(alg.k, Matrix::Identity(alg.d, alg.d));
}

AlgElement random_element(const FiniteZAlgebra& alg, std::mt19937_64& rng) {
    AlgElement a;
    a.reserve(alg.k);
    for (int x = 0; x < alg.k; ++x) a.push_back(random_matrix(alg.d, rng));
    return a;
}

AlgElement random_positive(const FiniteZAlgebra& alg, std::mt19937_64& rng, double floor_eps) {
    AlgElement a = random_element(alg, rng);
    AlgElement p;
    p.reserve(alg.k);
    for (int x = 0; x < alg.k; ++x)
        p.push_back(a[x].adjoint() * a[x] +
                    floor_eps * Matrix::Identity(alg.d, alg.d));
    return p;
}

AlgElement random_unitary(const FiniteZAlgebra& alg, std::mt19937_64& rng) {
    AlgElement u;
    u.reserve(alg.k);
    for (int x = 0; x < alg.k; ++x) {
        Matrix h = random_matrix(alg.d, rng);
        h = (h + h.adjoint().eval()) / 2.0;  // hermitian
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Eigen::VectorXcd phases(alg.d);
        for (int i = 0; i < alg.d; ++i) phases(i) = std::polar(1.0, es.eigenvalues()(i));
        u.push_back(es.eigenvectors() * phases.asDiagonal() *
                    es.eigenvectors().adjoint());
    }
    return u;
}

AlgElement central_element(const FiniteZAlgebra& alg, const std::vector<cplx>& values) {
    AlgElement z;
    z.reserve(alg.k);
    for (int x = 0; x < alg.k; ++x)
        z.push_back(values[static_cast<size_t>(x)] * Matrix::Identity(alg.d, alg.d));
    return z;
}

AlgElement add(const AlgElement& a, const AlgElement& b) {
    AlgElement r = a;
    for (size_t x = 0; x < a.size(); ++x) r[x] += b[x];
    return r;
}

AlgElement sub(const AlgElement& a, const AlgElement& b) {
    AlgElement r = a;
    for (size_t x = 0; x < a.size(); ++x) r[x] -= b[x];
    return r;
}

AlgElement mul(const AlgElement& a, const AlgElement& b) {
    AlgElement r = a;
    for (size_t x = 0; x < a.size(); ++x) r[x] = a[x] * b[x];
    return r;
}

AlgElement scale(const AlgElement& a, cplx s) {
    AlgElement r = a;
    for (auto& m : r) m *= s;
    return r;
}

AlgElement star(const AlgElement& a) {
    AlgElement r = a;
    for (auto& m : r) m = m.adjoint().eval();
    return r;
}

double norm_inf(const AlgElement& a) {
    double n = 0.0;
    for (const auto& m : a) {
        Eigen::JacobiSVD<Matrix> svd(m);
        if (svd.singularValues().size() > 0)
            n = std::max(n, svd.singularValues()(0));
    }
    return n;
}

CentreElement ztrace(const FiniteZAlgebra& alg, const AlgElement& a) {
    std::vector<cplx> v(static_cast<size_t>(alg.k));
    for (int x = 0; x < alg.k; ++x)
        v[static_cast<size_t>(x)] = a[static_cast<size_t>(x)].trace() / static_cast<double>(alg.d);
    return CentreElement::finite(std::move(v));
}

CentreElement inner(const FiniteZAlgebra& alg, const AlgElement& a, const AlgElement& b) {
    AlgElement prod;
    prod.reserve(static_cast<size_t>(alg.k));
    for (int x = 0; x < alg.k; ++x)
        prod.push_back(a[static_cast<size_t>(x)].adjoint() * b[static_cast<size_t>(x)]);
    return ztrace(alg, prod);
}

ModuleOperator ModuleOperator::adjoint() const {
    ModuleOperator r = *this;
    for (auto& b : r.blocks) b = b.adjoint().eval();
    return r;
}

ModuleOperator ModuleOperator::compose(const ModuleOperator& other) const {
    ModuleOperator r = *this;
    for (size_t x = 0; x < blocks.size(); ++x) r.blocks[x] = blocks[x] * other.blocks[x];
    return r;
}

ModuleOperator ModuleOperator::sub(const ModuleOperator& other) const {
    ModuleOperator r = *this;
    for (size_t x = 0; x < blocks.size(); ++x) r.blocks[x] -= other.blocks[x];
    return r;
}

AlgElement ModuleOperator::apply(const FiniteZAlgebra& alg, const AlgElement& xi) const {
    AlgElement out;
    out.reserve(static_cast<size_t>(alg.k));
    for (int x = 0; x < alg.k; ++x)
        out.push_back(unvec(blocks[static_cast<size_t>(x)] * vec(xi[static_cast<size_t>(x)]),
                            alg.d));
    return out;
}

double ModuleOperator::frobenius_norm() const {
    double s = 0.0;
    for (const auto& b : blocks) s += b.squaredNorm();
    return std::sqrt(s);
}

ModuleOperator identity_operator(const FiniteZAlgebra& alg) {
    return {std::vector<Matrix>(static_cast<size_t>(alg.k),
                                Matrix::Identity(alg.d * alg.d, alg.d * alg.d))};
}

ModuleOperator left_op(const FiniteZAlgebra& alg, const AlgElement& a) {
    ModuleOperator op;
    op.blocks.reserve(static_cast<size_t>(alg.k));
    const Matrix id = Matrix::Identity(alg.d, alg.d);
    for (int x = 0; x < alg.k; ++x)
        op.blocks.push_back(kron(id, a[static_cast<size_t>(x)]));  // vec(aX) = (I (x) a) vec X
    return op;
}

ModuleOperator right_op(const FiniteZAlgebra& alg, const AlgElement& a) {
    ModuleOperator op;
    op.blocks.reserve(static_cast<size_t>(alg.k));
    const Matrix id = Matrix::Identity(alg.d, alg.d);
    for (int x = 0; x < alg.k; ++x)
        op.blocks.push_back(
            kron(a[static_cast<size_t>(x)].transpose(), id));  // vec(Xa) = (a^T (x) I) vec X
    return op;
}

void CheckReport::record(const std::string& name, double residual, double tol) {
    auto it = std::find_if(results.begin(), results.end(),
                           [&](const CheckResult& r) { return r.name == name; });
    if (it == results.end()) {
        results.push_back({name, residual <= tol, residual});
    } else {
        it->max_residual = std::max(it->max_residual, residual);
        it->pass = it->pass && residual <= tol;
    }
}

void CheckReport::record_bool(const std::string& name, bool ok) {
    record(name, ok ? 0.0 : 1.0, 0.5);
}

bool CheckReport::all_pass() const {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

double CheckReport::worst() const {
    double w = 0.0;
    for (const auto& r : results) w = std::max(w, r.max_residual);
    return w;
}

CheckReport check_axioms(const FiniteZAlgebra& alg, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckReport rep;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        const AlgElement a = random_element(alg, rng);
        const AlgElement b = random_element(alg, rng);
        const AlgElement c = random_element(alg, rng);
        std::vector<cplx> zv(static_cast<size_t>(alg.k));
        for (auto& v : zv) v = cplx(unif(rng), unif(rng));
        const AlgElement z = central_element(alg, zv);

        // (i) positivity and definiteness of <a,a>
        const CentreElement aa = inner(alg, a, a);
        double neg = 0.0;
        for (const auto& v : aa.values())
            neg = std::max({neg, -v.real(), std::abs(v.imag())});
        rep.record("axiom_i_positive", neg, 1e-12);
        rep.record_bool("axiom_i_definite", aa.upper_norm() > 1e-12);

        // (ii) <a,b>* = <b,a>
        rep.record("axiom_ii_symmetry",
                   inner(alg, a, b).adjoint().sub(inner(alg, b, a)).upper_norm(), 1e-12);

        // (iii) <a, b z> = <a,b> z
        rep.record("axiom_iii_linearity",
                   inner(alg, a, mul(b, z))
                       .sub(inner(alg, a, b).mul(ztrace(alg, z)))
                       .upper_norm(),
                   1e-12);

        // (v) <a*, b*> = <b, a>
        rep.record("axiom_v_star",
                   inner(alg, star(a), star(b)).sub(inner(alg, b, a)).upper_norm(), 1e-12);

        // (vi) <ab, c> = <b, a* c>
        rep.record("axiom_vi_module",
                   inner(alg, mul(a, b), c).sub(inner(alg, b, mul(star(a), c))).upper_norm(),
                   1e-12);

        // (vii) ||ab||_mod <= ||a||_op ||b||_mod
        const double lhs = std::sqrt(inner(alg, mul(a, b), mul(a, b)).upper_norm());
        const double rhs =
            norm_inf(a) * std::sqrt(inner(alg, b, b).upper_norm());
        rep.record("axiom_vii_bounded", std::max(0.0, lhs - rhs), 1e-10);

        // (viii) A^2 = A (unital): a = a * 1
        rep.record("axiom_viii_unital",
                   std::sqrt(inner(alg, sub(a, mul(a, identity_element(alg))),
                                   sub(a, mul(a, identity_element(alg))))
                                 .upper_norm()),
                   1e-12);
    }
    // (iv) the inner products of point indicators span the centre C^k
    Eigen::MatrixXcd span(alg.k, alg.k);
    for (int x = 0; x < alg.k; ++x) {
        std::vector<cplx> ind(static_cast<size_t>(alg.k), 0.0);
        ind[static_cast<size_t>(x)] = 1.0;
        const AlgElement ex = central_element(alg, ind);
        const CentreElement ip = inner(alg, ex, ex);
        for (int y = 0; y < alg.k; ++y) span(x, y) = ip.values()[static_cast<size_t>(y)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(span);
    const int rank =
        (svd.singularValues().array() > 1e-9 * svd.singularValues()(0)).count();
    rep.record_bool("axiom_iv_span", rank == alg.k);
    return rep;
}

std::vector<ModuleOperator> commutant(const FiniteZAlgebra& alg,
                                      const std::vector<ModuleOperator>& ops) {
    const int dsq = alg.d * alg.d;
    const int dim = dsq * dsq;
    std::vector<ModuleOperator> basis;
    for (int x = 0; x < alg.k; ++x) {
        std::vector<const Matrix*> active;
        for (const auto& op : ops)
            if (op.blocks[static_cast<size_t>(x)].norm() > 1e-14)
                active.push_back(&op.blocks[static_cast<size_t>(x)]);
        Matrix null_basis;
        if (active.empty()) {
            null_basis = Matrix::Identity(dim, dim);
        } else {
            const Matrix id = Matrix::Identity(dsq, dsq);
            Matrix constraints(static_cast<Eigen::Index>(active.size()) * dim, dim);
            for (size_t g = 0; g < active.size(); ++g)
                constraints.block(static_cast<Eigen::Index>(g) * dim, 0, dim, dim) =
                    kron(active[g]->transpose(), id) - kron(id, *active[g]);
            Eigen::BDCSVD<Matrix> svd(constraints, Eigen::ComputeThinV);
            const auto& sv = svd.singularValues();
            const double thresh = sv.size() > 0 ? 1e-9 * sv(0) : 0.0;
            int rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv(i) > thresh) ++rank;
            null_basis = svd.matrixV().rightCols(dim - rank);
        }
        for (Eigen::Index col = 0; col < null_basis.cols(); ++col) {
            ModuleOperator op;
            op.blocks.assign(static_cast<size_t>(alg.k), Matrix::Zero(dsq, dsq));
            op.blocks[static_cast<size_t>(x)] = unvec(null_basis.col(col), dsq);
            basis.push_back(std::move(op));
        }
    }
    return basis;
}

std::vector<ModuleOperator> left_regular_basis(const FiniteZAlgebra& alg) {
    std::vector<ModuleOperator> basis;
    for (int x = 0; x < alg.k; ++x)
        for (int i = 0; i < alg.d; ++i)
            for (int j = 0; j < alg.d; ++j) {
                AlgElement e = zero_element(alg);
                e[static_cast<size_t>(x)](i, j) = 1.0;
                basis.push_back(left_op(alg, e));
            }
    return basis;
}

std::vector<ModuleOperator> right_regular_basis(const FiniteZAlgebra& alg) {
    std::vector<ModuleOperator> basis;
    for (int x = 0; x < alg.k; ++x)
        for (int i = 0; i < alg.d; ++i)
            for (int j = 0; j < alg.d; ++j) {
                AlgElement e = zero_element(alg);
                e[static_cast<size_t>(x)](i, j) = 1.0;
                basis.push_back(right_op(alg, e));
            }
    return basis;
}

std::vector<ModuleOperator> full_blockwise_basis(const FiniteZAlgebra& alg) {
    const int dsq = alg.d * alg.d;
    std::vector<ModuleOperator> basis;
    for (int x = 0; x < alg.k; ++x)
        for (int i = 0; i < dsq; ++i)
            for (int j = 0; j < dsq; ++j) {
                ModuleOperator op;
                op.blocks.assign(static_cast<size_t>(alg.k), Matrix::Zero(dsq, dsq));
                op.blocks[static_cast<size_t>(x)](i, j) = 1.0;
                basis.push_back(std::move(op));
            }
    return basis;
}

double span_membership_residual(const std::vector<ModuleOperator>& candidates,
                                const std::vector<ModuleOperator>& space) {
    if (candidates.empty()) return 0.0;
    const Eigen::Index rows = op_vec(candidates.front()).size();
    Matrix basis(rows, static_cast<Eigen::Index>(space.size()));
    for (size_t i = 0; i < space.size(); ++i)
        basis.col(static_cast<Eigen::Index>(i)) = op_vec(space[i]);
    Eigen::HouseholderQR<Matrix> qr(basis);
    const Matrix q = qr.householderQ() * Matrix::Identity(rows, basis.cols());
    double worst = 0.0;
    for (const auto& cand : candidates) {
        const Eigen::VectorXcd v = op_vec(cand);
        const double res = (v - q * (q.adjoint() * v)).norm() / v.norm();
        worst = std::max(worst, res);
    }
    return worst;
}

CheckReport centre_of_L(const FiniteZAlgebra& alg) {
    CheckReport rep;
    const auto centre = commutant(alg, full_blockwise_basis(alg));
    rep.record_bool("centre_dimension_k",
                    static_cast<int>(centre.size()) == alg.k);
    // Each centre element must act as xi -> xi * z (pointwise scalar).
    double worst = 0.0;
    const int dsq = alg.d * alg.d;
    for (const auto& op : centre) {
        for (int x = 0; x < alg.k; ++x) {
            const Matrix& b = op.blocks[static_cast<size_t>(x)];
            const cplx lambda = b.trace() / static_cast<double>(dsq);
            worst = std::max(worst, (b - lambda * Matrix::Identity(dsq, dsq)).norm());
        }
    }
    rep.record("centre_scalar_action", worst, 1e-9);
    return rep;
}

CheckReport commutation_checks(const FiniteZAlgebra& alg, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckReport rep;
    for (int t = 0; t < trials; ++t) {
        const AlgElement a = random_element(alg, rng);
        const AlgElement b = random_element(alg, rng);
        const ModuleOperator pa = left_op(alg, a);
        const ModuleOperator pb = right_op(alg, b);
        rep.record("left_right_commute",
                   pa.compose(pb).sub(pb.compose(pa)).frobenius_norm(), 1e-10);
        // pi is a *-homomorphism, pi' a *-anti-homomorphism
        rep.record("pi_star",
                   left_op(alg, star(a)).sub(pa.adjoint()).frobenius_norm(), 1e-12);
        rep.record("pi_homomorphism",
                   left_op(alg, mul(a, b)).sub(pa.compose(left_op(alg, b))).frobenius_norm(),
                   1e-10);
        rep.record("pi_prime_antihomomorphism",
                   right_op(alg, mul(a, b))
                       .sub(right_op(alg, b).compose(right_op(alg, a)))
                       .frobenius_norm(),
                   1e-10);
        // J pi(a) J = pi'(J a) on a random vector
        const AlgElement xi = random_element(alg, rng);
        const AlgElement lhs = star(pa.apply(alg, star(xi)));
        const AlgElement rhs = right_op(alg, star(a)).apply(alg, xi);
        rep.record("j_conjugation", norm_inf(sub(lhs, rhs)), 1e-10);
    }

    const auto pi_basis = left_regular_basis(alg);
    const auto pi_prime_basis = right_regular_basis(alg);
    const auto comm_pi = commutant(alg, pi_basis);
    rep.record_bool("commutant_pi_dimension",
                    static_cast<int>(comm_pi.size()) == alg.k * alg.d * alg.d);
    rep.record("commutant_pi_membership",
               span_membership_residual(comm_pi, pi_prime_basis), 1e-9);
    const auto comm_pi_prime = commutant(alg, pi_prime_basis);
    rep.record_bool("commutant_pi_prime_dimension",
                    static_cast<int>(comm_pi_prime.size()) == alg.k * alg.d * alg.d);
    rep.record("commutant_pi_prime_membership",
               span_membership_residual(comm_pi_prime, pi_basis), 1e-9);
    // double commutant
    const auto double_comm = commutant(alg, comm_pi);
    rep.record_bool("double_commutant_dimension",
                    double_comm.size() == pi_basis.size());
    rep.record("double_commutant_membership",
               span_membership_residual(double_comm, pi_basis), 1e-9);
    return rep;
}

CentreElement canonical_trace(const FiniteZAlgebra& alg,
                              const std::vector<std::pair<AlgElement, AlgElement>>& decomp,
                              std::mt19937_64& rng, double tol) {
    CentreElement sigma = CentreElement::zero(CentreModel::FinitePoints, alg.k);
    AlgElement total = zero_element(alg);
    for (const auto& [xi, eta] : decomp) {
        sigma = sigma.add(inner(alg, star(xi), eta));
        total = add(total, mul(xi, eta));
    }
    // Second decomposition: total = g * (g^{-1} total) for a random invertible g.
    AlgElement g = random_element(alg, rng);
    for (auto& m : g) m += 3.0 * std::sqrt(static_cast<double>(alg.d)) *
                           Matrix::Identity(alg.d, alg.d);  // keep well-conditioned
    AlgElement ginv_total;
    ginv_total.reserve(static_cast<size_t>(alg.k));
    for (int x = 0; x < alg.k; ++x)
        ginv_total.push_back(g[static_cast<size_t>(x)].inverse() *
                             total[static_cast<size_t>(x)]);
    const CentreElement sigma2 = inner(alg, star(g), ginv_total);
    if (sigma.sub(sigma2).upper_norm() > tol)
        throw DecompositionMismatch("canonical_trace: decompositions disagree by " +
                                    std::to_string(sigma.sub(sigma2).upper_norm()));
    return sigma;
}

CheckReport canonical_trace_checks(const FiniteZAlgebra& alg, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckReport rep;
    for (int t = 0; t < trials; ++t) {
        const AlgElement a = random_element(alg, rng);
        const AlgElement b = random_element(alg, rng);
        const AlgElement s = random_element(alg, rng);
        // sigma(pi(a) pi(b)) = tau(ab)
        const CentreElement sigma = canonical_trace(alg, {{a, b}}, rng);
        rep.record("sigma_equals_tau",
                   sigma.sub(ztrace(alg, mul(a, b))).upper_norm(), 1e-10);
        // tracial: sigma(T S) = sigma(S T) with T = pi(s), S = pi(a)pi(b)
        const CentreElement ts = canonical_trace(alg, {{mul(s, a), b}}, rng);
        const CentreElement st = canonical_trace(alg, {{a, mul(b, s)}}, rng);
        rep.record("sigma_tracial", ts.sub(st).upper_norm(), 1e-10);
        // sigma(pi(1) pi(1)) = 1
        if (t == 0) {
            const CentreElement unit =
                canonical_trace(alg, {{identity_element(alg), identity_element(alg)}}, rng);
            rep.record("sigma_unital",
                       unit.sub(CentreElement::one(CentreModel::FinitePoints, alg.k))
                           .upper_norm(),
                       1e-12);
        }
    }
    return rep;
}

CheckReport dixmier_checks(const FiniteZAlgebra& alg, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckReport rep;
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    auto phi = [&](const AlgElement& s) { return ztrace(alg, s); };
    for (int t = 0; t < trials; ++t) {
        const AlgElement s = random_positive(alg, rng);
        const AlgElement s2 = random_positive(alg, rng);
        // (i) additivity
        rep.record("dixmier_additive",
                   phi(add(s, s2)).sub(phi(s).add(phi(s2))).upper_norm(), 1e-12);
        // (ii) Z_+ homogeneity
        std::vector<cplx> zv(static_cast<size_t>(alg.k));
        for (auto& v : zv) v = unif(rng);
        const AlgElement z = central_element(alg, zv);
        rep.record("dixmier_homogeneous",
                   phi(mul(z, s)).sub(ztrace(alg, z).mul(phi(s))).upper_norm(), 1e-12);
        // (iii) unitary invariance
        const AlgElement u = random_unitary(alg, rng);
        rep.record("dixmier_unitary_invariant",
                   phi(mul(mul(u, s), star(u))).sub(phi(s)).upper_norm(), 1e-9);
        // faithfulness: random strict positives have strictly positive trace
        const AlgElement sp = random_positive(alg, rng, 1e-6);
        double min_entry = 1e300;
        for (const auto& v : phi(sp).values()) min_entry = std::min(min_entry, v.real());
        rep.record_bool("dixmier_faithful", min_entry > 0.0);
    }
    // sequential normality: S_j = (1 - 2^{-j}) S increases to S
    const AlgElement s = random_positive(alg, rng);
    const CentreElement limit = phi(s);
    double prev = -1.0;
    bool monotone = true;
    double gap = 0.0;
    for (int j = 1; j <= 60; ++j) {
        const double cur = phi(scale(s, 1.0 - std::pow(0.5, j))).upper_norm();
        if (cur < prev - 1e-12) monotone = false;
        prev = cur;
        gap = std::abs(limit.upper_norm() - cur);
    }
    rep.record_bool("dixmier_normal_monotone", monotone);
    rep.record("dixmier_normal_limit", gap, 1e-9);
    return rep;
}

CheckReport paschke_tensor_demo(int N, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CheckReport rep;
    std::normal_distribution<double> g(0.0, 1.0);
    auto rand_vec = [&](int n) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
        return v;
    };
    // Module vectors are N x k arrays: row n holds the B = C^k coefficient of
    // basis vector xi_n.  theta is the functional built from b_1..b_N.
    Matrix bcoef(N, k);
    for (int n = 0; n < N; ++n) bcoef.row(n) = rand_vec(k).transpose();
    auto theta = [&](const Matrix& v) {  // returns element of B = C^k
        Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(k);
        for (int n = 0; n < N; ++n)
            out += bcoef.row(n).conjugate().cwiseProduct(v.row(n));
        return out;
    };

    // theta(xi_n (x) 1) = b_n^*
    double worst = 0.0;
    for (int n = 0; n < N; ++n) {
        Matrix basis_vec = Matrix::Zero(N, k);
        basis_vec.row(n).setOnes();
        worst = std::max(worst, (theta(basis_vec) - bcoef.row(n).conjugate()).norm());
    }
    rep.record("tensor_basis_coefficients", worst, 1e-12);

    // Action formula theta(sum eta_j (x) a_j) = sum_j sum_n <xi_n, eta_j> b_n^* a_j
    // against the direct evaluation, on random finite combinations.
    worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int terms = 3;
        Matrix v = Matrix::Zero(N, k);
        Eigen::RowVectorXcd formula = Eigen::RowVectorXcd::Zero(k);
        for (int j = 0; j < terms; ++j) {
            const Eigen::VectorXcd eta = rand_vec(N);
            const Eigen::RowVectorXcd a = rand_vec(k).transpose();
            for (int n = 0; n < N; ++n) v.row(n) += eta(n) * a;
            for (int n = 0; n < N; ++n)
                formula += eta(n) * bcoef.row(n).conjugate().cwiseProduct(a);
        }
        worst = std::max(worst, (theta(v) - formula).norm());
    }
    rep.record("tensor_action_formula", worst, 1e-10);

    // ||theta||^2 = ||sum b_n^* b_n|| = max over points of sum_n |b_n|^2
    Eigen::VectorXd quad(k);
    for (int x = 0; x < k; ++x) quad(x) = bcoef.col(x).squaredNorm();
    const double norm_sq = quad.maxCoeff();
    // Random vectors obey |theta(v)| <= ||theta|| ||v||, and the maximizer
    // v = sum xi_n (x) b_n (cut to the maximizing point) attains it.
    double bound_violation = 0.0;
    for (int t = 0; t < 100; ++t) {
        Matrix v(N, k);
        for (int n = 0; n < N; ++n) v.row(n) = rand_vec(k).transpose();
        Eigen::VectorXd vnorm_sq(k);
        for (int x = 0; x < k; ++x) vnorm_sq(x) = v.col(x).squaredNorm();
        const double vnorm = std::sqrt(vnorm_sq.maxCoeff());
        const double tval = theta(v).cwiseAbs().maxCoeff();
        bound_violation =
            std::max(bound_violation, tval - std::sqrt(norm_sq) * vnorm);
    }
    rep.record("tensor_norm_bound", std::max(0.0, bound_violation), 1e-10);
    int best_x = 0;
    quad.maxCoeff(&best_x);
    Matrix maximizer = Matrix::Zero(N, k);
    maximizer.col(best_x) = bcoef.col(best_x);
    const double attained = theta(maximizer).cwiseAbs().maxCoeff();
    const double vnorm = bcoef.col(best_x).norm();
    rep.record("tensor_norm_attained",
               std::abs(attained - std::sqrt(norm_sq) * vnorm), 1e-9);
    return rep;
}

CheckReport run_lab(const FiniteZAlgebra& alg, int trials, std::uint64_t seed) {
    CheckReport rep = check_axioms(alg, trials, seed);
    auto merge = [&rep](const CheckReport& other) {
        for (const auto& r : other.results) rep.results.push_back(r);
    };
    merge(commutation_checks(alg, std::min(trials, 50), seed + 1));
    merge(centre_of_L(alg));
    merge(canonical_trace_checks(alg, trials, seed + 2));
    merge(dixmier_checks(alg, std::min(trials, 50), seed + 3));
    merge(paschke_tensor_demo(6, alg.k, seed + 4));
    return rep;
}

}  // namespace windex::zlab
