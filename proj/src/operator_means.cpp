#include "meanlab/operator_means.hpp"

#include <cmath>
#include <random>

namespace meanlab {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& X) {
    return 0.5 * (X + X.transpose());
}

void require_same_dim(const SpdMatrix& A, const SpdMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionMismatchError();
}

}  // namespace

SpdMatrix::SpdMatrix(Eigen::MatrixXd entries) {
    if (entries.rows() != entries.cols() || entries.rows() < 1) {
        throw std::invalid_argument("SpdMatrix requires a nonempty square matrix");
    }
    double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
    double norm = entries.cwiseAbs().maxCoeff();
    if (asym > 1e-12 * (1.0 + norm)) {
        throw std::invalid_argument("SpdMatrix input is not symmetric");
    }
    mat_ = symmetrized(entries);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat_);
    if (es.info() != Eigen::Success) {
        throw std::invalid_argument("eigendecomposition failed");
    }
    // cached descending
    eigval_ = es.eigenvalues().reverse();
    eigvec_ = es.eigenvectors().rowwise().reverse();
    if (eigval_.minCoeff() <= 0.0) {
        throw std::invalid_argument("SpdMatrix requires a positive definite matrix");
    }
    double recon =
        (eigvec_ * eigval_.asDiagonal() * eigvec_.transpose() - mat_).norm();
    if (recon > 1e-11 * mat_.norm()) {
        throw std::invalid_argument("SpdMatrix spectral reconstruction failed");
    }
}

Eigen::MatrixXd SpdMatrix::apply(const std::function<double(double)>& f) const {
    Eigen::VectorXd d(eigval_.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = f(eigval_[i]);
    return symmetrized(eigvec_ * d.asDiagonal() * eigvec_.transpose());
}

Eigen::MatrixXd SpdMatrix::sqrt() const {
    return apply([](double x) { return std::sqrt(x); });
}

Eigen::MatrixXd SpdMatrix::inv_sqrt() const {
    return apply([](double x) { return 1.0 / std::sqrt(x); });
}

Eigen::MatrixXd SpdMatrix::inverse() const {
    return apply([](double x) { return 1.0 / x; });
}

QuadratureRule::QuadratureRule(int n) {
    if (n < 2) throw std::invalid_argument("QuadratureRule requires >= 2 nodes");
    nodes_.resize(n);
    weights_.resize(n);
    // Newton on the Legendre polynomial, nodes on [-1,1] then mapped to [0,1]
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes_[n - 1 - i] = 0.5 * (1.0 + x);
        weights_[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

double QuadratureRule::integrate(double lo, double hi,
                                 const std::function<double(double)>& f) const {
    double len = hi - lo;
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        acc += weights_[i] * f(lo + len * nodes_[i]);
    }
    return acc * len;
}

LoewnerVerdict loewner_leq(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           double tol) {
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw DimensionMismatchError();
    Eigen::MatrixXd D = symmetrized(Y - X);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D, Eigen::EigenvaluesOnly);
    LoewnerVerdict v;
    v.min_eig = es.eigenvalues().minCoeff();
    v.scale = 1.0 + D.norm();
    v.tol = tol;
    v.holds = v.min_eig >= -tol * v.scale;
    return v;
}

SpdMatrix op_weighted_arithmetic(const SpdMatrix& A, const SpdMatrix& B, double v) {
    require_same_dim(A, B);
    WeightSplit w(v);
    return SpdMatrix((1.0 - v) * A.matrix() + v * B.matrix());
}

namespace {

// A^{1/2} f(C) A^{1/2} with C = sym(A^{-1/2} B A^{-1/2}).
Eigen::MatrixXd congruence_fn(const SpdMatrix& A, const SpdMatrix& B,
                              const std::function<double(double)>& f) {
    Eigen::MatrixXd Ah = A.sqrt();
    Eigen::MatrixXd Aih = A.inv_sqrt();
    SpdMatrix C(symmetrized(Aih * B.matrix() * Aih));
    return symmetrized(Ah * C.apply(f) * Ah);
}

// Scalar weighted log-mean representing function by panel quadrature:
// (v/(1-v)) int_0^{1-v} t^x dx + ((1-v)/v) int_{1-v}^1 t^x dx.
double quad_wlog(double t, double v, const QuadratureRule& rule) {
    auto pw = [t](double x) { return std::pow(t, x); };
    return v / (1.0 - v) * rule.integrate(0.0, 1.0 - v, pw) +
           (1.0 - v) / v * rule.integrate(1.0 - v, 1.0, pw);
}

}  // namespace

SpdMatrix op_weighted_geometric(const SpdMatrix& A, const SpdMatrix& B, double x) {
    require_same_dim(A, B);
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("op_weighted_geometric requires x in [0,1]");
    }
    if (x == 0.0) return A;
    if (x == 1.0) return B;
    return SpdMatrix(congruence_fn(A, B, [x](double t) { return std::pow(t, x); }));
}

SpdMatrix op_log_mean_w(const SpdMatrix& A, const SpdMatrix& B, double v,
                        const QuadratureRule& rule) {
    require_same_dim(A, B);
    WeightSplit w(v);
    if (v < kEndpointWeightEps) return A;
    if (v > 1.0 - kEndpointWeightEps) return B;
    // the congruence kernel carries eigenvalues of B relative to A, so the
    // scalar representing function enters through the duality L_v(a,b) =
    // a L_{1-v}(b/a)
    return SpdMatrix(
        congruence_fn(A, B, [&](double t) { return quad_wlog(t, 1.0 - v, rule); }));
}

SpdMatrix op_log_mean(const SpdMatrix& A, const SpdMatrix& B, const QuadratureRule& rule) {
    require_same_dim(A, B);
    return SpdMatrix(congruence_fn(A, B, [&](double t) {
        return rule.integrate(0.0, 1.0, [t](double x) { return std::pow(t, x); });
    }));
}

Eigen::MatrixXd relative_entropy(const SpdMatrix& A, const SpdMatrix& B) {
    require_same_dim(A, B);
    return congruence_fn(A, B, [](double t) { return std::log(t); });
}

Eigen::MatrixXd tsallis_relative_entropy(const SpdMatrix& A, const SpdMatrix& B,
                                         const Deformation& d) {
    require_same_dim(A, B);
    if (d.classical()) return relative_entropy(A, B);
    return congruence_fn(A, B, [&d](double t) { return r_log(t, d); });
}

const char* operator_case_key(OperatorCase c) {
    switch (c) {
        case OperatorCase::Sandwich: return "op_sandwich";
        case OperatorCase::Product: return "op_product";
        case OperatorCase::Avg: return "op_avg";
        case OperatorCase::Mix: return "op_mix";
        case OperatorCase::Zj: return "op_zj";
        case OperatorCase::ZjTsallis: return "op_zj_tsallis";
    }
    return "?";
}

const std::vector<OperatorCase>& all_operator_cases() {
    static const std::vector<OperatorCase> cases = {
        OperatorCase::Sandwich, OperatorCase::Product, OperatorCase::Avg,
        OperatorCase::Mix,      OperatorCase::Zj,      OperatorCase::ZjTsallis};
    return cases;
}

OperatorCase parse_operator_case(const std::string& key) {
    for (OperatorCase c : all_operator_cases()) {
        if (key == operator_case_key(c)) return c;
    }
    throw std::invalid_argument("unknown operator case: " + key);
}

OperatorCaseReport check_operator_case(OperatorCase id, const SpdMatrix& A,
                                       const SpdMatrix& B, double v, double r,
                                       const QuadratureRule& rule, double tol) {
    require_same_dim(A, B);
    WeightSplit w(v);
    OperatorCaseReport rep;
    rep.id = id;
    rep.v = v;
    rep.r = r;

    switch (id) {
        case OperatorCase::Sandwich: {
            // only v < 1/2 is checked; the integral is v <-> 1-v symmetric
            double vv = std::min(v, 1.0 - v);
            Eigen::MatrixXd lhs;
            if (1.0 - 2.0 * vv < 1e-6) {
                lhs = op_weighted_geometric(A, B, 0.5).matrix();
            } else {
                lhs = congruence_fn(A, B, [&](double t) {
                    return rule.integrate(vv, 1.0 - vv,
                                          [t](double x) { return std::pow(t, x); }) /
                           (1.0 - 2.0 * vv);
                });
            }
            rep.links.push_back(loewner_leq(lhs, op_log_mean(A, B, rule).matrix(), tol));
            break;
        }
        case OperatorCase::Product: {
            Eigen::MatrixXd Ainv = A.inverse();
            Eigen::MatrixXd Pv = op_log_mean_w(A, B, v, rule).matrix();
            Eigen::MatrixXd Pv1 = op_log_mean_w(A, B, 1.0 - v, rule).matrix();
            Eigen::MatrixXd Pl = op_log_mean(A, B, rule).matrix();
            Eigen::MatrixXd lhs = symmetrized(Pv * Ainv * Pv1);
            Eigen::MatrixXd rhs = symmetrized(Pl * Ainv * Pl);
            rep.links.push_back(loewner_leq(lhs, rhs, tol));
            break;
        }
        case OperatorCase::Avg: {
            Eigen::MatrixXd rhs = 0.5 * op_log_mean_w(A, B, v, rule).matrix() +
                                  0.5 * op_log_mean_w(A, B, 1.0 - v, rule).matrix();
            rep.links.push_back(loewner_leq(op_log_mean(A, B, rule).matrix(), rhs, tol));
            break;
        }
        case OperatorCase::Mix: {
            Eigen::MatrixXd rhs = 0.5 * op_weighted_arithmetic(A, B, v).matrix() +
                                  0.5 * op_weighted_geometric(A, B, 1.0 - v).matrix();
            rep.links.push_back(loewner_leq(op_log_mean(A, B, rule).matrix(), rhs, tol));
            break;
        }
        case OperatorCase::Zj:
        case OperatorCase::ZjTsallis: {
            Eigen::MatrixXd S;
            if (id == OperatorCase::Zj) {
                S = relative_entropy(A, B);
            } else {
                Deformation d(r);
                if (d.classical()) {
                    S = relative_entropy(A, B);
                } else if (d.r > 0.0) {
                    if (!loewner_leq(B.matrix(), A.matrix(), tol).holds) {
                        throw OrderPreconditionError(
                            "op_zj_tsallis with r > 0 requires 0 < B <= A");
                    }
                    S = tsallis_relative_entropy(A, B, d);
                } else {
                    if (!loewner_leq(A.matrix(), B.matrix(), tol).holds) {
                        throw OrderPreconditionError(
                            "op_zj_tsallis with r < 0 requires 0 < A <= B");
                    }
                    S = tsallis_relative_entropy(A, B, d);
                }
            }
            Eigen::MatrixXd K = (w.mu / std::sqrt(2.0)) * (A.inverse() * S);
            Eigen::MatrixXd sharp = op_weighted_geometric(A, B, v).matrix();
            Eigen::MatrixXd mid = symmetrized(K.transpose() * sharp * K);
            Eigen::MatrixXd rhs =
                op_weighted_arithmetic(A, B, v).matrix() - sharp;
            Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(A.dim(), A.dim());
            rep.links.push_back(loewner_leq(zero, mid, tol));
            rep.links.push_back(loewner_leq(mid, rhs, tol));
            break;
        }
    }

    rep.holds = true;
    rep.min_eig = rep.links.front().min_eig;
    for (const auto& l : rep.links) {
        rep.holds = rep.holds && l.holds;
        rep.min_eig = std::min(rep.min_eig, l.min_eig);
    }
    return rep;
}

SpdMatrix random_spd(int dim, std::uint64_t seed, double condition) {
    if (dim < 1) throw std::invalid_argument("random_spd requires dim >= 1");
    if (!(condition >= 1.0)) {
        throw std::invalid_argument("random_spd requires condition >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    Eigen::MatrixXd Z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) Z(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
    Eigen::MatrixXd Q = qr.householderQ();
    // fix the sign convention so Q is a deterministic function of Z
    Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
    }

    double logc = std::log(condition);
    Eigen::VectorXd lam(dim);
    for (int i = 0; i < dim; ++i) {
        lam[i] = std::exp(-0.5 * logc + unif(rng) * logc);
    }
    if (dim >= 2) {
        lam[0] = std::exp(-0.5 * logc);
        lam[1] = std::exp(0.5 * logc);
    }
    return SpdMatrix(0.5 * (Q * lam.asDiagonal() * Q.transpose() +
                            (Q * lam.asDiagonal() * Q.transpose()).transpose()));
}

}  // namespace meanlab
