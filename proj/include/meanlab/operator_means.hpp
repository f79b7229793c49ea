#ifndef MEANLAB_OPERATOR_MEANS_HPP
#define MEANLAB_OPERATOR_MEANS_HPP

// SPD-matrix realizations of the operator means, relative entropies, and the
// six operator inequalities, with Loewner-order verdicts. All matrix
// functions go through spectral decomposition of the symmetrized congruence
// kernel A^{-1/2} B A^{-1/2}.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meanlab/scalar_means.hpp"

namespace meanlab {

struct DimensionMismatchError : std::invalid_argument {
    DimensionMismatchError() : std::invalid_argument("matrix dimensions do not match") {}
};

struct OrderPreconditionError : std::runtime_error {
    explicit OrderPreconditionError(const std::string& what) : std::runtime_error(what) {}
};

class SpdMatrix {
  public:
    // Validates near-symmetry, symmetrizes exactly, and caches the spectrum.
    // Throws std::invalid_argument unless the result is positive definite.
    explicit SpdMatrix(Eigen::MatrixXd entries);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXd& matrix() const { return mat_; }
    const Eigen::VectorXd& eigenvalues() const { return eigval_; }  // descending
    const Eigen::MatrixXd& eigenvectors() const { return eigvec_; }

    // f applied eigenwise through the cached decomposition.
    Eigen::MatrixXd apply(const std::function<double(double)>& f) const;
    Eigen::MatrixXd sqrt() const;
    Eigen::MatrixXd inv_sqrt() const;
    Eigen::MatrixXd inverse() const;

  private:
    Eigen::MatrixXd mat_;
    Eigen::VectorXd eigval_;
    Eigen::MatrixXd eigvec_;
};

// Gauss-Legendre nodes and weights on [0,1], affinely remapped per panel.
class QuadratureRule {
  public:
    explicit QuadratureRule(int nodes_per_panel);

    int nodes_per_panel() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // Integral of f over [lo, hi] as a single panel.
    double integrate(double lo, double hi, const std::function<double(double)>& f) const;

  private:
    std::vector<double> nodes_;    // on [0,1]
    std::vector<double> weights_;  // summing to 1
};

struct LoewnerVerdict {
    double min_eig = 0.0;  // smallest eigenvalue of sym(Y - X)
    double scale = 1.0;    // 1 + ||Y - X||_F
    double tol = 0.0;
    bool holds = false;    // min_eig >= -tol * scale
};

inline constexpr double kDefaultLoewnerTol = 1e-8;

LoewnerVerdict loewner_leq(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           double tol = kDefaultLoewnerTol);

SpdMatrix op_weighted_arithmetic(const SpdMatrix& A, const SpdMatrix& B, double v);
SpdMatrix op_weighted_geometric(const SpdMatrix& A, const SpdMatrix& B, double x);

// Weighted operator logarithmic mean by panel quadrature over the geometric
// path; v in (0,1), endpoints follow the scalar-limit convention.
SpdMatrix op_log_mean_w(const SpdMatrix& A, const SpdMatrix& B, double v,
                        const QuadratureRule& rule);
SpdMatrix op_log_mean(const SpdMatrix& A, const SpdMatrix& B, const QuadratureRule& rule);

Eigen::MatrixXd relative_entropy(const SpdMatrix& A, const SpdMatrix& B);
Eigen::MatrixXd tsallis_relative_entropy(const SpdMatrix& A, const SpdMatrix& B,
                                         const Deformation& d);

enum class OperatorCase { Sandwich, Product, Avg, Mix, Zj, ZjTsallis };

const char* operator_case_key(OperatorCase c);
OperatorCase parse_operator_case(const std::string& key);  // throws UnknownCase
const std::vector<OperatorCase>& all_operator_cases();

struct OperatorCaseReport {
    OperatorCase id;
    double v = 0.5;
    double r = 0.0;               // used by ZjTsallis only
    std::vector<LoewnerVerdict> links;
    bool holds = false;           // all links hold
    double min_eig = 0.0;         // smallest link min_eig
};

OperatorCaseReport check_operator_case(OperatorCase id, const SpdMatrix& A,
                                       const SpdMatrix& B, double v, double r,
                                       const QuadratureRule& rule,
                                       double tol = kDefaultLoewnerTol);

// Deterministic random SPD matrix: log-uniform eigenvalues at the prescribed
// condition number, orthogonal factor from a seeded Haar-like draw.
SpdMatrix random_spd(int dim, std::uint64_t seed, double condition);

// JSON wire form {dim, entries row-major}; declared here, defined in report.cpp.

}  // namespace meanlab

#endif  // MEANLAB_OPERATOR_MEANS_HPP
