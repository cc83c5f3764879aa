#ifndef MARKOVLAB_TENSOR_HPP
#define MARKOVLAB_TENSOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "markovlab/errors.hpp"

namespace markovlab {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// One subsystem of a labeled tensor-product space.
struct SystemLabel {
  std::string name;
  Eigen::Index dim = 0;

  friend bool operator==(const SystemLabel& a, const SystemLabel& b) {
    return a.name == b.name && a.dim == b.dim;
  }
};

using LabelList = std::vector<SystemLabel>;
using NameList = std::vector<std::string>;

// Hard cap on any single matrix dimension.
inline constexpr Eigen::Index kDimensionCap = 4096;
// Eigenvalue clipping threshold for PSD enforcement and support detection.
inline constexpr double kPsdTol = 1e-10;
// Relative Frobenius tolerance for Hermiticity checks.
inline constexpr double kHermTol = 1e-9;

Eigen::Index total_dim(const LabelList& labels);
void validate_labels(const LabelList& labels);
/// Position of `name` in `labels`; throws LabelError if absent.
std::size_t label_index(const LabelList& labels, const std::string& name);
bool has_label(const LabelList& labels, const std::string& name);

/// Kronecker product; throws DimensionCap above kDimensionCap.
Mat tensor(const Mat& a, const Mat& b);

/// Trace out every subsystem not named in `keep`. Result keeps the
/// surviving labels in their original order; keeping none yields 1x1.
Mat partial_trace(const Mat& m, const LabelList& labels, const NameList& keep);
LabelList sublabels(const LabelList& labels, const NameList& keep);

/// Subsystem reindexing; `new_order` must be a permutation of the names.
Mat permute(const Mat& m, const LabelList& labels, const NameList& new_order);

/// Transpose the subsystems named in `part`, leaving the rest untouched.
Mat partial_transpose(const Mat& m, const LabelList& labels,
                      const NameList& part);

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending
  Mat eigenvectors;             // unitary, columns
};

Spectrum eig_hermitian(const Mat& m);

enum class MatrixFunction { Log2, Sqrt, PseudoInvSqrt };

/// Spectral function of a Hermitian PSD matrix (eigenvalues clipped at
/// kPsdTol). PseudoInvSqrt is zero on the kernel; Log2 rejects singular
/// input with SingularError.
Mat matrix_function(const Mat& m, MatrixFunction f);

/// Projector onto the support (eigenvalues > kPsdTol) of a Hermitian PSD m.
Mat support_projector(const Mat& m);

double trace_distance(const Mat& a, const Mat& b);

// Small constructors used everywhere.
Mat identity(Eigen::Index d);
Vec basis_ket(Eigen::Index d, Eigen::Index i);
Mat projector(const Vec& v);
Mat swap_matrix(Eigen::Index d);
/// |Phi+> = sum_i |ii>/sqrt(d) between two d-dimensional systems.
Vec max_entangled_ket(Eigen::Index d);

}  // namespace markovlab

#endif
