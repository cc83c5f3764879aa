#include "markovlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace markovlab {

namespace {

double entropy_bits(const Mat& rho) {
  const Spectrum s = eig_hermitian(rho);
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double x = s.eigenvalues[i];
    if (x > kPsdTol) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace

LabeledState LabeledState::make(Mat matrix, LabelList labels) {
  validate_labels(labels);
  const Eigen::Index dim = total_dim(labels);
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw DimensionError("state matrix is " + std::to_string(matrix.rows()) +
                         "x" + std::to_string(matrix.cols()) +
                         ", labels give " + std::to_string(dim));
  if (!matrix.allFinite()) throw NotPSD("state matrix has non-finite entries");
  if ((matrix - matrix.adjoint()).norm() >
      kHermTol * std::max(1.0, matrix.norm()))
    throw HermiticityError("state matrix is not Hermitian");
  matrix = 0.5 * (matrix + matrix.adjoint());

  // positivity first: diag(1, -0.01) is a NotPSD case, not a trace problem
  const Spectrum s = eig_hermitian(matrix);
  const double min_eig = s.eigenvalues[s.eigenvalues.size() - 1];
  if (min_eig < -kPsdTol)
    throw NotPSD("minimum eigenvalue " + std::to_string(min_eig));

  const double tr = matrix.trace().real();
  bool renorm = false;
  if (std::abs(tr - 1.0) > 1e-9) {
    if (std::abs(tr - 1.0) > 1e-6)
      throw NotUnitTrace("trace " + std::to_string(tr));
    matrix /= tr;
    renorm = true;
  }

  return LabeledState(std::move(matrix), std::move(labels), renorm);
}

LabeledState marginal(const LabeledState& s, const NameList& keep) {
  return LabeledState::make(partial_trace(s.matrix(), s.labels(), keep),
                            sublabels(s.labels(), keep));
}

LabeledState permuted(const LabeledState& s, const NameList& new_order) {
  LabelList labels;
  for (const auto& n : new_order)
    labels.push_back(s.labels()[label_index(s.labels(), n)]);
  return LabeledState::make(permute(s.matrix(), s.labels(), new_order),
                            std::move(labels));
}

double entropy(const LabeledState& s) { return entropy_bits(s.matrix()); }

double mutual_information(const LabeledState& s, const NameList& part_a,
                          const NameList& part_b) {
  for (const auto& a : part_a)
    if (std::find(part_b.begin(), part_b.end(), a) != part_b.end())
      throw LabelError("parts overlap on '" + a + "'");
  NameList all = part_a;
  all.insert(all.end(), part_b.begin(), part_b.end());
  const Mat ab = partial_trace(s.matrix(), s.labels(), all);
  const LabelList ab_labels = sublabels(s.labels(), all);
  const Mat a = partial_trace(ab, ab_labels, part_a);
  const Mat b = partial_trace(ab, ab_labels, part_b);
  return entropy_bits(a) + entropy_bits(b) - entropy_bits(ab);
}

double cmi(const LabeledState& s, const std::string& r, const std::string& q,
           const std::string& e) {
  if (r == q || q == e || r == e) throw LabelError("r, q, e must be distinct");
  const Mat rqe = partial_trace(s.matrix(), s.labels(), {r, q, e});
  const LabelList labels = sublabels(s.labels(), {r, q, e});
  const Mat rq = partial_trace(rqe, labels, {r, q});
  const Mat qe = partial_trace(rqe, labels, {q, e});
  const Mat qq = partial_trace(rqe, labels, {q});
  return entropy_bits(rq) + entropy_bits(qe) - entropy_bits(rqe) -
         entropy_bits(qq);
}

double entanglement(const LabeledState& s, const NameList& cut,
                    EntanglementMeasure measure) {
  for (const auto& n : cut) label_index(s.labels(), n);
  if (measure == EntanglementMeasure::Negativity) {
    const Mat pt = partial_transpose(s.matrix(), s.labels(), cut);
    const Spectrum spec = eig_hermitian(pt);
    double neg = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
      if (spec.eigenvalues[i] < 0) neg -= spec.eigenvalues[i];
    return neg;
  }

  // Two-qubit concurrence, standard closed form.
  if (s.dim() != 4)
    throw DimensionError("concurrence2q requires a two-qubit state");
  for (const auto& l : s.labels())
    if (l.dim != 2) throw DimensionError("concurrence2q requires qubits");
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;  // sigma_y (x) sigma_y
  const Mat rho = s.matrix();
  const Mat rr = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> solver(rr);
  Eigen::Vector4d lam;
  for (int i = 0; i < 4; ++i)
    lam[i] = std::sqrt(std::max(0.0, solver.eigenvalues()[i].real()));
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

DephaseResult eigenbasis_dephase(const LabeledState& s,
                                 const std::string& side) {
  const std::size_t pos = label_index(s.labels(), side);
  const Mat marg = partial_trace(s.matrix(), s.labels(), {side});
  const Spectrum spec = eig_hermitian(marg);
  for (Eigen::Index i = 0; i + 1 < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues[i] - spec.eigenvalues[i + 1] <= 1e-8)
      throw DegenerateError("marginal spectrum of '" + side +
                            "' is degenerate; test inconclusive");

  Mat dephased = Mat::Zero(s.dim(), s.dim());
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    Mat p = Mat::Ones(1, 1);
    for (std::size_t i = 0; i < s.labels().size(); ++i)
      p = tensor(p, i == pos ? projector(spec.eigenvectors.col(k))
                             : identity(s.labels()[i].dim));
    dephased += p * s.matrix() * p;
  }
  const double dist = trace_distance(s.matrix(), dephased);
  return {LabeledState::make(std::move(dephased), s.labels()), dist};
}

LabeledState random_state(const LabelList& labels, Eigen::Index rank,
                          std::uint64_t seed) {
  const Eigen::Index dim = total_dim(labels);
  if (rank < 1 || rank > dim)
    throw RankError("rank " + std::to_string(rank) + " out of [1, " +
                    std::to_string(dim) + "]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) {
      const double re = gauss(rng), im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return LabeledState::make(std::move(rho), labels);
}

}  // namespace markovlab
