#include "markovlab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unsupported/Eigen/KroneckerProduct>

namespace markovlab {

namespace {

// Flat strides for a row-major mixed-radix index (first label is most
// significant, matching the Kronecker product convention).
std::vector<Eigen::Index> strides(const LabelList& labels) {
  std::vector<Eigen::Index> s(labels.size(), 1);
  for (std::size_t i = labels.size(); i-- > 1;)
    s[i - 1] = s[i] * labels[i].dim;
  return s;
}

// Flat offsets contributed by the subsystems at `positions`, enumerated in
// mixed radix over those subsystems only.
std::vector<Eigen::Index> offsets(const LabelList& labels,
                                  const std::vector<std::size_t>& positions) {
  const auto st = strides(labels);
  Eigen::Index count = 1;
  for (auto p : positions) count *= labels[p].dim;
  std::vector<Eigen::Index> out(static_cast<std::size_t>(count), 0);
  for (Eigen::Index flat = 0; flat < count; ++flat) {
    Eigen::Index rem = flat, off = 0;
    for (std::size_t k = positions.size(); k-- > 0;) {
      const Eigen::Index d = labels[positions[k]].dim;
      off += (rem % d) * st[positions[k]];
      rem /= d;
    }
    out[static_cast<std::size_t>(flat)] = off;
  }
  return out;
}

}  // namespace

Eigen::Index total_dim(const LabelList& labels) {
  Eigen::Index d = 1;
  for (const auto& l : labels) {
    if (l.dim < 1) throw DimensionError("label '" + l.name + "' has dim < 1");
    if (d > kDimensionCap / l.dim)
      throw DimensionCap("label dims exceed cap " +
                         std::to_string(kDimensionCap));
    d *= l.dim;
  }
  return d;
}

void validate_labels(const LabelList& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.name.empty()) throw LabelError("empty label name");
    if (!seen.insert(l.name).second)
      throw LabelError("duplicate label '" + l.name + "'");
  }
  total_dim(labels);
}

std::size_t label_index(const LabelList& labels, const std::string& name) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].name == name) return i;
  throw LabelError("unknown label '" + name + "'");
}

bool has_label(const LabelList& labels, const std::string& name) {
  return std::any_of(labels.begin(), labels.end(),
                     [&](const SystemLabel& l) { return l.name == name; });
}

Mat tensor(const Mat& a, const Mat& b) {
  if (a.rows() > 0 && b.rows() > 0 &&
      (a.rows() > kDimensionCap / b.rows() ||
       a.cols() > kDimensionCap / b.cols()))
    throw DimensionCap("tensor product exceeds dimension cap " +
                       std::to_string(kDimensionCap));
  return Eigen::kroneckerProduct(a, b);
}

LabelList sublabels(const LabelList& labels, const NameList& keep) {
  const std::set<std::string> k(keep.begin(), keep.end());
  for (const auto& name : k) label_index(labels, name);
  LabelList out;
  for (const auto& l : labels)
    if (k.count(l.name)) out.push_back(l);
  return out;
}

Mat partial_trace(const Mat& m, const LabelList& labels,
                  const NameList& keep) {
  validate_labels(labels);
  const Eigen::Index dim = total_dim(labels);
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", labels give " +
                         std::to_string(dim));
  const std::set<std::string> k(keep.begin(), keep.end());
  for (const auto& name : k) label_index(labels, name);

  std::vector<std::size_t> kept, traced;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (k.count(labels[i].name) ? kept : traced).push_back(i);

  const auto keep_off = offsets(labels, kept);
  const auto tr_off = offsets(labels, traced);
  const auto dk = static_cast<Eigen::Index>(keep_off.size());

  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex s = 0;
      for (auto t : tr_off)
        s += m(keep_off[static_cast<std::size_t>(r)] + t,
               keep_off[static_cast<std::size_t>(c)] + t);
      out(r, c) = s;
    }
  return out;
}

Mat permute(const Mat& m, const LabelList& labels, const NameList& new_order) {
  validate_labels(labels);
  if (new_order.size() != labels.size())
    throw LabelError("new_order is not a permutation of the labels");
  const Eigen::Index dim = total_dim(labels);
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionError("matrix dims do not match labels");

  std::vector<std::size_t> old_pos(new_order.size());
  std::set<std::string> seen;
  for (std::size_t j = 0; j < new_order.size(); ++j) {
    if (!seen.insert(new_order[j]).second)
      throw LabelError("duplicate name in new_order");
    old_pos[j] = label_index(labels, new_order[j]);
  }

  const auto old_st = strides(labels);
  LabelList new_labels;
  for (auto p : old_pos) new_labels.push_back(labels[p]);
  const auto new_st = strides(new_labels);

  // map[new flat index] = old flat index
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  for (Eigen::Index f = 0; f < dim; ++f) {
    Eigen::Index old_f = 0;
    for (std::size_t j = 0; j < new_labels.size(); ++j) {
      const Eigen::Index digit = (f / new_st[j]) % new_labels[j].dim;
      old_f += digit * old_st[old_pos[j]];
    }
    map[static_cast<std::size_t>(f)] = old_f;
  }

  Mat out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      out(r, c) = m(map[static_cast<std::size_t>(r)],
                    map[static_cast<std::size_t>(c)]);
  return out;
}

Mat partial_transpose(const Mat& m, const LabelList& labels,
                      const NameList& part) {
  validate_labels(labels);
  const Eigen::Index dim = total_dim(labels);
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionError("matrix dims do not match labels");
  const std::set<std::string> p(part.begin(), part.end());
  for (const auto& name : p) label_index(labels, name);

  std::vector<std::size_t> tpos, rest;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (p.count(labels[i].name) ? tpos : rest).push_back(i);
  const auto t_off = offsets(labels, tpos);
  const auto r_off = offsets(labels, rest);

  Mat out(dim, dim);
  for (auto ra : r_off)
    for (auto rb : r_off)
      for (auto ta : t_off)
        for (auto tb : t_off) out(ra + ta, rb + tb) = m(ra + tb, rb + ta);
  return out;
}

Spectrum eig_hermitian(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix not square");
  const double nrm = m.norm();
  if ((m - m.adjoint()).norm() > kHermTol * std::max(1.0, nrm))
    throw HermiticityError("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eigensolver failed to converge");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

Mat matrix_function(const Mat& m, MatrixFunction f) {
  const Spectrum s = eig_hermitian(m);
  const Eigen::Index n = s.eigenvalues.size();
  Eigen::VectorXd vals(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = s.eigenvalues[i];
    if (x < -kPsdTol)
      throw NotPSD("eigenvalue " + std::to_string(x) + " below -1e-10");
    x = std::max(x, 0.0);
    switch (f) {
      case MatrixFunction::Log2:
        if (x <= kPsdTol)
          throw SingularError("log2 of a singular matrix");
        vals[i] = std::log2(x);
        break;
      case MatrixFunction::Sqrt:
        vals[i] = std::sqrt(x);
        break;
      case MatrixFunction::PseudoInvSqrt:
        vals[i] = x <= kPsdTol ? 0.0 : 1.0 / std::sqrt(x);
        break;
    }
  }
  return s.eigenvectors * vals.asDiagonal() * s.eigenvectors.adjoint();
}

Mat support_projector(const Mat& m) {
  const Spectrum s = eig_hermitian(m);
  Eigen::VectorXd vals(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    vals[i] = s.eigenvalues[i] > kPsdTol ? 1.0 : 0.0;
  return s.eigenvectors * vals.asDiagonal() * s.eigenvectors.adjoint();
}

double trace_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("trace_distance on mismatched dims");
  const Spectrum s = eig_hermitian(a - b);
  return 0.5 * s.eigenvalues.cwiseAbs().sum();
}

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

Vec basis_ket(Eigen::Index d, Eigen::Index i) {
  if (i < 0 || i >= d) throw DimensionError("basis index out of range");
  Vec v = Vec::Zero(d);
  v[i] = 1.0;
  return v;
}

Mat projector(const Vec& v) { return v * v.adjoint(); }

Mat swap_matrix(Eigen::Index d) {
  Mat s = Mat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

Vec max_entangled_ket(Eigen::Index d) {
  Vec v = Vec::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(double(d));
  return v;
}

}  // namespace markovlab
