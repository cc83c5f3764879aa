#include "markovlab/channels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace markovlab {

namespace {

Mat choi_from_kraus(const std::vector<Mat>& kraus, Eigen::Index d_in,
                    Eigen::Index d_out) {
  // J = sum_k w_k w_k^dag with w_k[(i,m)] = (K_k)_{m,i}.
  Mat j = Mat::Zero(d_in * d_out, d_in * d_out);
  for (const auto& k : kraus) {
    Vec w(d_in * d_out);
    for (Eigen::Index i = 0; i < d_in; ++i)
      for (Eigen::Index m = 0; m < d_out; ++m) w[i * d_out + m] = k(m, i);
    j += w * w.adjoint();
  }
  return j;
}

}  // namespace

Isometry Isometry::make(Mat matrix, LabelList in_labels, LabelList out_labels) {
  validate_labels(in_labels);
  validate_labels(out_labels);
  const Eigen::Index d_in = total_dim(in_labels);
  const Eigen::Index d_out = total_dim(out_labels);
  if (matrix.rows() != d_out || matrix.cols() != d_in)
    throw DimensionError("isometry matrix is " + std::to_string(matrix.rows()) +
                         "x" + std::to_string(matrix.cols()) + ", labels give " +
                         std::to_string(d_out) + "x" + std::to_string(d_in));
  if (d_out < d_in) throw DimensionError("isometry needs d_out >= d_in");
  if ((matrix.adjoint() * matrix - identity(d_in)).norm() > 1e-9)
    throw DimensionError("V^dag V != 1 within 1e-9");
  return Isometry(std::move(matrix), std::move(in_labels),
                  std::move(out_labels));
}

Channel Channel::from_kraus(std::vector<Mat> kraus, LabelList in_labels,
                            LabelList out_labels) {
  validate_labels(in_labels);
  validate_labels(out_labels);
  if (kraus.empty()) throw DimensionError("empty Kraus list");
  const Eigen::Index d_in = total_dim(in_labels);
  const Eigen::Index d_out = total_dim(out_labels);
  for (const auto& k : kraus)
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionError("Kraus operator dims do not match labels");
  Channel c;
  c.choi_ = choi_from_kraus(kraus, d_in, d_out);
  c.kraus_ = std::move(kraus);
  c.in_ = std::move(in_labels);
  c.out_ = std::move(out_labels);
  c.in_dim_ = d_in;
  c.out_dim_ = d_out;
  return c;
}

Channel Channel::from_choi(const Mat& choi, LabelList in_labels,
                           LabelList out_labels) {
  validate_labels(in_labels);
  validate_labels(out_labels);
  const Eigen::Index d_in = total_dim(in_labels);
  const Eigen::Index d_out = total_dim(out_labels);
  if (choi.rows() != d_in * d_out || choi.cols() != d_in * d_out)
    throw DimensionError("Choi matrix is " + std::to_string(choi.rows()) +
                         "x" + std::to_string(choi.cols()) +
                         ", labels require " + std::to_string(d_in * d_out));
  Channel c;
  c.choi_ = choi;
  c.in_ = std::move(in_labels);
  c.out_ = std::move(out_labels);
  c.in_dim_ = d_in;
  c.out_dim_ = d_out;
  return c;
}

const std::vector<Mat>& Channel::kraus() const {
  if (!kraus_.empty()) return kraus_;
  if (extracted_.empty()) {
    const Spectrum s = eig_hermitian(choi_);
    const double min_eig = s.eigenvalues[s.eigenvalues.size() - 1];
    if (min_eig < -1e-8)
      throw NotPSD("no Kraus form: Choi eigenvalue " + std::to_string(min_eig));
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
      if (s.eigenvalues[k] <= kPsdTol) continue;
      Mat op(out_dim_, in_dim_);
      for (Eigen::Index i = 0; i < in_dim_; ++i)
        for (Eigen::Index m = 0; m < out_dim_; ++m)
          op(m, i) = std::sqrt(s.eigenvalues[k]) *
                     s.eigenvectors(i * out_dim_ + m, k);
      extracted_.push_back(std::move(op));
    }
    if (extracted_.empty())
      extracted_.push_back(Mat::Zero(out_dim_, in_dim_));
  }
  return extracted_;
}

Mat Channel::apply_matrix(const Mat& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_)
    throw DimensionError("input dims do not match channel");
  if (!kraus_.empty()) {
    Mat y = Mat::Zero(out_dim_, out_dim_);
    for (const auto& k : kraus_) y += k * x * k.adjoint();
    return y;
  }
  // E(X) = Tr_in[(X^T (x) 1_out) J]
  Mat y = Mat::Zero(out_dim_, out_dim_);
  for (Eigen::Index m = 0; m < out_dim_; ++m)
    for (Eigen::Index n = 0; n < out_dim_; ++n) {
      Complex s = 0;
      for (Eigen::Index i = 0; i < in_dim_; ++i)
        for (Eigen::Index j = 0; j < in_dim_; ++j)
          s += x(i, j) * choi_(i * out_dim_ + m, j * out_dim_ + n);
      y(m, n) = s;
    }
  return y;
}

ChannelReport classify(const Channel& c) {
  ChannelReport r;
  const Spectrum s = eig_hermitian(c.choi());
  r.min_choi_eig = s.eigenvalues[s.eigenvalues.size() - 1];
  r.is_cp = r.min_choi_eig >= -1e-8;
  const LabelList jl = {{"in", c.in_dim()}, {"out", c.out_dim()}};
  const Mat tr_out = partial_trace(c.choi(), jl, {"in"});
  r.tp_residual = (tr_out - identity(c.in_dim())).norm();
  r.is_tp = r.tp_residual <= 1e-8;
  return r;
}

std::pair<Mat, LabelList> apply_raw(const Channel& c, const LabeledState& s,
                                    const NameList& target) {
  if (target.empty()) throw LabelError("empty target");
  if (static_cast<Eigen::Index>(target.size()) !=
      static_cast<Eigen::Index>(c.in_labels().size()))
    throw LabelError("target count does not match channel input labels");
  Eigen::Index d_target = 1;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const auto& l = s.labels()[label_index(s.labels(), target[i])];
    if (l.dim != c.in_labels()[i].dim)
      throw DimensionError("target '" + target[i] +
                           "' dim does not match channel input");
    d_target *= l.dim;
  }

  // Rest labels in original order, then the target block.
  const std::set<std::string> tset(target.begin(), target.end());
  NameList rest;
  for (const auto& l : s.labels())
    if (!tset.count(l.name)) rest.push_back(l.name);
  for (const auto& o : c.out_labels())
    if (std::find(rest.begin(), rest.end(), o.name) != rest.end())
      throw LabelError("output label '" + o.name + "' clashes with state");

  NameList order = rest;
  order.insert(order.end(), target.begin(), target.end());
  const Mat x = permute(s.matrix(), s.labels(), order);
  const Eigen::Index d_rest = s.dim() / d_target;
  const Eigen::Index d_out = c.out_dim();

  Mat y;
  if (c.has_kraus()) {
    y = Mat::Zero(d_rest * d_out, d_rest * d_out);
    const Mat one = identity(d_rest);
    for (const auto& k : c.kraus()) {
      const Mat full = tensor(one, k);
      y += full * x * full.adjoint();
    }
  } else {
    // Lifted Choi action: Y(r,m;r',n) = sum_ij X(r,i;r',j) J(i,m;j,n).
    y = Mat::Zero(d_rest * d_out, d_rest * d_out);
    const Mat& j = c.choi();
    const Eigen::Index d_in = c.in_dim();
    for (Eigen::Index r = 0; r < d_rest; ++r)
      for (Eigen::Index rp = 0; rp < d_rest; ++rp)
        for (Eigen::Index m = 0; m < d_out; ++m)
          for (Eigen::Index n = 0; n < d_out; ++n) {
            Complex acc = 0;
            for (Eigen::Index i = 0; i < d_in; ++i)
              for (Eigen::Index jj = 0; jj < d_in; ++jj)
                acc += x(r * d_in + i, rp * d_in + jj) *
                       j(i * d_out + m, jj * d_out + n);
            y(r * d_out + m, rp * d_out + n) = acc;
          }
  }

  // Labels after: rest..., out...; then move the outputs back to where the
  // target block sat.
  LabelList mid = sublabels(s.labels(), rest);
  mid.insert(mid.end(), c.out_labels().begin(), c.out_labels().end());

  NameList final_order;
  bool inserted = false;
  for (const auto& l : s.labels()) {
    if (tset.count(l.name)) {
      if (!inserted) {
        for (const auto& o : c.out_labels()) final_order.push_back(o.name);
        inserted = true;
      }
      continue;
    }
    final_order.push_back(l.name);
  }
  Mat out = permute(y, mid, final_order);
  LabelList out_labels;
  for (const auto& n : final_order)
    out_labels.push_back(mid[label_index(mid, n)]);
  return {std::move(out), std::move(out_labels)};
}

LabeledState apply(const Channel& c, const LabeledState& s,
                   const NameList& target) {
  auto [m, labels] = apply_raw(c, s, target);
  try {
    return LabeledState::make(std::move(m), std::move(labels));
  } catch (const NotPSD& e) {
    throw NotPSD(std::string("channel output is not a state (") + e.what() +
                 "); the channel is likely not CP");
  }
}

Channel compose(const Channel& f, const Channel& g) {
  if (f.in_dim() != g.out_dim())
    throw DimensionError("compose: inner dims do not match");
  if (f.has_kraus() && g.has_kraus()) {
    std::vector<Mat> kraus;
    for (const auto& a : f.kraus())
      for (const auto& b : g.kraus()) kraus.push_back(a * b);
    return Channel::from_kraus(std::move(kraus), g.in_labels(),
                               f.out_labels());
  }
  // Generic: Choi of the composition, column by column.
  const Eigen::Index d_in = g.in_dim(), d_out = f.out_dim();
  Mat j = Mat::Zero(d_in * d_out, d_in * d_out);
  for (Eigen::Index i = 0; i < d_in; ++i)
    for (Eigen::Index jj = 0; jj < d_in; ++jj) {
      Mat unit = Mat::Zero(d_in, d_in);
      unit(i, jj) = 1.0;
      const Mat block = f.apply_matrix(g.apply_matrix(unit));
      j.block(i * d_out, jj * d_out, d_out, d_out) = block;
    }
  return Channel::from_choi(j, g.in_labels(), f.out_labels());
}

Channel isometry_channel(const Isometry& v, const NameList& discard) {
  const std::set<std::string> dset(discard.begin(), discard.end());
  for (const auto& n : dset) label_index(v.out_labels(), n);
  NameList keep;
  for (const auto& l : v.out_labels())
    if (!dset.count(l.name)) keep.push_back(l.name);

  if (dset.empty())
    return Channel::from_kraus({v.matrix()}, v.in_labels(), v.out_labels());

  NameList order = keep;
  for (const auto& l : v.out_labels())
    if (dset.count(l.name)) order.push_back(l.name);
  const Eigen::Index d = v.out_dim();
  LabelList keep_labels = sublabels(v.out_labels(), keep);
  Eigen::Index d_keep = 1;
  for (const auto& l : keep_labels) d_keep *= l.dim;
  const Eigen::Index d_disc = d / d_keep;

  // Permutation matrix P sending v's out ordering to [keep..., discard...]:
  // new flat index (keep-major) -> old flat index in v's out ordering.
  Mat p = Mat::Zero(d, d);
  std::vector<Eigen::Index> strides(v.out_labels().size(), 1);
  for (std::size_t i = v.out_labels().size(); i-- > 1;)
    strides[i - 1] = strides[i] * v.out_labels()[i].dim;
  std::vector<std::size_t> pos;
  for (const auto& n : order) pos.push_back(label_index(v.out_labels(), n));
  std::vector<Eigen::Index> map(static_cast<std::size_t>(d));
  {
    LabelList ordered;
    for (auto pp : pos) ordered.push_back(v.out_labels()[pp]);
    std::vector<Eigen::Index> nst(ordered.size(), 1);
    for (std::size_t i = ordered.size(); i-- > 1;)
      nst[i - 1] = nst[i] * ordered[i].dim;
    for (Eigen::Index f = 0; f < d; ++f) {
      Eigen::Index old_f = 0;
      for (std::size_t k = 0; k < ordered.size(); ++k)
        old_f += ((f / nst[k]) % ordered[k].dim) * strides[pos[k]];
      map[static_cast<std::size_t>(f)] = old_f;
    }
  }
  for (Eigen::Index f = 0; f < d; ++f)
    p(f, map[static_cast<std::size_t>(f)]) = 1.0;

  const Mat pv = p * v.matrix();  // rows now ordered [keep..., discard...]
  std::vector<Mat> kraus;
  for (Eigen::Index e = 0; e < d_disc; ++e) {
    Mat k(d_keep, v.in_dim());
    for (Eigen::Index row = 0; row < d_keep; ++row)
      k.row(row) = pv.row(row * d_disc + e);
    kraus.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(kraus), v.in_labels(), keep_labels);
}

Isometry random_isometry(const LabelList& in_labels,
                         const LabelList& out_labels, std::uint64_t seed) {
  const Eigen::Index d_in = total_dim(in_labels);
  const Eigen::Index d_out = total_dim(out_labels);
  if (d_out < d_in) throw DimensionError("random_isometry needs d_out >= d_in");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(d_out, d_in);
  for (Eigen::Index i = 0; i < d_out; ++i)
    for (Eigen::Index j = 0; j < d_in; ++j) {
      const double re = gauss(rng), im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d_out, d_in);
  const Mat r = qr.matrixQR().topLeftCorner(d_in, d_in);
  // Fix the QR phase ambiguity so the distribution is exactly Haar.
  for (Eigen::Index j = 0; j < d_in; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
  }
  return Isometry::make(std::move(q), in_labels, out_labels);
}

Isometry random_isometry(Eigen::Index d_in, Eigen::Index d_out,
                         std::uint64_t seed) {
  return random_isometry(LabelList{{"in", d_in}}, LabelList{{"out", d_out}},
                         seed);
}

Isometry partial_swap(double theta, Eigen::Index d) {
  const Mat u = std::cos(theta) * identity(d * d) +
                Complex(0, 1) * std::sin(theta) * swap_matrix(d);
  return Isometry::make(u, LabelList{{"Q", d}, {"E", d}},
                        LabelList{{"Q'", d}, {"E'", d}});
}

}  // namespace markovlab
