#ifndef MARKOVLAB_CHANNELS_HPP
#define MARKOVLAB_CHANNELS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "markovlab/states.hpp"

namespace markovlab {

/// Norm-preserving embedding V with V^dag V = 1.
class Isometry {
 public:
  static Isometry make(Mat matrix, LabelList in_labels, LabelList out_labels);

  const Mat& matrix() const { return matrix_; }
  const LabelList& in_labels() const { return in_; }
  const LabelList& out_labels() const { return out_; }
  Eigen::Index in_dim() const { return matrix_.cols(); }
  Eigen::Index out_dim() const { return matrix_.rows(); }

 private:
  Isometry(Mat m, LabelList i, LabelList o)
      : matrix_(std::move(m)), in_(std::move(i)), out_(std::move(o)) {}
  Mat matrix_;
  LabelList in_, out_;
};

/// Linear map between labeled spaces. Completely positive maps carry a
/// Kraus list; arbitrary (possibly non-CP) maps are carried by their Choi
/// matrix alone. Non-CP maps are first-class values here: classification
/// is a query, never a constructor precondition.
///
/// Choi convention (bit-exact for file I/O): unnormalized, input first,
/// J = sum_ij |i><j| (x) E(|i><j|). CP <=> J PSD; TP <=> Tr_out J = 1_in.
class Channel {
 public:
  static Channel from_kraus(std::vector<Mat> kraus, LabelList in_labels,
                            LabelList out_labels);
  static Channel from_choi(const Mat& choi, LabelList in_labels,
                           LabelList out_labels);

  const Mat& choi() const { return choi_; }
  /// Kraus form; extracted from the Choi spectrum (eigenvalues > 1e-10) on
  /// demand for CP channels, NotPSD for non-CP ones.
  const std::vector<Mat>& kraus() const;
  bool has_kraus() const { return !kraus_.empty(); }

  /// Action E(x) on a bare matrix over the input space.
  Mat apply_matrix(const Mat& x) const;

  const LabelList& in_labels() const { return in_; }
  const LabelList& out_labels() const { return out_; }
  Eigen::Index in_dim() const { return in_dim_; }
  Eigen::Index out_dim() const { return out_dim_; }

 private:
  Channel() = default;
  std::vector<Mat> kraus_;        // empty when Choi-represented
  mutable std::vector<Mat> extracted_;
  Mat choi_;                      // always present (computed eagerly)
  LabelList in_, out_;
  Eigen::Index in_dim_ = 0, out_dim_ = 0;
};

struct ChannelReport {
  bool is_cp = false;
  bool is_tp = false;
  double min_choi_eig = 0.0;
  double tp_residual = 0.0;  // ||Tr_out J - 1_in||_F
};

ChannelReport classify(const Channel& c);

/// Apply the channel to the `target` subsystems of a state, identity on the
/// rest. The target block is replaced, in place, by the channel's output
/// labels. Throws NotPSD when a non-CP channel produces a non-state (the
/// diagnostic carries the offending eigenvalue; nothing is normalized away).
LabeledState apply(const Channel& c, const LabeledState& s,
                   const NameList& target);
/// Same, without state validation; returns the raw matrix and its labels.
std::pair<Mat, LabelList> apply_raw(const Channel& c, const LabeledState& s,
                                    const NameList& target);

/// compose(f, g) = f after g.
Channel compose(const Channel& f, const Channel& g);

/// X -> Tr_discard[V X V^dag]; always CPTP.
Channel isometry_channel(const Isometry& v, const NameList& discard);

/// Haar-distributed isometry via QR of a seeded complex Gaussian matrix,
/// with the R-diagonal phase correction. Deterministic per seed.
Isometry random_isometry(Eigen::Index d_in, Eigen::Index d_out,
                         std::uint64_t seed);
Isometry random_isometry(const LabelList& in_labels,
                         const LabelList& out_labels, std::uint64_t seed);

/// U(theta) = cos(theta) 1 + i sin(theta) SWAP on two d-dimensional systems.
Isometry partial_swap(double theta, Eigen::Index d = 2);

}  // namespace markovlab

#endif
