#ifndef MARKOVLAB_STATES_HPP
#define MARKOVLAB_STATES_HPP

#include <cstdint>
#include <utility>

#include "markovlab/tensor.hpp"

namespace markovlab {

/// Validated density operator over an ordered list of labeled subsystems.
class LabeledState {
 public:
  /// Validates Hermiticity (1e-9 relative), positivity (eigenvalues >=
  /// -1e-10) and unit trace. A trace within 1e-6 of 1 is renormalized and
  /// flagged; anything further off is rejected with NotUnitTrace.
  static LabeledState make(Mat matrix, LabelList labels);

  const Mat& matrix() const { return matrix_; }
  const LabelList& labels() const { return labels_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  bool renormalized() const { return renormalized_; }

 private:
  LabeledState(Mat m, LabelList l, bool renorm)
      : matrix_(std::move(m)), labels_(std::move(l)), renormalized_(renorm) {}
  Mat matrix_;
  LabelList labels_;
  bool renormalized_;
};

/// Partial trace down to the named subsystems (original order kept).
LabeledState marginal(const LabeledState& s, const NameList& keep);
LabeledState permuted(const LabeledState& s, const NameList& new_order);

/// Von Neumann entropy in bits, with 0*log0 := 0.
double entropy(const LabeledState& s);

/// I(A;B) = S(A)+S(B)-S(AB) in bits, on the marginal over partA+partB.
double mutual_information(const LabeledState& s, const NameList& part_a,
                          const NameList& part_b);

/// I(R;E|Q) = S(RQ)+S(QE)-S(RQE)-S(Q) in bits; extra labels are traced out.
double cmi(const LabeledState& s, const std::string& r, const std::string& q,
           const std::string& e);

enum class EntanglementMeasure { Negativity, Concurrence2q };

/// Negativity across the cut (sum of absolute negative partial-transpose
/// eigenvalues, so |Phi+> gives 0.5), or the two-qubit concurrence.
double entanglement(const LabeledState& s, const NameList& cut,
                    EntanglementMeasure measure);

struct DephaseResult {
  LabeledState state;
  double distance;  // trace distance to the input
};

/// Dephase in the eigenbasis of the `side` marginal. Distance > 0 certifies
/// non-zero discord on that side (necessary condition only). Requires a
/// nondegenerate marginal spectrum (gap > 1e-8), else DegenerateError.
DephaseResult eigenbasis_dephase(const LabeledState& s,
                                 const std::string& side);

/// Seeded Ginibre-induced random state: rho = GG^dag / Tr[GG^dag].
LabeledState random_state(const LabelList& labels, Eigen::Index rank,
                          std::uint64_t seed);

}  // namespace markovlab

#endif
