#ifndef MARKOVLAB_STEERING_HPP
#define MARKOVLAB_STEERING_HPP

#include <optional>
#include <string>
#include <vector>

#include "markovlab/markov.hpp"

namespace markovlab {

/// Tomographically complete set of PSD operators on the reference.
struct Frame {
  std::vector<Mat> elements;
};

/// Hermitian duals: X = sum_i Tr[X P_i] L_i for all X.
struct DualFrame {
  std::vector<Mat> elements;
};

/// d^2 rank-one projectors: the computational basis plus the |i>+|j> and
/// |i>+i|j> superposition pairs. Well-conditioned for d <= 8.
Frame default_frame(Eigen::Index d);

/// L_i = sum_j (G^-1)_ij P_j with Gram G_jk = Tr[P_j P_k].
DualFrame dual_frame(const Frame& f);

/// Steered state Tr_ref[(P (x) 1) rho] / Tr[(P (x) 1) rho], restricted to
/// `keep`. Probability below 1e-12 raises ZeroProbability.
LabeledState steer(const LabeledState& rho, const Mat& p,
                   const std::string& ref, const NameList& keep);
/// Unnormalized steered operator and its probability.
std::pair<Mat, double> steer_raw(const LabeledState& rho, const Mat& p,
                                 const std::string& ref, const NameList& keep);

/// rho = sum_i L_i (x) (p_i * steered_i); inverts `steer` over a frame.
LabeledState reassemble(const Frame& f, const DualFrame& duals,
                        const std::vector<std::pair<double, LabeledState>>&
                            steered,
                        const SystemLabel& ref_label);

/// Post-selected family: either a finite polytope of generator states on QE
/// or a completely positive (not necessarily TP) post-selection map.
struct FamilySpec {
  std::vector<LabeledState> generators;
  std::optional<Channel> postmap;

  static FamilySpec from_generators(std::vector<LabeledState> gens);
  static FamilySpec from_postmap(Channel p);
};

/// Canonical tripartite extension: k (id_R (x) P)(Phi+). The generators
/// variant uses the index-controlled preparation map, giving
/// (1/n) sum_i |i><i|_R (x) omega_i; steering with |i_R><i_R| is checked to
/// recover each generator.
LabeledState canonical_tripartite(const FamilySpec& spec);

struct FamilyCertificate {
  bool markov = false;
  LabeledState state;   // the canonical tripartite extension
  double cmi_bits = 0.0;
  std::optional<double> recovery_distance;
  std::optional<DpiWitness> witness;  // present on refusal
  std::string note;
};

/// Certification of a family: Markov certificate on success,
/// refusal with an embedding witness otherwise. A refusal only shows the
/// canonical construction fails, not that no Markov extension exists.
FamilyCertificate family_certificate(const FamilySpec& spec,
                                     double tol = kMarkovTol);

}  // namespace markovlab

#endif
