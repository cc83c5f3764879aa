#ifndef MARKOVLAB_GALLERY_HPP
#define MARKOVLAB_GALLERY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "markovlab/steering.hpp"

namespace markovlab {

struct GalleryInstance {
  FamilySpec family;
  LabeledState state;    // the tripartite Markov candidate
  LabeledState member;   // one bipartite family member (the probs/p pick)
};

/// Classical-quantum family: n orthogonal pointer states on Q, each tagging
/// an environment state; the tripartite state is the equal-weight flagged
/// mixture. `env_states` defaults to seeded random qubit-or-larger states.
GalleryInstance zero_discord_instance(Eigen::Index n, Eigen::Index d_env,
                                      const std::vector<double>& probs,
                                      const std::vector<Mat>* env_states,
                                      std::uint64_t seed);

/// Qutrit counterexample family: generators
/// zeta_alpha = (|0><0| (x) rho0 + |+><+| (x) rhoPlus)/2 and
/// zeta_beta = |2><2| (x) rho2, with the orthogonally flagged tripartite
/// mixture. Members zeta^p can carry non-zero discord while remaining in a
/// Markov family.
GalleryInstance counterexample_instance(const Mat& rho0, const Mat& rho_plus,
                                        const Mat& rho2, double p = 0.5);
/// zeta^p = p zeta_alpha + (1-p) zeta_beta for one of the two generators.
LabeledState zeta_member(const GalleryInstance& inst, double p);

/// rho_RQE = (1 (x) W) omega (1 (x) W^dag) for an isometry W: Q0 -> QE.
/// Checked Markov (NotMarkov otherwise); the returned family is the
/// steered polytope sampled over the default reference frame.
GalleryInstance entangled_markov_instance(const Isometry& w,
                                          const LabeledState& omega);

/// Stinespring dilation of the reversible channel X -> U(X (x) sigma_F)U^dag:
/// W|psi> = (U (x) 1_E)(|psi> (x) |sigma purification>_FE). Any omega then
/// gives a Markov tripartite state with possibly entangled QE members.
/// `sigma_spectrum` must be a probability vector (the F-ancilla spectrum).
Isometry invertible_dilation(Eigen::Index d_q0,
                             const std::vector<double>& sigma_spectrum,
                             std::uint64_t seed);

struct FactorizationReport {
  double cmi_bits = 0.0;
  double env_mutual_info = 0.0;  // I(R'';E) of the environment input
  bool markov = false;
  double recovery_distance = 0.0;
};

/// Full-steering scenario |Phi+><Phi+|_{R'Q} (x) env_{R''E} with R = R'R'':
/// Markov iff the environment input factorizes, recovering the initial
/// factorization condition.
FactorizationReport factorization_audit(Eigen::Index d_q,
                                        const LabeledState& env_rqe);

struct ScenarioTrace {
  std::vector<double> times;
  std::vector<double> concurrence_rq;
  std::vector<double> mutual_info_rq;   // bits
  std::vector<double> cmi_re_given_q;   // bits
  std::vector<std::pair<double, double>> revival_intervals;
  std::vector<bool> in_revival;
};

/// Entanglement-revival scenario: |Phi+>_RQ (x) |0><0|_E evolved by the
/// partial-swap unitary on QE. Revival intervals are maximal strict-increase
/// runs of the concurrence (noise floor 1e-9) after a prior strict decrease.
ScenarioTrace revival_trace(const std::vector<double>& t_grid,
                            Eigen::Index env_dim = 2);

struct Theorem1Report {
  int n_states = 0;
  int n_isometries = 0;
  int markov_cases = 0;
  int nonmarkov_cases = 0;
  double max_reduction_distance = 0.0;
  double min_dpi_gap = 0.0;
  double max_witness_error = 0.0;  // max |witness gap - cmi|
  bool all_cp_tp = true;
  bool all_pass = false;
  std::string text;  // deterministic formatted report
};

/// Randomized equivalence audit: Markov states get constructive CPTP
/// reductions checked against the global evolution and the DPI; non-Markov
/// states get embedding witnesses matched against their cmi.
Theorem1Report theorem1_audit(int n_states, int n_isometries,
                              std::uint64_t seed);

}  // namespace markovlab

#endif
