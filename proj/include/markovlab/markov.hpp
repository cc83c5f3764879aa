#ifndef MARKOVLAB_MARKOV_HPP
#define MARKOVLAB_MARKOV_HPP

#include <optional>
#include <string>

#include "markovlab/channels.hpp"

namespace markovlab {

inline constexpr double kMarkovTol = 1e-8;  // bits, user-overridable

struct MarkovVerdict {
  double cmi_value = 0.0;  // bits
  bool is_markov = false;
  double tolerance = kMarkovTol;
  /// Petz reconstruction trace distance, filled when is_markov.
  std::optional<double> recovery_distance;
};

struct DpiWitness {
  Isometry embedding;  // Q -> QE as Q', trivial E'
  double gap = 0.0;    // violation magnitude = cmi of the source, in bits
};

/// Petz transpose channel R(X) = rho_QE^{1/2}(rho_Q^{-1/2} X rho_Q^{-1/2}
/// (x) 1_E) rho_QE^{1/2}, completed on ker(rho_Q) by mapping it to rho_QE
/// so the result is TP on the full input space. rho_Q's labels pick out Q
/// inside rho_QE; they must be a prefix of rho_QE's label order.
Channel petz_recovery(const LabeledState& rho_qe, const LabeledState& rho_q);

MarkovVerdict is_markov(const LabeledState& rho, const std::string& r,
                        const std::string& q, const std::string& e,
                        double tol = kMarkovTol);

/// Constructive direction: E = Tr_E' o Ad_V o R for a
/// Markov rho. `discard` names V's output systems playing the role of E';
/// empty means every output label but the first. Refuses non-Markov input
/// with NotMarkov (carrying the cmi).
Channel reduced_dynamics(const LabeledState& rho, const std::string& r,
                         const std::string& q, const std::string& e,
                         const Isometry& v, const NameList& discard = {},
                         double tol = kMarkovTol);

struct DpiGapResult {
  bool channel_cptp = false;   // warning flag: the inequality presumes CPTP
  std::optional<double> gap_bits;
  std::string diagnostic;      // set when the output is not a state
};

/// I(R;Q)_rho - I(R;Q')_sigma with sigma = (id (x) c)(rho). Returns a
/// diagnostic instead of a number when a non-CP channel leaves the state set.
DpiGapResult dpi_gap(const LabeledState& rho_rq, const std::string& r,
                     const std::string& q, const Channel& c);

/// The explicit Q' := QE embedding; its DPI gap equals -cmi, reported as a
/// violation magnitude. Zero gap on Markov states.
DpiWitness embedding_witness(const LabeledState& rho, const std::string& r,
                             const std::string& q, const std::string& e);

struct ReductionCheck {
  bool ok = false;
  double distance = 0.0;
};

/// distance = trace_distance(Tr_E'[V rho V^dag] on RQ', (id (x) c)(rho_RQ)).
ReductionCheck verify_reduction(const LabeledState& rho, const std::string& r,
                                const std::string& q, const std::string& e,
                                const Isometry& v, const Channel& c,
                                double tol);

}  // namespace markovlab

#endif
