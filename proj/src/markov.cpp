#include "markovlab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace markovlab {

namespace {

// Tripartite restriction in canonical [r, q, e] order.
LabeledState restrict_rqe(const LabeledState& rho, const std::string& r,
                          const std::string& q, const std::string& e) {
  return permuted(marginal(rho, {r, q, e}), {r, q, e});
}

}  // namespace

Channel petz_recovery(const LabeledState& rho_qe, const LabeledState& rho_q) {
  const std::size_t nq = rho_q.labels().size();
  if (rho_qe.labels().size() <= nq)
    throw LabelError("rho_QE must extend rho_Q");
  NameList q_names, qe_names;
  for (std::size_t i = 0; i < rho_qe.labels().size(); ++i) {
    qe_names.push_back(rho_qe.labels()[i].name);
    if (i < nq) {
      if (!(rho_qe.labels()[i] == rho_q.labels()[i]))
        throw LabelError("rho_Q labels must be a prefix of rho_QE labels");
      q_names.push_back(rho_qe.labels()[i].name);
    }
  }
  const Mat q_marg = partial_trace(rho_qe.matrix(), rho_qe.labels(), q_names);
  if (trace_distance(q_marg, rho_q.matrix()) > 1e-8)
    throw MarginalMismatch("rho_Q is not the Q marginal of rho_QE");

  const Eigen::Index d_q = rho_q.dim();
  const Eigen::Index d_qe = rho_qe.dim();
  const Eigen::Index d_e = d_qe / d_q;

  const Mat sqrt_qe = matrix_function(rho_qe.matrix(), MatrixFunction::Sqrt);
  const Mat inv_sqrt_q =
      matrix_function(rho_q.matrix(), MatrixFunction::PseudoInvSqrt);
  const Mat kernel = identity(d_q) - support_projector(rho_q.matrix());
  const Mat one_e = identity(d_e);

  Mat choi = Mat::Zero(d_q * d_qe, d_q * d_qe);
  for (Eigen::Index i = 0; i < d_q; ++i)
    for (Eigen::Index j = 0; j < d_q; ++j) {
      Mat unit = Mat::Zero(d_q, d_q);
      unit(i, j) = 1.0;
      Mat img = sqrt_qe * tensor(inv_sqrt_q * unit * inv_sqrt_q, one_e) *
                sqrt_qe;
      // Inputs supported on ker(rho_Q) go to the fixed state rho_QE; this
      // is the TP completion, only the support is constrained by the
      // reconstruction identity.
      img += kernel(j, i) * rho_qe.matrix();
      choi.block(i * d_qe, j * d_qe, d_qe, d_qe) = img;
    }
  return Channel::from_choi(choi, rho_q.labels(), rho_qe.labels());
}

MarkovVerdict is_markov(const LabeledState& rho, const std::string& r,
                        const std::string& q, const std::string& e,
                        double tol) {
  MarkovVerdict v;
  v.cmi_value = cmi(rho, r, q, e);
  v.tolerance = tol;
  v.is_markov = v.cmi_value <= tol;
  if (v.is_markov) {
    const LabeledState rqe = restrict_rqe(rho, r, q, e);
    const Channel recovery =
        petz_recovery(permuted(marginal(rqe, {q, e}), {q, e}),
                      marginal(rqe, {q}));
    const LabeledState recon = apply(recovery, marginal(rqe, {r, q}), {q});
    v.recovery_distance = trace_distance(recon.matrix(), rqe.matrix());
  }
  return v;
}

Channel reduced_dynamics(const LabeledState& rho, const std::string& r,
                         const std::string& q, const std::string& e,
                         const Isometry& v, const NameList& discard,
                         double tol) {
  const MarkovVerdict verdict = is_markov(rho, r, q, e, tol);
  if (!verdict.is_markov)
    throw NotMarkov("no universal CPTP reduction exists; I(R;E|Q) = " +
                        std::to_string(verdict.cmi_value) + " bits",
                    verdict.cmi_value);

  const LabeledState rqe = restrict_rqe(rho, r, q, e);
  const LabeledState rho_qe = permuted(marginal(rqe, {q, e}), {q, e});
  if (v.in_dim() != rho_qe.dim())
    throw DimensionError("isometry input does not match QE");

  NameList dropped = discard;
  if (dropped.empty())
    for (std::size_t i = 1; i < v.out_labels().size(); ++i)
      dropped.push_back(v.out_labels()[i].name);

  const Channel recovery = petz_recovery(rho_qe, marginal(rqe, {q}));
  return compose(isometry_channel(v, dropped), recovery);
}

DpiGapResult dpi_gap(const LabeledState& rho_rq, const std::string& r,
                     const std::string& q, const Channel& c) {
  DpiGapResult result;
  const ChannelReport report = classify(c);
  result.channel_cptp = report.is_cp && report.is_tp;
  try {
    const LabeledState sigma = apply(c, rho_rq, {q});
    NameList out_names;
    for (const auto& l : c.out_labels()) out_names.push_back(l.name);
    result.gap_bits = mutual_information(rho_rq, {r}, {q}) -
                      mutual_information(sigma, {r}, out_names);
  } catch (const NotPSD& err) {
    result.diagnostic = std::string("NotAState: ") + err.what();
  } catch (const NotUnitTrace& err) {
    result.diagnostic = std::string("NotAState: ") + err.what();
  }
  return result;
}

DpiWitness embedding_witness(const LabeledState& rho, const std::string& r,
                             const std::string& q, const std::string& e) {
  const LabeledState rqe = restrict_rqe(rho, r, q, e);
  const Eigen::Index d_q = rqe.labels()[1].dim;
  const Eigen::Index d_e = rqe.labels()[2].dim;

  std::string merged = q + e + "'";
  while (merged == r) merged += "'";
  const Isometry embed =
      Isometry::make(identity(d_q * d_e),
                     LabelList{rqe.labels()[1], rqe.labels()[2]},
                     LabelList{{merged, d_q * d_e}});

  // Literal DPI path through the embedding: gap = I(R;QE) - I(R;Q).
  const LabeledState sigma = apply(isometry_channel(embed, {}), rqe, {q, e});
  const double violation = mutual_information(sigma, {r}, {merged}) -
                           mutual_information(rqe, {r}, {q});
  return {embed, violation};
}

ReductionCheck verify_reduction(const LabeledState& rho, const std::string& r,
                                const std::string& q, const std::string& e,
                                const Isometry& v, const Channel& c,
                                double tol) {
  const LabeledState rqe = restrict_rqe(rho, r, q, e);
  if (v.in_dim() != rqe.labels()[1].dim * rqe.labels()[2].dim)
    throw DimensionError("isometry input does not match QE");

  const LabeledState evolved =
      apply(isometry_channel(v, {}), rqe, {q, e});
  NameList keep = {r};
  for (const auto& l : c.out_labels()) {
    if (!has_label(v.out_labels(), l.name))
      throw LabelError("channel output '" + l.name +
                       "' is not among the isometry outputs");
    keep.push_back(l.name);
  }
  const LabeledState sigma_rq = marginal(evolved, keep);
  const LabeledState via_channel = apply(c, marginal(rqe, {r, q}), {q});

  const double dist =
      trace_distance(sigma_rq.matrix(), via_channel.matrix());
  return {dist <= tol, dist};
}

}  // namespace markovlab
