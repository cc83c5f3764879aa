#include "markovlab/steering.hpp"

#include <cmath>

namespace markovlab {

Frame default_frame(Eigen::Index d) {
  Frame f;
  for (Eigen::Index i = 0; i < d; ++i)
    f.elements.push_back(projector(basis_ket(d, i)));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      Vec plus = (basis_ket(d, i) + basis_ket(d, j)) / std::sqrt(2.0);
      Vec phase = (basis_ket(d, i) + Complex(0, 1) * basis_ket(d, j)) /
                  std::sqrt(2.0);
      f.elements.push_back(projector(plus));
      f.elements.push_back(projector(phase));
    }
  return f;
}

DualFrame dual_frame(const Frame& f) {
  const std::size_t n = f.elements.size();
  if (n == 0) throw SingularGram("empty frame");
  const Eigen::Index d = f.elements[0].rows();
  for (const auto& p : f.elements) {
    if (p.rows() != d || p.cols() != d)
      throw DimensionError("frame elements have mixed dims");
    const Spectrum s = eig_hermitian(p);
    if (s.eigenvalues[s.eigenvalues.size() - 1] < -kPsdTol)
      throw NotPSD("frame element is not PSD");
  }
  if (static_cast<Eigen::Index>(n) < d * d)
    throw SingularGram("frame has fewer than d^2 elements");

  Eigen::MatrixXcd gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram(i, j) = (f.elements[i] * f.elements[j]).trace();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
  if (!lu.isInvertible())
    throw SingularGram("frame is not tomographically complete");
  const Eigen::MatrixXcd ginv = lu.inverse();

  DualFrame duals;
  for (std::size_t i = 0; i < n; ++i) {
    Mat l = Mat::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) l += ginv(i, j) * f.elements[j];
    l = 0.5 * (l + l.adjoint());  // duals are self-adjoint
    duals.elements.push_back(std::move(l));
  }
  return duals;
}

std::pair<Mat, double> steer_raw(const LabeledState& rho, const Mat& p,
                                 const std::string& ref,
                                 const NameList& keep) {
  const std::size_t pos = label_index(rho.labels(), ref);
  const Eigen::Index d_ref = rho.labels()[pos].dim;
  if (p.rows() != d_ref || p.cols() != d_ref)
    throw DimensionError("steering operator does not match reference dim");
  const Spectrum s = eig_hermitian(p);
  if (s.eigenvalues[s.eigenvalues.size() - 1] < -kPsdTol)
    throw NotPSD("steering operator is not PSD");

  Mat lifted = Mat::Ones(1, 1);
  for (std::size_t i = 0; i < rho.labels().size(); ++i)
    lifted = tensor(lifted, i == pos ? p : identity(rho.labels()[i].dim));
  const Mat weighted = lifted * rho.matrix();
  const double prob = weighted.trace().real();
  Mat steered = partial_trace(weighted, rho.labels(), keep);
  return {std::move(steered), prob};
}

LabeledState steer(const LabeledState& rho, const Mat& p,
                   const std::string& ref, const NameList& keep) {
  auto [op, prob] = steer_raw(rho, p, ref, keep);
  if (prob <= 1e-12)
    throw ZeroProbability("steering probability " + std::to_string(prob));
  // Symmetrize: (P (x) 1) rho is not Hermitian entrywise, but its partial
  // trace over the rest of a valid steering scenario is, up to round-off.
  Mat m = 0.5 * (op + op.adjoint()) / prob;
  return LabeledState::make(std::move(m), sublabels(rho.labels(), keep));
}

LabeledState reassemble(const Frame& f, const DualFrame& duals,
                        const std::vector<std::pair<double, LabeledState>>&
                            steered,
                        const SystemLabel& ref_label) {
  if (f.elements.size() != duals.elements.size() ||
      f.elements.size() != steered.size())
    throw DimensionError("frame, duals and steered data sizes differ");
  if (steered.empty()) throw DimensionError("no steered data");
  const LabelList& rest = steered.front().second.labels();
  const Eigen::Index d_rest = steered.front().second.dim();

  Mat rho = Mat::Zero(ref_label.dim * d_rest, ref_label.dim * d_rest);
  for (std::size_t i = 0; i < steered.size(); ++i) {
    if (steered[i].second.dim() != d_rest)
      throw DimensionError("steered states have mixed dims");
    rho += tensor(duals.elements[i],
                  steered[i].first * steered[i].second.matrix());
  }
  LabelList labels = {ref_label};
  labels.insert(labels.end(), rest.begin(), rest.end());
  return LabeledState::make(std::move(rho), std::move(labels));
}

FamilySpec FamilySpec::from_generators(std::vector<LabeledState> gens) {
  if (gens.empty()) throw DimensionError("empty generator list");
  const LabelList& ref = gens.front().labels();
  for (const auto& g : gens)
    if (!(g.labels() == ref))
      throw LabelError("generators must share one label list");
  FamilySpec s;
  s.generators = std::move(gens);
  return s;
}

FamilySpec FamilySpec::from_postmap(Channel p) {
  const ChannelReport report = classify(p);
  if (!report.is_cp)
    throw NotPSD("post-selection map must be completely positive");
  FamilySpec s;
  s.postmap = std::move(p);
  return s;
}

LabeledState canonical_tripartite(const FamilySpec& spec) {
  if (spec.postmap) {
    const Channel& p = *spec.postmap;
    const Eigen::Index d0 = p.in_dim();
    // rho_RQE = k (id_R (x) P)(Phi+_{R:Q0E0})
    const LabeledState phi = LabeledState::make(
        projector(max_entangled_ket(d0)),
        LabelList{{"R", d0}, {"Q0E0", d0}});
    Channel relabeled =
        Channel::from_choi(p.choi(), LabelList{{"Q0E0", d0}}, p.out_labels());
    auto [m, labels] = apply_raw(relabeled, phi, {"Q0E0"});
    const double k = m.trace().real();
    if (k <= 1e-12) throw ZeroMap("post-selection map annihilates Phi+");
    return LabeledState::make(m / k, std::move(labels));
  }

  // Generators variant: index-controlled preparation, mirroring the
  // flag-register construction. Yields (1/n) sum_i |i><i|_R (x) omega_i.
  const auto n = static_cast<Eigen::Index>(spec.generators.size());
  const Eigen::Index d_qe = spec.generators.front().dim();
  Mat rho = Mat::Zero(n * d_qe, n * d_qe);
  for (Eigen::Index i = 0; i < n; ++i)
    rho.block(i * d_qe, i * d_qe, d_qe, d_qe) =
        spec.generators[static_cast<std::size_t>(i)].matrix() / double(n);
  LabelList labels = {{"R", n}};
  const LabelList& qe = spec.generators.front().labels();
  labels.insert(labels.end(), qe.begin(), qe.end());
  LabeledState state = LabeledState::make(std::move(rho), std::move(labels));

  // Contract check: projective steering recovers each generator.
  NameList keep;
  for (const auto& l : qe) keep.push_back(l.name);
  for (Eigen::Index i = 0; i < n; ++i) {
    const LabeledState back =
        steer(state, projector(basis_ket(n, i)), "R", keep);
    if (trace_distance(back.matrix(),
                       spec.generators[static_cast<std::size_t>(i)].matrix()) >
        1e-9)
      throw LabelError("steering does not recover generator " +
                       std::to_string(i));
  }
  return state;
}

FamilyCertificate family_certificate(const FamilySpec& spec, double tol) {
  LabeledState state = canonical_tripartite(spec);
  if (state.labels().size() != 3)
    throw LabelError("family certification needs a Q,E split (two labels)");
  const std::string r = state.labels()[0].name;
  const std::string q = state.labels()[1].name;
  const std::string e = state.labels()[2].name;

  const MarkovVerdict verdict = is_markov(state, r, q, e, tol);
  FamilyCertificate cert{verdict.is_markov, std::move(state),
                         verdict.cmi_value, verdict.recovery_distance,
                         std::nullopt, ""};
  if (verdict.is_markov) {
    cert.note =
        "Markov certificate: every joint QE evolution admits a single CPTP "
        "reduction valid for all family members.";
  } else {
    cert.witness = embedding_witness(cert.state, r, q, e);
    cert.note =
        "Refusal: the canonical tripartite extension is not Markov. This is "
        "not a disproof for the family; only the canonical construction "
        "fails, as witnessed by the embedding.";
  }
  return cert;
}

}  // namespace markovlab
