#include "markovlab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

namespace markovlab {

namespace {

void check_simplex(const std::vector<double>& probs) {
  if (probs.empty()) throw SimplexError("empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw SimplexError("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw SimplexError("probabilities sum to " + std::to_string(sum));
}

Mat validated_env_state(const Mat& m, Eigen::Index d) {
  return LabeledState::make(m, LabelList{{"E", d}}).matrix();
}

}  // namespace

GalleryInstance zero_discord_instance(Eigen::Index n, Eigen::Index d_env,
                                      const std::vector<double>& probs,
                                      const std::vector<Mat>* env_states,
                                      std::uint64_t seed) {
  if (n < 1) throw DimensionError("need n >= 1");
  if (static_cast<Eigen::Index>(probs.size()) != n)
    throw SimplexError("probs length does not match n");
  check_simplex(probs);

  std::vector<Mat> env;
  if (env_states) {
    if (static_cast<Eigen::Index>(env_states->size()) != n)
      throw DimensionError("need n environment states");
    for (const auto& m : *env_states) env.push_back(validated_env_state(m, d_env));
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      env.push_back(
          random_state(LabelList{{"E", d_env}}, d_env, seed + 101 * i)
              .matrix());
  }

  const LabelList qe = {{"Q", n}, {"E", d_env}};
  std::vector<LabeledState> gens;
  Mat member = Mat::Zero(n * d_env, n * d_env);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Mat g = tensor(projector(basis_ket(n, i)), env[i]);
    member += probs[static_cast<std::size_t>(i)] * g;
    gens.push_back(LabeledState::make(g, qe));
  }
  FamilySpec family = FamilySpec::from_generators(std::move(gens));
  LabeledState state = canonical_tripartite(family);
  return {std::move(family), std::move(state),
          LabeledState::make(std::move(member), qe)};
}

GalleryInstance counterexample_instance(const Mat& rho0, const Mat& rho_plus,
                                        const Mat& rho2, double p) {
  const Eigen::Index d_env = rho0.rows();
  const Mat r0 = validated_env_state(rho0, d_env);
  const Mat rp = validated_env_state(rho_plus, d_env);
  const Mat r2 = validated_env_state(rho2, d_env);
  if (trace_distance(r0, rp) <= 1e-6)
    throw DegenerateInput("rho0 and rhoPlus coincide");

  const Vec plus = (basis_ket(3, 0) + basis_ket(3, 1)) / std::sqrt(2.0);
  const Mat zeta_alpha = 0.5 * tensor(projector(basis_ket(3, 0)), r0) +
                         0.5 * tensor(projector(plus), rp);
  const Mat zeta_beta = tensor(projector(basis_ket(3, 2)), r2);

  const LabelList qe = {{"Q", 3}, {"E", d_env}};
  FamilySpec family = FamilySpec::from_generators(
      {LabeledState::make(zeta_alpha, qe), LabeledState::make(zeta_beta, qe)});
  LabeledState state = canonical_tripartite(family);
  GalleryInstance inst{std::move(family), std::move(state),
                       LabeledState::make(zeta_beta, qe)};
  inst.member = zeta_member(inst, p);
  return inst;
}

LabeledState zeta_member(const GalleryInstance& inst, double p) {
  if (p < 0.0 || p > 1.0) throw SimplexError("p outside [0,1]");
  if (inst.family.generators.size() != 2)
    throw DimensionError("zeta member needs the two-generator family");
  const Mat m = p * inst.family.generators[0].matrix() +
                (1 - p) * inst.family.generators[1].matrix();
  return LabeledState::make(m, inst.family.generators[0].labels());
}

GalleryInstance entangled_markov_instance(const Isometry& w,
                                          const LabeledState& omega) {
  if (omega.labels().size() != 2)
    throw LabelError("omega must be a bipartite R,Q0 state");
  if (w.in_dim() != omega.labels()[1].dim)
    throw DimensionError("isometry input does not match Q0");
  if (w.out_labels().size() != 2)
    throw LabelError("isometry output must split as Q,E");

  const std::string r = omega.labels()[0].name;
  const std::string q0 = omega.labels()[1].name;
  const std::string q = w.out_labels()[0].name;
  const std::string e = w.out_labels()[1].name;
  if (q == r || e == r) throw LabelError("output labels clash with R");

  LabeledState state = apply(isometry_channel(w, {}), omega, {q0});
  const MarkovVerdict verdict = is_markov(state, r, q, e);
  if (!verdict.is_markov)
    throw NotMarkov(
        "the construction is not Markov for this isometry/omega pair "
        "(the isometry is not a dilation of a CPTP-invertible map); "
        "I(R;E|Q) = " + std::to_string(verdict.cmi_value) + " bits",
        verdict.cmi_value);

  // Family by steering from R over the default frame.
  const Eigen::Index d_r = omega.labels()[0].dim;
  std::vector<LabeledState> gens;
  LabeledState member = steer(state, identity(d_r), r, {q, e});
  for (const auto& p : default_frame(d_r).elements) {
    try {
      gens.push_back(steer(state, p, r, {q, e}));
    } catch (const ZeroProbability&) {
      // steering operator orthogonal to the reference marginal; skip
    }
  }
  return {FamilySpec::from_generators(std::move(gens)), std::move(state),
          std::move(member)};
}

Isometry invertible_dilation(Eigen::Index d_q0,
                             const std::vector<double>& sigma_spectrum,
                             std::uint64_t seed) {
  check_simplex(sigma_spectrum);
  const auto d_f = static_cast<Eigen::Index>(sigma_spectrum.size());
  Vec purification = Vec::Zero(d_f * d_f);  // order F, E
  for (Eigen::Index k = 0; k < d_f; ++k)
    purification[k * d_f + k] =
        std::sqrt(sigma_spectrum[static_cast<std::size_t>(k)]);

  const Mat u =
      random_isometry(d_q0 * d_f, d_q0 * d_f, seed).matrix();  // unitary on Q0F
  const Mat lifted = tensor(u, identity(d_f));

  Mat w(d_q0 * d_f * d_f, d_q0);
  for (Eigen::Index i = 0; i < d_q0; ++i) {
    Vec col = Vec::Zero(d_q0 * d_f * d_f);
    // |i>_Q0 (x) |purification>_FE
    for (Eigen::Index k = 0; k < d_f * d_f; ++k)
      col[i * d_f * d_f + k] = purification[k];
    w.col(i) = lifted * col;
  }
  return Isometry::make(std::move(w), LabelList{{"Q0", d_q0}},
                        LabelList{{"Q", d_q0 * d_f}, {"E", d_f}});
}

FactorizationReport factorization_audit(Eigen::Index d_q,
                                        const LabeledState& env_rqe) {
  if (env_rqe.labels().size() != 2)
    throw DimensionError("environment input must be a bipartite R'',E state");
  const Eigen::Index d_r2 = env_rqe.labels()[0].dim;
  const Eigen::Index d_e = env_rqe.labels()[1].dim;

  // |Phi+>_{R'Q} (x) env_{R''E}, then gather R'R'' into one reference label.
  const Mat full =
      tensor(projector(max_entangled_ket(d_q)), env_rqe.matrix());
  const LabelList built = {
      {"R'", d_q}, {"Q", d_q}, {"R''", d_r2}, {"E", d_e}};
  const Mat gathered = permute(full, built, {"R'", "R''", "Q", "E"});
  const LabeledState state = LabeledState::make(
      gathered, LabelList{{"R", d_q * d_r2}, {"Q", d_q}, {"E", d_e}});

  FactorizationReport report;
  report.cmi_bits = cmi(state, "R", "Q", "E");
  report.env_mutual_info =
      mutual_information(env_rqe, {env_rqe.labels()[0].name},
                         {env_rqe.labels()[1].name});
  const MarkovVerdict verdict = is_markov(state, "R", "Q", "E");
  report.markov = verdict.is_markov;
  report.recovery_distance = verdict.recovery_distance.value_or(0.0);
  return report;
}

ScenarioTrace revival_trace(const std::vector<double>& t_grid,
                            Eigen::Index env_dim) {
  if (t_grid.empty()) throw GridError("empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1]) throw GridError("grid must be ascending");
  if (env_dim != 2)
    throw DimensionError("partial swap couples equal dims; Q is a qubit");

  const LabeledState initial = LabeledState::make(
      tensor(projector(max_entangled_ket(2)), projector(basis_ket(2, 0))),
      LabelList{{"R", 2}, {"Q", 2}, {"E", 2}});

  ScenarioTrace trace;
  for (double t : t_grid) {
    const Mat u = std::cos(t) * identity(4) +
                  Complex(0, 1) * std::sin(t) * swap_matrix(2);
    const Isometry v = Isometry::make(u, LabelList{{"Q", 2}, {"E", 2}},
                                      LabelList{{"Q", 2}, {"E", 2}});
    const LabeledState evolved =
        apply(isometry_channel(v, {}), initial, {"Q", "E"});
    trace.times.push_back(t);
    trace.concurrence_rq.push_back(entanglement(
        marginal(evolved, {"R", "Q"}), {"R"}, EntanglementMeasure::Concurrence2q));
    trace.mutual_info_rq.push_back(mutual_information(evolved, {"R"}, {"Q"}));
    trace.cmi_re_given_q.push_back(cmi(evolved, "R", "Q", "E"));
  }

  // Maximal strict-increase runs after a prior strict decrease.
  const double floor = 1e-9;
  trace.in_revival.assign(t_grid.size(), false);
  bool seen_decrease = false;
  std::size_t i = 0;
  while (i + 1 < t_grid.size()) {
    const double diff = trace.concurrence_rq[i + 1] - trace.concurrence_rq[i];
    if (diff < -floor) {
      seen_decrease = true;
      ++i;
    } else if (diff > floor && seen_decrease) {
      const std::size_t start = i;
      while (i + 1 < t_grid.size() &&
             trace.concurrence_rq[i + 1] - trace.concurrence_rq[i] > floor)
        ++i;
      trace.revival_intervals.emplace_back(t_grid[start], t_grid[i]);
      for (std::size_t k = start; k <= i; ++k) trace.in_revival[k] = true;
    } else {
      ++i;
    }
  }
  return trace;
}

Theorem1Report theorem1_audit(int n_states, int n_isometries,
                              std::uint64_t seed) {
  Theorem1Report rep;
  rep.n_states = n_states;
  rep.n_isometries = n_isometries;
  rep.min_dpi_gap = n_states > 0 ? 1e300 : 0.0;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_pick(2, 3);
  std::uniform_real_distribution<double> unit(0.05, 0.95);

  // Constructive side: Markov states from reversible-channel dilations.
  for (int s = 0; s < n_states; ++s) {
    const double lam = unit(rng);
    const std::uint64_t sub = rng();
    const Isometry w = invertible_dilation(2, {lam, 1.0 - lam}, sub);
    const LabeledState omega = random_state(
        LabelList{{"R", 2}, {"Q0", 2}}, 1 + static_cast<Eigen::Index>(sub % 4),
        sub ^ 0x9e3779b97f4a7c15ULL);
    const GalleryInstance inst = entangled_markov_instance(w, omega);
    ++rep.markov_cases;

    const Eigen::Index d_qe = 8;
    for (int j = 0; j < n_isometries; ++j) {
      const std::uint64_t vseed = rng();
      LabelList out = (j % 2 == 0) ? LabelList{{"Q'", 4}, {"E'", 2}}
                                   : LabelList{{"Q'", 2}, {"E'", 4}};
      const Isometry v = random_isometry(
          LabelList{{"Qin", 4}, {"Ein", 2}}, out, vseed);
      (void)d_qe;
      const Channel reduced =
          reduced_dynamics(inst.state, "R", "Q", "E", v, {"E'"});
      const ChannelReport cls = classify(reduced);
      if (!cls.is_cp || !cls.is_tp) rep.all_cp_tp = false;
      const ReductionCheck check =
          verify_reduction(inst.state, "R", "Q", "E", v, reduced, 1e-8);
      rep.max_reduction_distance =
          std::max(rep.max_reduction_distance, check.distance);
      const DpiGapResult gap =
          dpi_gap(marginal(inst.state, {"R", "Q"}), "R", "Q", reduced);
      if (gap.gap_bits)
        rep.min_dpi_gap = std::min(rep.min_dpi_gap, *gap.gap_bits);
      else
        rep.all_cp_tp = false;
    }
  }

  // Witness side: non-Markov states, embedding gap must equal the cmi.
  for (int s = 0; s < n_states; ++s) {
    const Eigen::Index dr = dim_pick(rng), dq = dim_pick(rng),
                       de = dim_pick(rng);
    std::uint64_t sub = rng();
    for (int tries = 0; tries < 64; ++tries, ++sub) {
      const LabeledState rho = random_state(
          LabelList{{"R", dr}, {"Q", dq}, {"E", de}},
          1 + static_cast<Eigen::Index>(sub % (dr * dq * de)), sub);
      const double value = cmi(rho, "R", "Q", "E");
      if (value <= 0.01) continue;
      const DpiWitness witness = embedding_witness(rho, "R", "Q", "E");
      rep.max_witness_error =
          std::max(rep.max_witness_error, std::abs(witness.gap - value));
      ++rep.nonmarkov_cases;
      break;
    }
  }

  if (n_states == 0) rep.min_dpi_gap = 0.0;
  rep.all_pass = rep.all_cp_tp && rep.max_reduction_distance <= 1e-8 &&
                 rep.min_dpi_gap >= -1e-9 && rep.max_witness_error <= 1e-8 &&
                 rep.nonmarkov_cases == n_states;

  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "theorem1 audit: states=%d isometries=%d\n"
                "  markov cases checked:      %d\n"
                "  non-markov cases checked:  %d\n"
                "  all reductions CP and TP:  %s\n"
                "  max reduction distance:    %.3e\n"
                "  min DPI gap (bits):        %.3e\n"
                "  max witness error (bits):  %.3e\n"
                "  verdict:                   %s\n",
                rep.n_states, rep.n_isometries, rep.markov_cases,
                rep.nonmarkov_cases, rep.all_cp_tp ? "yes" : "no",
                rep.max_reduction_distance, rep.min_dpi_gap,
                rep.max_witness_error, rep.all_pass ? "PASS" : "FAIL");
  rep.text = buf;
  return rep;
}

}  // namespace markovlab
