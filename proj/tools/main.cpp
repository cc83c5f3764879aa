#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "markovlab/io.hpp"

namespace {

using namespace markovlab;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MARKOVLAB_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

Isometry pinned_w() {
  // W|0> = (|00>+|11>)/sqrt(2), W|1> = (|01>+|10>)/sqrt(2)
  Mat w = Mat::Zero(4, 2);
  const double s = 1.0 / std::sqrt(2.0);
  w(0, 0) = s;
  w(3, 0) = s;
  w(1, 1) = s;
  w(2, 1) = s;
  return Isometry::make(w, LabelList{{"Q0", 2}},
                        LabelList{{"Q", 2}, {"E", 2}});
}

int run_check_markov(const std::string& path, const std::string& r,
                     const std::string& q, const std::string& e, double tol) {
  const MarkovVerdict v = is_markov(read_state(path), r, q, e, tol);
  std::printf("cmi=%.6f\n", v.cmi_value);
  if (v.is_markov) {
    std::printf("verdict: Markov (tol %.1e); Petz reconstruction distance "
                "%.3e\n",
                v.tolerance, v.recovery_distance.value_or(0.0));
    return 0;
  }
  std::printf("verdict: not Markov (tol %.1e)\n", v.tolerance);
  return 3;
}

int run_witness(const std::string& path, const std::string& r,
                const std::string& q, const std::string& e,
                const std::string& out) {
  const DpiWitness w = embedding_witness(read_state(path), r, q, e);
  std::printf("DPI violation magnitude: %.12g bits\n", w.gap);
  write_isometry(w.embedding, out);
  std::printf("embedding isometry written to %s\n", out.c_str());
  return 0;
}

int run_reduce(const std::string& state_path, const std::string& iso_path,
               const std::string& out, const std::string& r,
               const std::string& q, const std::string& e,
               const std::vector<std::string>& discard, double tol) {
  const LabeledState rho = read_state(state_path);
  const Isometry v = read_isometry(iso_path);
  const Channel c = reduced_dynamics(rho, r, q, e, v, discard, tol);
  write_channel(c, out);
  const ChannelReport rep = classify(c);
  std::printf("reduced channel written to %s (CP: %s, TP: %s)\n", out.c_str(),
              rep.is_cp ? "yes" : "no", rep.is_tp ? "yes" : "no");
  return 0;
}

int run_certify(const std::string& path, double tol) {
  const FamilyCertificate cert = family_certificate(read_family(path), tol);
  if (cert.markov) {
    std::printf("certificate: Markov\n");
    std::printf("  cmi = %.3e bits (tol %.1e)\n", cert.cmi_bits, tol);
    std::printf("  Petz reconstruction distance = %.3e\n",
                cert.recovery_distance.value_or(0.0));
    return 0;
  }
  std::printf("refusal: canonical extension is not Markov\n");
  std::printf("  cmi = %.6f bits (tol %.1e)\n", cert.cmi_bits, tol);
  if (cert.witness)
    std::printf("  embedding witness violation = %.6f bits\n",
                cert.witness->gap);
  std::printf("  %s\n", cert.note.c_str());
  return 3;
}

int run_revival(int steps, double tmax, const std::string& out) {
  if (steps < 2) throw GridError("need at least 2 steps");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] = tmax * i / (steps - 1);
  const ScenarioTrace trace = revival_trace(grid);
  emit_trace(trace, out);
  std::printf("trace written to %s (%d points, %zu revival interval(s))\n",
              out.c_str(), steps, trace.revival_intervals.size());
  for (const auto& [a, b] : trace.revival_intervals)
    std::printf("  revival: t in [%.6f, %.6f]\n", a, b);
  return 0;
}

int run_example(int which, std::uint64_t seed) {
  switch (which) {
    case 1: {
      const GalleryInstance inst =
          zero_discord_instance(2, 2, {0.5, 0.5}, nullptr, seed);
      const MarkovVerdict v = is_markov(inst.state, "R", "Q", "E");
      std::printf("zero-discord family: Markov: %s (cmi = %.3e); "
                  "Petz distance = %.3e\n",
                  v.is_markov ? "yes" : "no", v.cmi_value,
                  v.recovery_distance.value_or(0.0));
      return v.is_markov ? 0 : 3;
    }
    case 2: {
      const Mat rho0 = projector(basis_ket(2, 0));
      const Mat rho_plus = projector(basis_ket(2, 1));
      const GalleryInstance inst =
          counterexample_instance(rho0, rho_plus, identity(2) / 2.0, 0.5);
      const MarkovVerdict v = is_markov(inst.state, "R", "Q", "E");
      const DephaseResult deph = eigenbasis_dephase(inst.member, "Q");
      std::printf("zeta_RQE Markov: %s (cmi %s 1e-9); dephasing distance "
                  "p=0.5: %.10f (>0)\n",
                  v.is_markov ? "yes" : "no", v.cmi_value < 1e-9 ? "<" : ">=",
                  deph.distance);
      return v.is_markov && deph.distance > 0 ? 0 : 3;
    }
    case 3: {
      const Mat omega_m =
          tensor(identity(2) / 2.0, projector(basis_ket(2, 0)));
      const LabeledState omega =
          LabeledState::make(omega_m, LabelList{{"R", 2}, {"Q0", 2}});
      const GalleryInstance inst = entangled_markov_instance(pinned_w(), omega);
      const MarkovVerdict v = is_markov(inst.state, "R", "Q", "E");
      const LabeledState steered = steer(
          inst.state, projector(basis_ket(2, 0)), "R", {"Q", "E"});
      const double neg =
          entanglement(steered, {"Q"}, EntanglementMeasure::Negativity);
      const double neg_re = entanglement(marginal(inst.state, {"R", "E"}),
                                         {"R"}, EntanglementMeasure::Negativity);
      std::printf("entangled family: Markov: %s (cmi = %.3e); steered member "
                  "negativity = %.6f; rho_RE negativity = %.3e\n",
                  v.is_markov ? "yes" : "no", v.cmi_value, neg, neg_re);
      return v.is_markov ? 0 : 3;
    }
    case 4: {
      const LabelList re = {{"R2", 2}, {"E", 2}};
      const LabeledState product = LabeledState::make(
          tensor(random_state(LabelList{{"R2", 2}}, 2, seed).matrix(),
                 random_state(LabelList{{"E", 2}}, 2, seed + 1).matrix()),
          re);
      const LabeledState correlated = random_state(re, 2, seed + 2);
      const FactorizationReport a = factorization_audit(2, product);
      const FactorizationReport b = factorization_audit(2, correlated);
      std::printf("product R''E input:    cmi = %.3e, I(R'';E) = %.3e, "
                  "Markov: %s\n",
                  a.cmi_bits, a.env_mutual_info, a.markov ? "yes" : "no");
      std::printf("correlated R''E input: cmi = %.6f, I(R'';E) = %.6f, "
                  "Markov: %s\n",
                  b.cmi_bits, b.env_mutual_info, b.markov ? "yes" : "no");
      return a.markov && !b.markov ? 0 : 3;
    }
    default:
      return 2;
  }
}

int dispatch(int argc, char** argv) {
  CLI::App app{"quantum Markov-state toolkit"};
  app.require_subcommand(1);

  // check-markov
  std::string cm_state, cm_r = "R", cm_q = "Q", cm_e = "E";
  double cm_tol = kMarkovTol;
  auto* cm = app.add_subcommand("check-markov",
                                "test I(R;E|Q) = 0 and Petz recovery");
  cm->add_option("state", cm_state, "state JSON file")->required();
  cm->add_option("--r", cm_r, "reference label");
  cm->add_option("--q", cm_q, "system label");
  cm->add_option("--e", cm_e, "environment label");
  cm->add_option("--tol", cm_tol, "cmi tolerance in bits");

  // witness
  std::string wi_state, wi_r = "R", wi_q = "Q", wi_e = "E",
              wi_out = "witness_isometry.json";
  auto* wi = app.add_subcommand("witness",
                                "embedding DPI-violation witness");
  wi->add_option("state", wi_state, "state JSON file")->required();
  wi->add_option("--r", wi_r, "reference label");
  wi->add_option("--q", wi_q, "system label");
  wi->add_option("--e", wi_e, "environment label");
  wi->add_option("--out", wi_out, "isometry output path");

  // reduce
  std::string rd_state, rd_iso, rd_out = "channel.json", rd_r = "R",
              rd_q = "Q", rd_e = "E";
  std::vector<std::string> rd_discard;
  double rd_tol = kMarkovTol;
  auto* rd = app.add_subcommand("reduce", "CPTP reduced dynamics");
  rd->add_option("state", rd_state, "state JSON file")->required();
  rd->add_option("isometry", rd_iso, "isometry JSON file")->required();
  rd->add_option("--out", rd_out, "channel output path");
  rd->add_option("--r", rd_r, "reference label");
  rd->add_option("--q", rd_q, "system label");
  rd->add_option("--e", rd_e, "environment label");
  rd->add_option("--discard", rd_discard,
                 "output labels to trace out (default: all but first)");
  rd->add_option("--tol", rd_tol, "cmi tolerance in bits");

  // certify-family
  std::string cf_family;
  double cf_tol = kMarkovTol;
  auto* cf = app.add_subcommand("certify-family",
                                "canonical-extension certificate");
  cf->add_option("family", cf_family, "family JSON file")->required();
  cf->add_option("--tol", cf_tol, "cmi tolerance in bits");

  // demo
  auto* demo = app.add_subcommand("demo", "built-in scenarios");
  demo->require_subcommand(1);
  int steps = 201;
  double tmax = 6.2832;
  std::string trace_out = "trace.csv";
  auto* rev = demo->add_subcommand("revival", "entanglement revival trace");
  rev->add_option("--steps", steps, "grid points");
  rev->add_option("--tmax", tmax, "final time");
  rev->add_option("--out", trace_out, "CSV output path")->required();
  std::uint64_t demo_seed = default_seed();
  std::vector<CLI::App*> examples;
  for (int i = 1; i <= 4; ++i) {
    auto* ex = demo->add_subcommand("example" + std::to_string(i),
                                    "gallery instance " + std::to_string(i));
    ex->add_option("--seed", demo_seed, "random seed");
    examples.push_back(ex);
  }

  // audit
  auto* audit = app.add_subcommand("audit", "randomized theorem audits");
  audit->require_subcommand(1);
  int n_states = 20, n_isos = 20;
  std::uint64_t audit_seed = default_seed();
  auto* t1 = audit->add_subcommand("theorem1", "equivalence audit");
  t1->add_option("--states", n_states, "states per side");
  t1->add_option("--isometries", n_isos, "isometries per Markov state");
  t1->add_option("--seed", audit_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  if (cm->parsed()) return run_check_markov(cm_state, cm_r, cm_q, cm_e, cm_tol);
  if (wi->parsed()) return run_witness(wi_state, wi_r, wi_q, wi_e, wi_out);
  if (rd->parsed())
    return run_reduce(rd_state, rd_iso, rd_out, rd_r, rd_q, rd_e, rd_discard,
                      rd_tol);
  if (cf->parsed()) return run_certify(cf_family, cf_tol);
  if (rev->parsed()) return run_revival(steps, tmax, trace_out);
  for (int i = 0; i < 4; ++i)
    if (examples[static_cast<std::size_t>(i)]->parsed())
      return run_example(i + 1, demo_seed);
  if (t1->parsed()) {
    const Theorem1Report rep = theorem1_audit(n_states, n_isos, audit_seed);
    std::fputs(rep.text.c_str(), stdout);
    return rep.all_pass ? 0 : 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const markovlab::NotMarkov& err) {
    std::fprintf(stderr, "%s\n", err.what());
    return 3;
  } catch (const markovlab::Error& err) {
    std::fprintf(stderr, "%s\n", err.what());
    switch (err.category()) {
      case markovlab::ErrorCategory::Io:
        return 1;
      case markovlab::ErrorCategory::Validation:
        return 2;
      case markovlab::ErrorCategory::Verdict:
        return 3;
    }
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
