#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "markovlab/io.hpp"

namespace py = pybind11;
using namespace markovlab;

namespace {

using PyLabels = std::vector<std::pair<std::string, Eigen::Index>>;

LabelList to_labels(const PyLabels& labels) {
  LabelList out;
  for (const auto& [name, dim] : labels) out.push_back({name, dim});
  return out;
}

PyLabels from_labels(const LabelList& labels) {
  PyLabels out;
  for (const auto& l : labels) out.emplace_back(l.name, l.dim);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "quantum Markov-state toolkit";

  static py::exception<Error> base_exc(m, "MarkovlabError");
  static py::exception<NotMarkov> not_markov_exc(m, "NotMarkovError",
                                                 base_exc.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotMarkov& e) {
      PyErr_SetString(not_markov_exc.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base_exc.ptr(), e.what());
    }
  });

  py::class_<LabeledState>(m, "LabeledState")
      .def_static(
          "make",
          [](const Mat& matrix, const PyLabels& labels) {
            return LabeledState::make(matrix, to_labels(labels));
          },
          py::arg("matrix"), py::arg("labels"))
      .def_property_readonly("matrix",
                             [](const LabeledState& s) { return s.matrix(); })
      .def_property_readonly(
          "labels", [](const LabeledState& s) { return from_labels(s.labels()); })
      .def_property_readonly("dim", &LabeledState::dim)
      .def_property_readonly("renormalized", &LabeledState::renormalized);

  m.def("marginal", &marginal, py::arg("state"), py::arg("keep"));
  m.def("permuted", &permuted, py::arg("state"), py::arg("new_order"));
  m.def("entropy", &entropy);
  m.def("mutual_information", &mutual_information, py::arg("state"),
        py::arg("part_a"), py::arg("part_b"));
  m.def("cmi", &cmi, py::arg("state"), py::arg("r"), py::arg("q"),
        py::arg("e"));

  py::enum_<EntanglementMeasure>(m, "EntanglementMeasure")
      .value("NEGATIVITY", EntanglementMeasure::Negativity)
      .value("CONCURRENCE_2Q", EntanglementMeasure::Concurrence2q);
  m.def("entanglement", &entanglement, py::arg("state"), py::arg("cut"),
        py::arg("measure") = EntanglementMeasure::Negativity);

  m.def(
      "eigenbasis_dephase",
      [](const LabeledState& s, const std::string& side) {
        const DephaseResult r = eigenbasis_dephase(s, side);
        return py::make_tuple(r.state, r.distance);
      },
      py::arg("state"), py::arg("side"),
      "returns (dephased_state, trace_distance)");

  m.def(
      "random_state",
      [](const PyLabels& labels, Eigen::Index rank, std::uint64_t seed) {
        return random_state(to_labels(labels), rank, seed);
      },
      py::arg("labels"), py::arg("rank"), py::arg("seed"));

  py::class_<Isometry>(m, "Isometry")
      .def_static(
          "make",
          [](const Mat& matrix, const PyLabels& in, const PyLabels& out) {
            return Isometry::make(matrix, to_labels(in), to_labels(out));
          },
          py::arg("matrix"), py::arg("in_labels"), py::arg("out_labels"))
      .def_property_readonly("matrix",
                             [](const Isometry& v) { return v.matrix(); })
      .def_property_readonly(
          "in_labels", [](const Isometry& v) { return from_labels(v.in_labels()); })
      .def_property_readonly("out_labels", [](const Isometry& v) {
        return from_labels(v.out_labels());
      });

  py::class_<Channel>(m, "Channel")
      .def_static(
          "from_kraus",
          [](std::vector<Mat> kraus, const PyLabels& in, const PyLabels& out) {
            return Channel::from_kraus(std::move(kraus), to_labels(in),
                                       to_labels(out));
          },
          py::arg("kraus"), py::arg("in_labels"), py::arg("out_labels"))
      .def_static(
          "from_choi",
          [](const Mat& choi, const PyLabels& in, const PyLabels& out) {
            return Channel::from_choi(choi, to_labels(in), to_labels(out));
          },
          py::arg("choi"), py::arg("in_labels"), py::arg("out_labels"))
      .def_property_readonly("choi", [](const Channel& c) { return c.choi(); })
      .def_property_readonly("kraus",
                             [](const Channel& c) { return c.kraus(); })
      .def("apply_matrix", &Channel::apply_matrix)
      .def_property_readonly(
          "in_labels", [](const Channel& c) { return from_labels(c.in_labels()); })
      .def_property_readonly("out_labels", [](const Channel& c) {
        return from_labels(c.out_labels());
      });

  py::class_<ChannelReport>(m, "ChannelReport")
      .def_readonly("is_cp", &ChannelReport::is_cp)
      .def_readonly("is_tp", &ChannelReport::is_tp)
      .def_readonly("min_choi_eig", &ChannelReport::min_choi_eig)
      .def_readonly("tp_residual", &ChannelReport::tp_residual);
  m.def("classify", &classify);

  m.def("apply", &apply, py::arg("channel"), py::arg("state"),
        py::arg("target"));
  m.def("compose", &compose, py::arg("f"), py::arg("g"));
  m.def("isometry_channel", &isometry_channel, py::arg("isometry"),
        py::arg("discard") = NameList{});
  m.def(
      "random_isometry",
      [](const PyLabels& in, const PyLabels& out, std::uint64_t seed) {
        return random_isometry(to_labels(in), to_labels(out), seed);
      },
      py::arg("in_labels"), py::arg("out_labels"), py::arg("seed"));
  m.def("partial_swap", &partial_swap, py::arg("theta"), py::arg("d") = 2);

  py::class_<MarkovVerdict>(m, "MarkovVerdict")
      .def_readonly("cmi_value", &MarkovVerdict::cmi_value)
      .def_readonly("is_markov", &MarkovVerdict::is_markov)
      .def_readonly("tolerance", &MarkovVerdict::tolerance)
      .def_readonly("recovery_distance", &MarkovVerdict::recovery_distance);
  py::class_<DpiWitness>(m, "DpiWitness")
      .def_readonly("embedding", &DpiWitness::embedding)
      .def_readonly("gap", &DpiWitness::gap);
  py::class_<DpiGapResult>(m, "DpiGapResult")
      .def_readonly("channel_cptp", &DpiGapResult::channel_cptp)
      .def_readonly("gap_bits", &DpiGapResult::gap_bits)
      .def_readonly("diagnostic", &DpiGapResult::diagnostic);
  py::class_<ReductionCheck>(m, "ReductionCheck")
      .def_readonly("ok", &ReductionCheck::ok)
      .def_readonly("distance", &ReductionCheck::distance);

  m.def("petz_recovery", &petz_recovery, py::arg("rho_qe"), py::arg("rho_q"));
  m.def("is_markov", &is_markov, py::arg("state"), py::arg("r"), py::arg("q"),
        py::arg("e"), py::arg("tol") = kMarkovTol);
  m.def("reduced_dynamics", &reduced_dynamics, py::arg("state"), py::arg("r"),
        py::arg("q"), py::arg("e"), py::arg("isometry"),
        py::arg("discard") = NameList{}, py::arg("tol") = kMarkovTol);
  m.def("dpi_gap", &dpi_gap, py::arg("state_rq"), py::arg("r"), py::arg("q"),
        py::arg("channel"));
  m.def("embedding_witness", &embedding_witness, py::arg("state"),
        py::arg("r"), py::arg("q"), py::arg("e"));
  m.def("verify_reduction", &verify_reduction, py::arg("state"), py::arg("r"),
        py::arg("q"), py::arg("e"), py::arg("isometry"), py::arg("channel"),
        py::arg("tol") = kMarkovTol);

  m.def("steer", &steer, py::arg("state"), py::arg("effect"), py::arg("ref"),
        py::arg("keep"));
  m.def("default_frame",
        [](Eigen::Index d) { return default_frame(d).elements; });

  py::class_<FamilySpec>(m, "FamilySpec")
      .def_static("from_generators", &FamilySpec::from_generators)
      .def_static("from_postmap", &FamilySpec::from_postmap)
      .def_readonly("generators", &FamilySpec::generators)
      .def_readonly("postmap", &FamilySpec::postmap);
  m.def("canonical_tripartite", &canonical_tripartite);

  py::class_<FamilyCertificate>(m, "FamilyCertificate")
      .def_readonly("markov", &FamilyCertificate::markov)
      .def_readonly("state", &FamilyCertificate::state)
      .def_readonly("cmi_bits", &FamilyCertificate::cmi_bits)
      .def_readonly("recovery_distance", &FamilyCertificate::recovery_distance)
      .def_readonly("witness", &FamilyCertificate::witness)
      .def_readonly("note", &FamilyCertificate::note);
  m.def("family_certificate", &family_certificate, py::arg("family"),
        py::arg("tol") = kMarkovTol);

  py::class_<GalleryInstance>(m, "GalleryInstance")
      .def_readonly("family", &GalleryInstance::family)
      .def_readonly("state", &GalleryInstance::state)
      .def_readonly("member", &GalleryInstance::member);
  m.def(
      "zero_discord_instance",
      [](Eigen::Index n, Eigen::Index d_env, const std::vector<double>& probs,
         std::optional<std::vector<Mat>> env_states, std::uint64_t seed) {
        return zero_discord_instance(n, d_env, probs,
                                     env_states ? &*env_states : nullptr,
                                     seed);
      },
      py::arg("n"), py::arg("d_env"), py::arg("probs"),
      py::arg("env_states") = std::nullopt, py::arg("seed") = 0);
  m.def("counterexample_instance", &counterexample_instance, py::arg("rho0"),
        py::arg("rho_plus"), py::arg("rho2"), py::arg("p") = 0.5);
  m.def("zeta_member", &zeta_member, py::arg("instance"), py::arg("p"));
  m.def("entangled_markov_instance", &entangled_markov_instance,
        py::arg("isometry"), py::arg("omega"));
  m.def("invertible_dilation", &invertible_dilation, py::arg("d_q0"),
        py::arg("sigma_spectrum"), py::arg("seed") = 0);

  py::class_<FactorizationReport>(m, "FactorizationReport")
      .def_readonly("cmi_bits", &FactorizationReport::cmi_bits)
      .def_readonly("env_mutual_info", &FactorizationReport::env_mutual_info)
      .def_readonly("markov", &FactorizationReport::markov)
      .def_readonly("recovery_distance",
                    &FactorizationReport::recovery_distance);
  m.def("factorization_audit", &factorization_audit, py::arg("d_q"),
        py::arg("env_rqe"));

  py::class_<ScenarioTrace>(m, "ScenarioTrace")
      .def_readonly("times", &ScenarioTrace::times)
      .def_readonly("concurrence_rq", &ScenarioTrace::concurrence_rq)
      .def_readonly("mutual_info_rq", &ScenarioTrace::mutual_info_rq)
      .def_readonly("cmi_re_given_q", &ScenarioTrace::cmi_re_given_q)
      .def_readonly("revival_intervals", &ScenarioTrace::revival_intervals)
      .def_readonly("in_revival", &ScenarioTrace::in_revival);
  m.def("revival_trace", &revival_trace, py::arg("t_grid"),
        py::arg("env_dim") = 2);

  py::class_<Theorem1Report>(m, "Theorem1Report")
      .def_readonly("n_states", &Theorem1Report::n_states)
      .def_readonly("n_isometries", &Theorem1Report::n_isometries)
      .def_readonly("markov_cases", &Theorem1Report::markov_cases)
      .def_readonly("nonmarkov_cases", &Theorem1Report::nonmarkov_cases)
      .def_readonly("max_reduction_distance",
                    &Theorem1Report::max_reduction_distance)
      .def_readonly("min_dpi_gap", &Theorem1Report::min_dpi_gap)
      .def_readonly("max_witness_error", &Theorem1Report::max_witness_error)
      .def_readonly("all_cp_tp", &Theorem1Report::all_cp_tp)
      .def_readonly("all_pass", &Theorem1Report::all_pass)
      .def_readonly("text", &Theorem1Report::text);
  m.def("theorem1_audit", &theorem1_audit, py::arg("n_states") = 20,
        py::arg("n_isometries") = 20, py::arg("seed") = 0);

  m.def("read_state", &read_state);
  m.def("write_state", &write_state, py::arg("state"), py::arg("path"));
  m.def("read_channel", &read_channel);
  m.def("write_channel", &write_channel, py::arg("channel"), py::arg("path"));
  m.def("read_isometry", &read_isometry);
  m.def("write_isometry", &write_isometry, py::arg("isometry"),
        py::arg("path"));
  m.def("read_family", &read_family);
  m.def("write_family", &write_family, py::arg("family"), py::arg("path"));
  m.def("emit_trace", &emit_trace, py::arg("trace"), py::arg("path"));
}
