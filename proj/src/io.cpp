#include "markovlab/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace markovlab {

namespace {

using nlohmann::json;

json labels_to_json(const LabelList& labels) {
  json out = json::array();
  for (const auto& l : labels)
    out.push_back({{"label", l.name}, {"dim", l.dim}});
  return out;
}

LabelList labels_from_json(const json& j) {
  LabelList labels;
  for (const auto& entry : j)
    labels.push_back({entry.at("label").get<std::string>(),
                      entry.at("dim").get<Eigen::Index>()});
  return labels;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw IoError("empty matrix");
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw IoError("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& cell = row.at(static_cast<std::size_t>(k));
      if (!cell.is_array() || cell.size() != 2)
        throw IoError("matrix entries must be [re, im] pairs");
      m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& err) {
    throw IoError(path + ": " + err.what());
  }
}

void store(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

// Typed accessor so missing/mistyped fields surface as IoError, not crashes.
const json& field(const json& j, const char* name, const std::string& path) {
  auto it = j.find(name);
  if (it == j.end()) throw IoError(path + ": missing field '" + name + "'");
  return *it;
}

}  // namespace

LabeledState read_state(const std::string& path) {
  const json j = load(path);
  try {
    return LabeledState::make(matrix_from_json(field(j, "matrix", path)),
                              labels_from_json(field(j, "systems", path)));
  } catch (const json::exception& err) {
    throw IoError(path + ": " + err.what());
  }
}

void write_state(const LabeledState& s, const std::string& path) {
  store({{"systems", labels_to_json(s.labels())},
         {"matrix", matrix_to_json(s.matrix())}},
        path);
}

Channel read_channel(const std::string& path) {
  const json j = load(path);
  try {
    LabelList in = labels_from_json(field(j, "in_systems", path));
    LabelList out = labels_from_json(field(j, "out_systems", path));
    const std::string repr = field(j, "repr", path).get<std::string>();
    if (repr == "kraus") {
      std::vector<Mat> kraus;
      for (const auto& k : field(j, "kraus", path))
        kraus.push_back(matrix_from_json(k));
      return Channel::from_kraus(std::move(kraus), std::move(in),
                                 std::move(out));
    }
    if (repr == "choi")
      return Channel::from_choi(matrix_from_json(field(j, "choi", path)),
                                std::move(in), std::move(out));
    throw IoError(path + ": unknown repr '" + repr + "'");
  } catch (const json::exception& err) {
    throw IoError(path + ": " + err.what());
  }
}

void write_channel(const Channel& c, const std::string& path) {
  json j = {{"in_systems", labels_to_json(c.in_labels())},
            {"out_systems", labels_to_json(c.out_labels())}};
  if (c.has_kraus()) {
    j["repr"] = "kraus";
    json ops = json::array();
    for (const auto& k : c.kraus()) ops.push_back(matrix_to_json(k));
    j["kraus"] = std::move(ops);
  } else {
    j["repr"] = "choi";
    j["choi"] = matrix_to_json(c.choi());
  }
  store(j, path);
}

Isometry read_isometry(const std::string& path) {
  const json j = load(path);
  try {
    return Isometry::make(matrix_from_json(field(j, "matrix", path)),
                          labels_from_json(field(j, "in_systems", path)),
                          labels_from_json(field(j, "out_systems", path)));
  } catch (const json::exception& err) {
    throw IoError(path + ": " + err.what());
  }
}

void write_isometry(const Isometry& v, const std::string& path) {
  store({{"in_systems", labels_to_json(v.in_labels())},
         {"out_systems", labels_to_json(v.out_labels())},
         {"matrix", matrix_to_json(v.matrix())}},
        path);
}

FamilySpec read_family(const std::string& path) {
  const json j = load(path);
  try {
    const std::string type = field(j, "type", path).get<std::string>();
    if (type == "generators") {
      std::vector<LabeledState> gens;
      for (const auto& g : field(j, "generators", path))
        gens.push_back(
            LabeledState::make(matrix_from_json(field(g, "matrix", path)),
                               labels_from_json(field(g, "systems", path))));
      return FamilySpec::from_generators(std::move(gens));
    }
    if (type == "postmap") {
      const json& p = field(j, "postmap", path);
      LabelList in = labels_from_json(field(p, "in_systems", path));
      LabelList out = labels_from_json(field(p, "out_systems", path));
      const std::string repr = field(p, "repr", path).get<std::string>();
      Channel c = [&] {
        if (repr == "kraus") {
          std::vector<Mat> kraus;
          for (const auto& k : field(p, "kraus", path))
            kraus.push_back(matrix_from_json(k));
          return Channel::from_kraus(std::move(kraus), std::move(in),
                                     std::move(out));
        }
        if (repr == "choi")
          return Channel::from_choi(matrix_from_json(field(p, "choi", path)),
                                    std::move(in), std::move(out));
        throw IoError(path + ": unknown repr '" + repr + "'");
      }();
      return FamilySpec::from_postmap(std::move(c));
    }
    throw IoError(path + ": unknown family type '" + type + "'");
  } catch (const json::exception& err) {
    throw IoError(path + ": " + err.what());
  }
}

void write_family(const FamilySpec& f, const std::string& path) {
  json j;
  if (f.postmap) {
    j["type"] = "postmap";
    json p = {{"in_systems", labels_to_json(f.postmap->in_labels())},
              {"out_systems", labels_to_json(f.postmap->out_labels())}};
    if (f.postmap->has_kraus()) {
      p["repr"] = "kraus";
      json ops = json::array();
      for (const auto& k : f.postmap->kraus())
        ops.push_back(matrix_to_json(k));
      p["kraus"] = std::move(ops);
    } else {
      p["repr"] = "choi";
      p["choi"] = matrix_to_json(f.postmap->choi());
    }
    j["postmap"] = std::move(p);
  } else {
    j["type"] = "generators";
    json gens = json::array();
    for (const auto& g : f.generators)
      gens.push_back({{"systems", labels_to_json(g.labels())},
                      {"matrix", matrix_to_json(g.matrix())}});
    j["generators"] = std::move(gens);
  }
  store(j, path);
}

void emit_trace(const ScenarioTrace& trace, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw IoError("cannot open " + path + " for writing");
  std::fputs("t,concurrence_RQ,mutual_info_RQ,cmi_RE_given_Q,in_revival\n",
             out);
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    std::fprintf(out, "%.12g,%.12g,%.12g,%.12g,%d\n", trace.times[i],
                 trace.concurrence_rq[i], trace.mutual_info_rq[i],
                 trace.cmi_re_given_q[i], trace.in_revival[i] ? 1 : 0);
  if (std::fclose(out) != 0) throw IoError("write failed for " + path);
}

}  // namespace markovlab
