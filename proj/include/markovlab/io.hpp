#ifndef MARKOVLAB_IO_HPP
#define MARKOVLAB_IO_HPP

#include <string>

#include "markovlab/gallery.hpp"

namespace markovlab {

// JSON artifact formats. Complex entries are explicit [re, im] pairs,
// row-major; doubles round-trip bit-exactly.
//
//   state:    {"systems": [{"label","dim"}...], "matrix": [[[re,im]...]...]}
//   channel:  {"in_systems", "out_systems", "repr": "kraus"|"choi", ...}
//   isometry: {"in_systems", "out_systems", "matrix"}
//   family:   {"type": "generators"|"postmap", ...}

LabeledState read_state(const std::string& path);
void write_state(const LabeledState& s, const std::string& path);

Channel read_channel(const std::string& path);
void write_channel(const Channel& c, const std::string& path);

Isometry read_isometry(const std::string& path);
void write_isometry(const Isometry& v, const std::string& path);

FamilySpec read_family(const std::string& path);
void write_family(const FamilySpec& f, const std::string& path);

/// CSV with header t,concurrence_RQ,mutual_info_RQ,cmi_RE_given_Q,in_revival
/// and 12-significant-digit decimals; one row per grid point.
void emit_trace(const ScenarioTrace& trace, const std::string& path);

}  // namespace markovlab

#endif
