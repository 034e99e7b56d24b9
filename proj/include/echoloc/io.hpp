#pragma once

#include <string>
#include <vector>

#include "echoloc/counting.hpp"
#include "echoloc/graph_spectrum.hpp"
#include "echoloc/inversion.hpp"

namespace echoloc {

// All emitted floats use 17 significant digits so byte-identical reruns and
// lossless round-trips hold everywhere.
std::string fmt_double(double v);
std::string json_escape(const std::string& s);

// Counting-function JSON schema:
// {"model": str, "point": [..], "cutoff": f,
//  "jumps": [{"lambda": f, "weight": f}], "suppressed": [f]}
std::string counting_to_json(const CountingFunction& cf);
CountingFunction counting_from_json(const std::string& text);

// CSV alternative: header `lambda,weight`, one jump per row.
std::string counting_to_csv(const CountingFunction& cf);

std::string report_to_json(const LocationReport& rep);

// One JSON object per failing graph (streamed as JSON lines):
// {"graph6": str, "pairs": [[u,v]], "orbits": [[..]]}
std::string failure_to_json(const std::string& graph6,
                            const CospectralityReport& rep);

// Write-all-or-nothing: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

} // namespace echoloc
