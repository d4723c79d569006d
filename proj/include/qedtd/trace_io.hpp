// trace_io.hpp - CSV serialization of population traces
#pragma once

#include <string>

#include "qedtd/oscillator.hpp"

namespace qedtd {

// Schema: t_s,Re_P,Im_P,abs_P_sq with full double precision. Identical
// configurations produce byte-identical files.
void write_trace_csv(const std::string& path, const PopulationTrace& trace);
PopulationTrace read_trace_csv(const std::string& path);

} // namespace qedtd
