// types.hpp - shared scalar and index types
#pragma once

#include <complex>
#include <cstdint>

namespace qedtd {

using cplx = std::complex<double>;

// Execution policy for the field-update kernels. Serial is the reference
// implementation; OpenMP must produce bit-identical results (verified in
// the unit tests) so either can be used interchangeably.
enum class ExecPolicy { Serial, OpenMP };

// Which oscillator-field system drives the source: the integral-source
// form ("eq3" on the CLI) or the simplified dipole-current form ("eq4",
// the default).
enum class CouplingModel { IntegralSource, DipoleCurrent };

} // namespace qedtd
