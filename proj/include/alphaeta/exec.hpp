#pragma once

namespace aeta {

/// Selects the serial reference loop or the OpenMP kernel. Both produce
/// bit-identical results; the serial path is kept as the reference the
/// tests and the benchmark compare against.
enum class ExecMode { serial, openmp };

}  // namespace aeta
