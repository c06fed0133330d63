#pragma once

namespace gtsp {

/// Selects the serial reference path or the OpenMP kernel. Both produce
/// identical results; the serial path is what tests compare against.
enum class Execution { serial, parallel };

/// Threads OpenMP will use for a parallel region (1 without OpenMP).
int max_threads();

}  // namespace gtsp
