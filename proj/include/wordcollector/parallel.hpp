#pragma once

namespace wwc {

// Serial runs the same kernel single-threaded; results are identical by
// construction, so Serial doubles as the reference path in tests.
enum class Execution { Serial, Parallel };

}  // namespace wwc
