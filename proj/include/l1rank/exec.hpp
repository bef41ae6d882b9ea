#pragma once

namespace l1rank {

// Selects between the OpenMP kernel and its serial reference. Both produce
// identical results; the serial path is kept for testing and benchmarking.
enum class Exec { serial, parallel };

// Sets the OpenMP thread count; values <= 0 leave the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace l1rank
