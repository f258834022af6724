#pragma once

namespace mhd2d {

/// Worker count for deterministic data-parallel loops: the MHD2D_THREADS
/// environment variable when set, else the hardware concurrency.
int worker_count();

}  // namespace mhd2d
