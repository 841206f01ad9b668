// Thin FFTW3 wrapper: cached 1D plans, planner mutex, centered-lattice helpers.
#pragma once

#include "dlab/common.hpp"

namespace dlab {

// In-place DFT of length n on data; sign = -1 is the e^{-2pi i pk/n} kernel
// (FFTW_FORWARD), sign = +1 the e^{+2pi i pk/n} kernel.  No normalization.
void fft_raw(cplx* data, int n, int sign);

// Centered forward transform: out[k] = w * sum_p in[p] e^{+2pi i pk/n} with
// p,k signed in [-n/2, n/2) stored at offset n/2.  In-place.
void fft_centered(cplx* data, int n, int sign, double weight);

}  // namespace dlab
