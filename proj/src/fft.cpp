#include "critgabor/fft.hpp"

#include <fftw3.h>

#include <stdexcept>

namespace critgabor {

void fft_inplace(std::vector<cplx>& data, int sign) {
  if (sign != -1 && sign != 1) throw std::invalid_argument("fft sign must be -1 or +1");
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  // FFTW_ESTIMATE planning does not touch the data and is cheap at these sizes.
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf,
                                    sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace critgabor
