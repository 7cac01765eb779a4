#include "grt/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace grt {

namespace {
// FFTW planning is not thread-safe; execution of a fresh plan on its own
// buffer is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}
} // namespace

void fft_nd(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (data.size() != total) throw std::invalid_argument("fft_nd: size mismatch");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fft_nd: planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

void fft_1d(std::vector<std::complex<double>>& row, int sign) {
  std::vector<int> dims{static_cast<int>(row.size())};
  fft_nd(row, dims, sign);
}

} // namespace grt
