#include "sfi/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace sfi {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
  static auto* cache = new std::map<std::pair<int, int>, PlanPair>();
  return *cache;
}

PlanPair& plans_for(int dim, int n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find({dim, n});
  if (it != cache.end()) return it->second;

  std::size_t total = 1;
  int dims[3] = {n, n, n};
  for (int d = 0; d < dim; ++d) total *= std::size_t(n);
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  PlanPair p;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft(dim, dims, buf, buf, FFTW_FORWARD, flags);
  p.bwd = fftw_plan_dft(dim, dims, buf, buf, FFTW_BACKWARD, flags);
  fftw_free(buf);
  return cache.emplace(std::make_pair(dim, n), p).first->second;
}

}  // namespace

void dft_forward(int dim, int n, std::complex<double>* data) {
  auto& p = plans_for(dim, n);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p.fwd, d, d);
}

void dft_backward(int dim, int n, std::complex<double>* data) {
  auto& p = plans_for(dim, n);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p.bwd, d, d);
}

}  // namespace sfi
