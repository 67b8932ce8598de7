#include "dnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace dnls::fft {
namespace {

using Key = std::tuple<std::size_t, std::size_t, int, bool>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t rows, std::size_t cols, int sign, bool in_place) {
    std::lock_guard lock(mutex_);
    const Key key{rows, cols, sign, in_place};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    // Planner needs scratch arrays; FFTW_ESTIMATE leaves them untouched.
    const std::size_t total = rows * cols;
    std::vector<std::complex<double>> a(total), b(in_place ? 0 : total);
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = in_place ? in : reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan =
        rows == 1 ? fftw_plan_dft_1d(static_cast<int>(cols), in, out, sign, flags)
                  : fftw_plan_dft_2d(static_cast<int>(rows),
                                     static_cast<int>(cols), in, out, sign,
                                     flags);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::size_t rows, std::size_t cols, int sign,
             std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) {
  if (in.size() != rows * cols || out.size() != rows * cols)
    throw std::invalid_argument("fft: size mismatch");
  if (rows * cols == 0) return;
  const bool in_place = in.data() == out.data();
  fftw_plan plan = cache().get(rows, cols, sign, in_place);
  // Out-of-place complex transforms preserve their input.
  auto* src = reinterpret_cast<fftw_complex*>(
      const_cast<std::complex<double>*>(in.data()));
  fftw_execute_dft(plan, src, reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) {
  execute(1, in.size(), FFTW_FORWARD, in, out);
}

void backward(std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out) {
  execute(1, in.size(), FFTW_BACKWARD, in, out);
}

void forward_2d(std::size_t rows, std::size_t cols,
                std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out) {
  execute(rows, cols, FFTW_FORWARD, in, out);
}

void backward_2d(std::size_t rows, std::size_t cols,
                 std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  execute(rows, cols, FFTW_BACKWARD, in, out);
}

}  // namespace dnls::fft
