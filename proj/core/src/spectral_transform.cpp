#include "ratchet/spectral_transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ratchet {

// FFTW's planner is not reentrant; fftw_execute_dft on an existing plan is.
// Plans live for the process lifetime so SpectralTransform stays trivially
// copyable and usable from any thread.
struct SpectralTransform::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

const SpectralTransform::Plans* cached_plans(std::size_t n) {
    static std::map<std::size_t, std::unique_ptr<SpectralTransform::Plans>> cache;
    std::lock_guard lock(planner_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return it->second.get();

    const int len = static_cast<int>(n);
    auto* scratch = fftw_alloc_complex(n);
    auto plans = std::make_unique<SpectralTransform::Plans>();
    // ESTIMATE keeps plan selection independent of timing, so results are
    // bit-reproducible run to run.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->forward = fftw_plan_dft_1d(len, scratch, scratch, FFTW_FORWARD, flags);
    plans->backward = fftw_plan_dft_1d(len, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    if (plans->forward == nullptr || plans->backward == nullptr) {
        throw std::runtime_error("fftw planning failed");
    }
    auto* raw = plans.get();
    cache.emplace(n, std::move(plans));
    return raw;
}

fftw_complex* as_fftw(std::span<std::complex<double>> data) {
    return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

SpectralTransform::SpectralTransform(std::size_t n) : n_(n), plans_(cached_plans(n)) {}

void SpectralTransform::forward(std::span<std::complex<double>> data) const {
    if (data.size() != n_) throw std::invalid_argument("transform length mismatch");
    fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
}

void SpectralTransform::backward(std::span<std::complex<double>> data) const {
    if (data.size() != n_) throw std::invalid_argument("transform length mismatch");
    fftw_execute_dft(plans_->backward, as_fftw(data), as_fftw(data));
}

}  // namespace ratchet
