#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace ratchet {

/// Unnormalized 1-D complex DFT pair over a fixed length.
///
/// forward:  X_k = sum_j x_j e^{-2 pi i jk/N}
/// backward: x_j = sum_k X_k e^{+2 pi i jk/N}
///
/// Plans are cached per length for the process lifetime; transforms run
/// in place on the caller's buffer, so concurrent use is safe.
class SpectralTransform {
public:
    explicit SpectralTransform(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    void forward(std::span<std::complex<double>> data) const;
    void backward(std::span<std::complex<double>> data) const;

    struct Plans;

private:
    std::size_t n_;
    const Plans* plans_;
};

}  // namespace ratchet
