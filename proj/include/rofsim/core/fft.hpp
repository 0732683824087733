/*
 * Copyright (c) 2026, rofsim authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "rofsim/core/waveform.hpp"

namespace rofsim {

namespace detail {

// FFTW planning is not thread-safe; execution with fftw_execute_dft is. Plans are
// created once per (size, direction) with FFTW_ESTIMATE so the chosen algorithm, and
// therefore every rounding, is the same in every process.
class FftPlanCache {
public:
    static FftPlanCache& instance() {
        static FftPlanCache cache;
        return cache;
    }

    fftw_plan plan(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<cplx> a(n), b(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    FftPlanCache(const FftPlanCache&) = delete;
    FftPlanCache& operator=(const FftPlanCache&) = delete;

private:
    FftPlanCache() = default;
    ~FftPlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
    fftw_plan p = FftPlanCache::instance().plan(in.size(), sign);
    // c2c out-of-place transforms preserve their input.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace detail

/// Unnormalized forward DFT.
inline std::vector<cplx> fft(std::span<const cplx> x) {
    std::vector<cplx> out(x.size());
    if (!x.empty()) detail::execute(x, out, FFTW_FORWARD);
    return out;
}

/// Inverse DFT normalized by 1/N, so ifft(fft(x)) == x.
inline std::vector<cplx> ifft(std::span<const cplx> X) {
    std::vector<cplx> out(X.size());
    if (X.empty()) return out;
    detail::execute(X, out, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(X.size());
    for (auto& v : out) v *= inv;
    return out;
}

/// Baseband frequency of DFT bin k for an n-point transform at rate fs.
inline double bin_frequency(std::size_t k, std::size_t n, double fs) {
    const auto kk = static_cast<long long>(k);
    const auto nn = static_cast<long long>(n);
    const long long signed_k = (kk < (nn + 1) / 2) ? kk : kk - nn;
    return static_cast<double>(signed_k) * fs / static_cast<double>(n);
}

/// Bin index nearest to baseband frequency f (wrapped into [0, n)).
inline std::size_t frequency_bin(double f, std::size_t n, double fs) {
    const auto nn = static_cast<long long>(n);
    long long k = std::llround(f * static_cast<double>(n) / fs);
    k %= nn;
    if (k < 0) k += nn;
    return static_cast<std::size_t>(k);
}

/// Applies a frequency response (evaluated at each bin's baseband frequency) to w.
template <class Response>
ComplexWaveform apply_frequency_response(const ComplexWaveform& w, Response&& h) {
    auto X = fft(w.samples);
    const std::size_t n = X.size();
    for (std::size_t k = 0; k < n; ++k) X[k] *= h(bin_frequency(k, n, w.sample_rate));
    ComplexWaveform out = w.like(0);
    out.samples = ifft(X);
    return out;
}

}  // namespace rofsim
