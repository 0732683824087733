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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rofsim/core/waveform.hpp"

namespace rofsim {

/// Gray-mapped square QAM with unit average symbol energy.
class QamMapper {
public:
    explicit QamMapper(int order) : order_(order) {
        if (order != 4 && order != 16 && order != 64)
            throw InvalidArgument("QAM order " + std::to_string(order) +
                                  " unsupported (expected 4, 16 or 64)");
        bits_ = static_cast<int>(std::lround(std::log2(order)));
        levels_ = 1 << (bits_ / 2);
        scale_ = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);
    }

    int order() const noexcept { return order_; }
    int bits_per_symbol() const noexcept { return bits_; }

    cplx map(std::span<const std::uint8_t> bits) const {
        const int half = bits_ / 2;
        return {level(bits.subspan(0, half)) * scale_,
                level(bits.subspan(static_cast<std::size_t>(half), half)) * scale_};
    }

    /// Hard decision; appends bits_per_symbol() bits to out and returns the decided point.
    cplx demap(cplx y, std::vector<std::uint8_t>& out) const {
        const int half = bits_ / 2;
        const int i = decide(y.real() / scale_);
        const int q = decide(y.imag() / scale_);
        emit(i, half, out);
        emit(q, half, out);
        return {(2.0 * i - (levels_ - 1)) * scale_, (2.0 * q - (levels_ - 1)) * scale_};
    }

    /// Nearest constellation point without emitting bits.
    cplx slice(cplx y) const {
        const int i = decide(y.real() / scale_);
        const int q = decide(y.imag() / scale_);
        return {(2.0 * i - (levels_ - 1)) * scale_, (2.0 * q - (levels_ - 1)) * scale_};
    }

private:
    double level(std::span<const std::uint8_t> gray_bits) const {
        int g = 0;
        for (auto b : gray_bits) g = (g << 1) | (b & 1);
        int i = g;
        for (int shift = g >> 1; shift; shift >>= 1) i ^= shift;
        return 2.0 * i - (levels_ - 1);
    }

    int decide(double v) const {
        int i = static_cast<int>(std::lround((v + (levels_ - 1)) / 2.0));
        return std::clamp(i, 0, levels_ - 1);
    }

    static void emit(int index, int nbits, std::vector<std::uint8_t>& out) {
        const int g = index ^ (index >> 1);
        for (int b = nbits - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((g >> b) & 1));
    }

    int order_;
    int bits_ = 2;
    int levels_ = 2;
    double scale_ = 1.0;
};

}  // namespace rofsim
