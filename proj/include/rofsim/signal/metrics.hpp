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

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rofsim/core/waveform.hpp"

namespace rofsim {

/// Hard-decision threshold of the 7% overhead FEC.
inline constexpr double kDefaultFecThreshold = 3.8e-3;

struct BerReport {
    std::uint64_t bit_errors = 0;
    std::uint64_t total_bits = 0;
    double ber = 0.0;
    double evm_rms = 0.0;
    bool passes_fec = true;
    double fec_threshold = kDefaultFecThreshold;
};

inline BerReport make_ber_report(std::uint64_t errors, std::uint64_t total, double evm_rms,
                                 double fec_threshold = kDefaultFecThreshold) {
    BerReport r;
    r.bit_errors = errors;
    r.total_bits = total;
    r.ber = total ? static_cast<double>(errors) / static_cast<double>(total) : 0.0;
    r.evm_rms = evm_rms;
    r.fec_threshold = fec_threshold;
    r.passes_fec = r.ber < fec_threshold;
    return r;
}

/// Exact bit-error count between two hard-decision sequences.
inline BerReport ber_evm_metrics(std::span<const std::uint8_t> tx_bits,
                                 std::span<const std::uint8_t> rx_bits, double evm_rms = 0.0,
                                 double fec_threshold = kDefaultFecThreshold) {
    if (tx_bits.size() != rx_bits.size())
        throw LengthMismatchError("ber_evm_metrics: tx has " + std::to_string(tx_bits.size()) +
                                  " bits, rx has " + std::to_string(rx_bits.size()));
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < tx_bits.size(); ++i) errors += (tx_bits[i] ^ rx_bits[i]) & 1u;
    return make_ber_report(errors, tx_bits.size(), evm_rms, fec_threshold);
}

/// RMS EVM of received symbols against reference symbols, relative to reference RMS.
inline double evm_rms(std::span<const cplx> received, std::span<const cplx> reference) {
    if (received.size() != reference.size())
        throw LengthMismatchError("evm_rms: symbol sequences differ in length");
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < received.size(); ++i) {
        err += std::norm(received[i] - reference[i]);
        ref += std::norm(reference[i]);
    }
    return ref > 0.0 ? std::sqrt(err / ref) : 0.0;
}

/// Combines per-block results; EVM is pooled by symbol energy.
class BerAccumulator {
public:
    void add(std::uint64_t errors, std::uint64_t bits, double evm, std::uint64_t symbols) {
        errors_ += errors;
        bits_ += bits;
        evm_sq_ += evm * evm * static_cast<double>(symbols);
        symbols_ += symbols;
    }

    BerReport report(double fec_threshold = kDefaultFecThreshold) const {
        const double evm = symbols_ ? std::sqrt(evm_sq_ / static_cast<double>(symbols_)) : 0.0;
        return make_ber_report(errors_, bits_, evm, fec_threshold);
    }

    std::uint64_t bits() const noexcept { return bits_; }

private:
    std::uint64_t errors_ = 0;
    std::uint64_t bits_ = 0;
    double evm_sq_ = 0.0;
    std::uint64_t symbols_ = 0;
};

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Gray-coded square-QAM BER over AWGN (nearest-neighbour approximation; exact for QAM-4).
inline double analytic_awgn_ber(int qam_order, double ebn0_db) {
    if (qam_order != 4 && qam_order != 16 && qam_order != 64)
        throw InvalidArgument("analytic_awgn_ber: unsupported QAM order " +
                              std::to_string(qam_order));
    if (std::isinf(ebn0_db) && ebn0_db > 0) return 0.0;
    const double m = qam_order;
    const double k = std::log2(m);
    const double ebn0 = db_to_linear(ebn0_db);
    return (4.0 / k) * (1.0 - 1.0 / std::sqrt(m)) * q_function(std::sqrt(3.0 * k / (m - 1.0) * ebn0));
}

}  // namespace rofsim
