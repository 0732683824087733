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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rofsim/core/waveform.hpp"

namespace rofsim {

inline constexpr double kDefaultBusStageLossDb = 0.1;

/// One device on a bus waveguide.
struct BusStage {
    std::string label;
    std::function<ComplexWaveform(const ComplexWaveform&)> apply;
    double passband_loss_db = kDefaultBusStageLossDb;
};

/// Left fold of the stages over the field, each followed by its passband loss.
inline ComplexWaveform cascade_bus(const ComplexWaveform& field, std::span<const BusStage> stages) {
    ComplexWaveform w = field;
    for (const auto& st : stages) {
        if (st.apply) w = st.apply(w);
        if (st.passband_loss_db != 0.0) w = scaled(std::move(w), db_to_amplitude(-st.passband_loss_db));
    }
    return w;
}

}  // namespace rofsim
