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

#include <optional>
#include <string>
#include <vector>

#include "rofsim/core/error.hpp"

namespace rofsim {

enum class FronthaulKind { cpri, ecpri, arof };

inline const char* to_string(FronthaulKind k) {
    switch (k) {
        case FronthaulKind::cpri: return "CPRI";
        case FronthaulKind::ecpri: return "eCPRI";
        case FronthaulKind::arof: return "ARoF";
    }
    return "?";
}

inline FronthaulKind parse_fronthaul_kind(const std::string& s) {
    if (s == "CPRI" || s == "cpri") return FronthaulKind::cpri;
    if (s == "eCPRI" || s == "ecpri") return FronthaulKind::ecpri;
    if (s == "ARoF" || s == "arof") return FronthaulKind::arof;
    throw ValidationError("unknown fronthaul kind '" + s + "'");
}

/// Digital (CPRI/eCPRI) sample streams or analog RoF. Kind-specific fields stay empty otherwise.
struct FronthaulSpec {
    std::string name;
    FronthaulKind kind = FronthaulKind::cpri;
    double rf_bandwidth = 20e6;
    std::optional<double> sample_rate;          // complex samples/s per stream
    std::optional<double> bit_width;            // bits per I or Q
    std::optional<double> n_antenna_streams;
    double control_overhead = 16.0 / 15.0;
    double line_coding = 10.0 / 8.0;
    std::optional<double> ecpri_split_factor;
    std::optional<double> guard;                // ARoF spectral guard fraction
};

struct FronthaulDimension {
    double line_rate = 0.0;          // bit/s, or Hz of optical bandwidth for ARoF
    double expansion_factor = 0.0;
};

inline FronthaulDimension fronthaul_dimension(const FronthaulSpec& s) {
    auto need = [&](const std::optional<double>& v, const char* field) {
        if (!v) throw ValidationError(std::string(to_string(s.kind)) + " fronthaul '" + s.name + "': missing " + field);
        return *v;
    };
    if (!(s.rf_bandwidth > 0.0)) throw ValidationError("fronthaul '" + s.name + "': rf_bandwidth must be positive");
    FronthaulDimension d;
    if (s.kind == FronthaulKind::arof) {
        const double g = need(s.guard, "guard");
        if (g < 0.0) throw ValidationError("ARoF fronthaul '" + s.name + "': guard must be >= 0");
        d.line_rate = s.rf_bandwidth * (1.0 + g);
    } else {
        if (s.control_overhead < 1.0 || s.line_coding < 1.0)
            throw ValidationError("fronthaul '" + s.name + "': overhead ratios must be >= 1");
        const double cpri = need(s.sample_rate, "sample_rate") * 2.0 * need(s.bit_width, "bit_width") *
                            need(s.n_antenna_streams, "n_antenna_streams") * s.control_overhead * s.line_coding;
        d.line_rate = s.kind == FronthaulKind::cpri ? cpri : cpri * need(s.ecpri_split_factor, "ecpri_split_factor");
    }
    d.expansion_factor = d.line_rate / s.rf_bandwidth;
    return d;
}

inline FronthaulSpec cpri_preset(std::string name, double rf_bandwidth, double sample_rate, double bit_width = 15.0,
                                 double streams = 1.0) {
    FronthaulSpec s;
    s.name = std::move(name);
    s.kind = FronthaulKind::cpri;
    s.rf_bandwidth = rf_bandwidth;
    s.sample_rate = sample_rate;
    s.bit_width = bit_width;
    s.n_antenna_streams = streams;
    return s;
}

inline FronthaulSpec arof_preset(std::string name, double rf_bandwidth, double guard) {
    FronthaulSpec s;
    s.name = std::move(name);
    s.kind = FronthaulKind::arof;
    s.rf_bandwidth = rf_bandwidth;
    s.guard = guard;
    return s;
}

/// LTE channel bandwidths with their standard sampling rates, and NR carriers at 30 kHz SCS.
inline std::vector<FronthaulSpec> cpri_catalog() {
    return {
        cpri_preset("LTE 1.4 MHz", 1.4e6, 1.92e6),    cpri_preset("LTE 3 MHz", 3e6, 3.84e6),
        cpri_preset("LTE 5 MHz", 5e6, 7.68e6),        cpri_preset("LTE 10 MHz", 10e6, 15.36e6),
        cpri_preset("LTE 15 MHz", 15e6, 23.04e6),     cpri_preset("LTE 20 MHz", 20e6, 30.72e6),
        cpri_preset("NR 20 MHz", 20e6, 30.72e6),      cpri_preset("NR 50 MHz", 50e6, 61.44e6),
        cpri_preset("NR 100 MHz", 100e6, 122.88e6),   cpri_preset("NR 200 MHz", 200e6, 245.76e6),
    };
}

inline std::vector<FronthaulSpec> arof_catalog() {
    return {
        arof_preset("ARoF 20 MHz", 20e6, 0.1),
        arof_preset("ARoF 100 MHz", 100e6, 0.1),
        arof_preset("ARoF 100 MHz wide guard", 100e6, 0.2),
        arof_preset("ARoF 400 MHz", 400e6, 0.05),
    };
}

}  // namespace rofsim
