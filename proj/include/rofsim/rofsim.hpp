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

#include "rofsim/core/error.hpp"
#include "rofsim/core/fft.hpp"
#include "rofsim/core/random.hpp"
#include "rofsim/core/spectrum.hpp"
#include "rofsim/core/waveform.hpp"
#include "rofsim/core/yaml.hpp"

#include "rofsim/signal/metrics.hpp"
#include "rofsim/signal/ofdm.hpp"
#include "rofsim/signal/qam.hpp"
#include "rofsim/signal/rf.hpp"

#include "rofsim/photonics/bus.hpp"
#include "rofsim/photonics/comb.hpp"
#include "rofsim/photonics/filter.hpp"
#include "rofsim/photonics/modulator.hpp"
#include "rofsim/photonics/ring.hpp"

#include "rofsim/channel/amplifier.hpp"
#include "rofsim/channel/fiber.hpp"
#include "rofsim/channel/photodetector.hpp"

#include "rofsim/subsystems/olt.hpp"
#include "rofsim/subsystems/onu.hpp"
#include "rofsim/subsystems/payload.hpp"
#include "rofsim/subsystems/smart_edge.hpp"
#include "rofsim/subsystems/wdm_plan.hpp"

#include "rofsim/budget/fronthaul.hpp"
#include "rofsim/budget/latency.hpp"
#include "rofsim/budget/plan.hpp"
#include "rofsim/budget/power.hpp"
#include "rofsim/budget/report.hpp"
#include "rofsim/budget/topology.hpp"

#include "rofsim/scenario/config.hpp"
#include "rofsim/scenario/devices.hpp"
#include "rofsim/scenario/report.hpp"
#include "rofsim/scenario/run.hpp"
