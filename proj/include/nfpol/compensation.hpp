// Copyright 2026 The nfpol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Fibre birefringence and its compensation.
//
// A CompensatorSetting names the birefringence it cancels: the setting's
// model unitary B is fitted to the fibre transfer matrix M, and the
// compensator applies W = B^dagger. The fit quality is the infidelity
// 1 - |tr(W M)|^2 / 4, which ignores global phase.
//
// This idealizes the bench procedure: the fibre unitary is known here, while
// a real compensator is tuned against measured output states.

#include <cstdint>
#include <optional>
#include <string>

#include "nfpol/polarimetry.hpp"

namespace nfpol {

enum class CompensationMode {
    single_berek,  ///< one variable retarder: retardance and axis
    full,          ///< rotator, retarder, rotator: covers every unitary
};

std::string to_string(CompensationMode mode);
/// Accepts "single_berek" and "full". Throws std::invalid_argument otherwise.
CompensationMode compensation_mode_from_string(const std::string& name);

struct CompensatorSetting {
    double retardance_rad = 0.0;  ///< canonicalized to [0, pi]
    double axis_deg = 0.0;        ///< in [0, 180); 0 in full mode
    std::optional<double> pre_rotation_deg;   ///< full mode only
    std::optional<double> post_rotation_deg;  ///< full mode only
};

struct CompensationResult {
    CompensationMode mode = CompensationMode::single_berek;
    CompensatorSetting setting;
    double residual_infidelity = 0.0;
};

/// Haar-distributed 2x2 unitary; the same seed always gives the same matrix.
JonesMatrix random_fiber_unitary(std::uint64_t seed);

/// Birefringence described by a setting:
/// rotator(post) * retarder(delta, axis) * rotator(pre).
JonesMatrix setting_unitary(const CompensatorSetting& setting);

/// The compensator's own action, setting_unitary(setting)^dagger.
JonesMatrix compensator_unitary(const CompensatorSetting& setting);

/// 1 - |tr(W M)|^2 / 4 for unitary W and M, evaluated in a form that keeps
/// full relative precision near zero.
double infidelity(const JonesMatrix& w, const JonesMatrix& m);

/// Fits the compensator to the fibre unitary `m`.
///
/// single_berek: 64 x 64 grid over (retardance, axis), then Nelder-Mead.
/// A nonzero residual is the model floor and is reported, not an error.
/// full: closed-form rotator-retarder-rotator decomposition.
///
/// Throws std::invalid_argument when `m` is not unitary to 1e-9 and
/// NumericalError when the simplex refinement does not converge.
CompensationResult compensate(const JonesMatrix& m, CompensationMode mode);

}  // namespace nfpol
