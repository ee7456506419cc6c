// Copyright 2026 The sepnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sepnoise/config.hpp"
#include "sepnoise/errors.hpp"
#include "sepnoise/expr.hpp"
#include "sepnoise/gate_compiler.hpp"
#include "sepnoise/json_io.hpp"
#include "sepnoise/lindblad.hpp"
#include "sepnoise/linalg.hpp"
#include "sepnoise/noise_presets.hpp"
#include "sepnoise/operator_basis.hpp"
#include "sepnoise/separated_noise.hpp"
#include "sepnoise/superoperators.hpp"
#include "sepnoise/validation.hpp"
