// Copyright 2026 The twotime Authors
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

// Umbrella header for the library (everything except the command-line front end).

#pragma once

#include "twotime/bipartite.hpp"
#include "twotime/core.hpp"
#include "twotime/errors.hpp"
#include "twotime/io.hpp"
#include "twotime/measurements.hpp"
#include "twotime/probability.hpp"
#include "twotime/rng.hpp"
#include "twotime/simulate.hpp"
#include "twotime/states.hpp"
#include "twotime/tomography.hpp"
#include "twotime/weak.hpp"
