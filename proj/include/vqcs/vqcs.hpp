// Copyright 2026 The vqcs Authors
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
/**
 * @file
 * Umbrella header.
 */
#pragma once

#include "circuit.hpp"
#include "coherent.hpp"
#include "common.hpp"
#include "experiments.hpp"
#include "fredholm.hpp"
#include "io.hpp"
#include "ising.hpp"
#include "minimize.hpp"
#include "observables.hpp"
#include "optimizer.hpp"
#include "oracle.hpp"
#include "projective.hpp"
#include "quadrature.hpp"
