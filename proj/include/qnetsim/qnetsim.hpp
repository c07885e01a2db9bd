// Copyright 2026 The qnetsim Authors
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

#include "qnetsim/circuit.hpp"
#include "qnetsim/compile.hpp"
#include "qnetsim/config.hpp"
#include "qnetsim/csv.hpp"
#include "qnetsim/fermion.hpp"
#include "qnetsim/hubbard.hpp"
#include "qnetsim/linalg.hpp"
#include "qnetsim/measurement.hpp"
#include "qnetsim/oracle.hpp"
#include "qnetsim/pauli.hpp"
#include "qnetsim/pipeline.hpp"
#include "qnetsim/spectral.hpp"
#include "qnetsim/state_prep.hpp"
#include "qnetsim/state_vector.hpp"
