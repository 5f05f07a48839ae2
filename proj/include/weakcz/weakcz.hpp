// Copyright 2026 The weakcz Authors
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

#include "weakcz/errors.hpp"
#include "weakcz/fock_oracle.hpp"
#include "weakcz/imperfection_model.hpp"
#include "weakcz/io.hpp"
#include "weakcz/metrics.hpp"
#include "weakcz/optical_gate.hpp"
#include "weakcz/oracle_check.hpp"
#include "weakcz/process_matrix.hpp"
#include "weakcz/qmath.hpp"
#include "weakcz/spin_gate.hpp"
#include "weakcz/tomography.hpp"
