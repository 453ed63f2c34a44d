// Copyright 2026 The qteleport Authors
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

#include "qteleport/correction_solver.hpp"
#include "qteleport/corrections.hpp"
#include "qteleport/errors.hpp"
#include "qteleport/format.hpp"
#include "qteleport/io.hpp"
#include "qteleport/noise_analytics.hpp"
#include "qteleport/parallel.hpp"
#include "qteleport/protocol.hpp"
#include "qteleport/random.hpp"
#include "qteleport/register.hpp"
#include "qteleport/session.hpp"
#include "qteleport/states_gates.hpp"
#include "qteleport/sweep.hpp"
#include "qteleport/tensor.hpp"
#include "qteleport/tolerances.hpp"
#include "qteleport/verify.hpp"
