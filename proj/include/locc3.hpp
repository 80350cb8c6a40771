// Copyright 2026 The locc3 Authors
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

#include "locc3/canonical.hpp"
#include "locc3/cli.hpp"
#include "locc3/entangle.hpp"
#include "locc3/errors.hpp"
#include "locc3/ghz_protocols.hpp"
#include "locc3/measurement.hpp"
#include "locc3/plan.hpp"
#include "locc3/qcore.hpp"
#include "locc3/runner.hpp"
#include "locc3/serialize.hpp"
#include "locc3/tolerances.hpp"
#include "locc3/w_protocols.hpp"
