// Copyright 2026 The sepvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sepvol/operators.hpp"
#include "sepvol/random.hpp"
#include "sepvol/parallel.hpp"
#include "sepvol/sampling.hpp"
#include "sepvol/bodies.hpp"
#include "sepvol/widths.hpp"
#include "sepvol/tensor_norms.hpp"
#include "sepvol/ellipsoids.hpp"
#include "sepvol/nets.hpp"
#include "sepvol/ppt.hpp"
#include "sepvol/experiments.hpp"
