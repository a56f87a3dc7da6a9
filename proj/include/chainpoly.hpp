// Copyright 2026 The chainpoly Authors.
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

#include "chainpoly/chain_enum.hpp"
#include "chainpoly/coloring.hpp"
#include "chainpoly/errors.hpp"
#include "chainpoly/flow.hpp"
#include "chainpoly/graph.hpp"
#include "chainpoly/invariants.hpp"
#include "chainpoly/json_io.hpp"
#include "chainpoly/lattice.hpp"
#include "chainpoly/matroid.hpp"
#include "chainpoly/polynomial.hpp"
#include "chainpoly/subset.hpp"
#include "chainpoly/verify.hpp"
