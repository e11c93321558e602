// Copyright 2026 The consmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include "consmap/error.hpp"
#include "consmap/exactnum/exact_scalar.hpp"
#include "consmap/exactnum/qpoly.hpp"
#include "consmap/numberfields/default_registry.hpp"
#include "consmap/numberfields/registry.hpp"
#include "consmap/places/places.hpp"
#include "consmap/functions/lc_function.hpp"
#include "consmap/consistent/consistent_map.hpp"
#include "consmap/dual/dual.hpp"
#include "consmap/heights/heights.hpp"
#include "consmap/verify/fixtures.hpp"
#include "consmap/verify/suites.hpp"
#include "consmap/io/serialize.hpp"
