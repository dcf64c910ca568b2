// Copyright 2026 The LEDP Lab Authors
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

#ifndef LEDP_LEDP_HPP_
#define LEDP_LEDP_HPP_

#include "ledp/anticoncentration.hpp"
#include "ledp/attack.hpp"
#include "ledp/bits.hpp"
#include "ledp/csv.hpp"
#include "ledp/graph.hpp"
#include "ledp/local_model.hpp"
#include "ledp/parallel.hpp"
#include "ledp/privacy.hpp"
#include "ledp/rng.hpp"
#include "ledp/rr_estimator.hpp"
#include "ledp/stats.hpp"
#include "ledp/sum_gadget.hpp"

#endif  // LEDP_LEDP_HPP_
