// Copyright 2026 The ffm Authors
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

#include "ffm/baselines.hpp"
#include "ffm/charsums.hpp"
#include "ffm/errors.hpp"
#include "ffm/field.hpp"
#include "ffm/lfunction.hpp"
#include "ffm/moments.hpp"
#include "ffm/poly.hpp"
#include "ffm/primes.hpp"
#include "ffm/quadratic_character.hpp"
#include "ffm/quadrature.hpp"
#include "ffm/report.hpp"
#include "ffm/roots.hpp"
#include "ffm/suites.hpp"
#include "ffm/summation.hpp"
#include "ffm/sweep.hpp"
#include "ffm/verify.hpp"
