//
// Copyright 2026 The infolearn Authors
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
//

#ifndef INFOLEARN_INFOLEARN_HPP_
#define INFOLEARN_INFOLEARN_HPP_

// Core library without the report and CLI layers, which need nlohmann/json.

#include "infolearn/adversary.hpp"
#include "infolearn/analysis.hpp"
#include "infolearn/concepts.hpp"
#include "infolearn/error.hpp"
#include "infolearn/info_core.hpp"
#include "infolearn/learners.hpp"
#include "infolearn/parallel.hpp"
#include "infolearn/random.hpp"

#endif  // INFOLEARN_INFOLEARN_HPP_
