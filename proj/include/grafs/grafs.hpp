// Copyright 2026 The GRAFS Authors.
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

#include "grafs/cluster.hpp"
#include "grafs/corpus.hpp"
#include "grafs/error.hpp"
#include "grafs/facet.hpp"
#include "grafs/index.hpp"
#include "grafs/provenance.hpp"
#include "grafs/query.hpp"
#include "grafs/subgraph.hpp"
#include "grafs/text.hpp"
#include "grafs/wire.hpp"
