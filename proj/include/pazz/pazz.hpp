// Copyright 2026 The Pazz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the whole library.
#ifndef PAZZ_PAZZ_HPP_
#define PAZZ_PAZZ_HPP_

#include "pazz/common/error.hpp"
#include "pazz/common/log.hpp"
#include "pazz/cpc/control_plane.hpp"
#include "pazz/cpc/reachability_graph.hpp"
#include "pazz/dataplane/dataplane.hpp"
#include "pazz/dataplane/flow_table.hpp"
#include "pazz/dataplane/hashing.hpp"
#include "pazz/dataplane/simulator.hpp"
#include "pazz/dataplane/trace_io.hpp"
#include "pazz/dataplane/verify_tag.hpp"
#include "pazz/fuzzer/fuzzer.hpp"
#include "pazz/harness/experiment.hpp"
#include "pazz/harness/report.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/faults.hpp"
#include "pazz/netmodel/flow_rule.hpp"
#include "pazz/netmodel/generators.hpp"
#include "pazz/netmodel/io.hpp"
#include "pazz/netmodel/topology.hpp"
#include "pazz/tester/consistency_tester.hpp"

#endif  // PAZZ_PAZZ_HPP_
