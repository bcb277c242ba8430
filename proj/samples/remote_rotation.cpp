// Copyright 2026 The qrc Authors
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

// Implements a z rotation held by Alice on Bob's qubit four ways and
// prints what each one costs.

#include <iostream>
#include <numbers>

#include "qrc/qrc.hpp"

int main() {
  using namespace qrc;
  const Unimodular u = rz(std::numbers::pi / 5);
  const StateVector psi = parse_state("amp:0.6,0,0,0.8");

  auto report = [](const char* name, const std::vector<ProtocolOutcome>& out) {
    const auto& l = out.front().ledger;
    std::cout << name << ": " << out.size() << " branches, success " << success_probability(out) << ", cost ("
              << l.ebits_consumed << " e-bits, " << l.cbits_a_to_b << " A->B, " << l.cbits_b_to_a << " B->A)\n";
  };
  report("bqst         ", run_bqst({u, psi}));
  report("universal 221", run_universal_221({u, psi}));
  report("restricted221", run_restricted_221({u, psi}));
  report("one11        ", run_111({u, psi, OperatorClass::Tag::CommutesWithAxis}));
}
