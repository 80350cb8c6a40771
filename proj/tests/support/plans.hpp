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

// One random plan per protocol family, for tests that sweep every family.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "locc3/ghz_protocols.hpp"
#include "locc3/w_protocols.hpp"
#include "support/generators.hpp"

namespace gen {

struct Family {
    std::string name;
    std::function<locc3::ProtocolPlan(Source&)> make;
};

inline std::vector<Family> families() {
    using locc3::Party;
    std::vector<Family> out;
    for (Party p : locc3::kParties)
        out.push_back({std::string("single-") + locc3::to_char(p), [p](Source& g) {
                           return locc3::single_party_plan({single_party(g, p), locc3::pattern_for(p)});
                       }});
    const std::array<std::array<Party, 2>, 3> orders{{{Party::A, Party::B}, {Party::A, Party::C}, {Party::B, Party::C}}};
    for (const auto& o : orders)
        out.push_back({std::string("two-") + locc3::to_char(o[0]) + locc3::to_char(o[1]), [o](Source& g) {
                           return locc3::two_party_plan(o[0], o[1], two_party(g, o[0], o[1]));
                       }});
    out.push_back({"w-chain", [](Source& g) {
                       const locc3::WCoefficients w = locc3::standard_w_coefficients();
                       return locc3::w_chain_plan(w, monotone_target(g, w));
                   }});
    return out;
}

} // namespace gen
