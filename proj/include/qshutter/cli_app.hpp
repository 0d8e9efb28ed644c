// Copyright 2026 The qshutter authors
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

#ifndef QSHUTTER_CLI_APP_HPP
#define QSHUTTER_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qshutter/scenario_config.hpp"

namespace qshutter {

// `args` excludes the program name.  Exit codes: 0 all claims pass,
// 1 claim failure, 2 configuration error, 3 post-selection impossible.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// "random" or semicolon-separated complex components "re" / "re,im".
std::vector<Complex> parse_alpha_list(const std::string& text,
                                      bool& is_random);

}  // namespace qshutter

#endif  // QSHUTTER_CLI_APP_HPP
