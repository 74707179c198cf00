// Copyright 2026 The gradmarket Authors
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

#ifndef GRADMARKET_SELFTEST_H_
#define GRADMARKET_SELFTEST_H_

#include <ostream>

namespace gradmarket {

/// Quick invariant checks over every module; one PASS/FAIL line each.
/// Returns true when all pass.
bool RunSelfTest(std::ostream& out);

}  // namespace gradmarket

#endif  // GRADMARKET_SELFTEST_H_
